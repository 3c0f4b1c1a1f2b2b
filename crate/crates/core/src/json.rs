//! JSON file schemas for maps, arrays, Leonard pairs, and parameter sets.
//!
//! Scalars travel as strings (`"5"`, `"-7/3"`) so exact values survive the
//! round trip, and the field is a tagged object: `{"kind": "rational"}` or
//! `{"kind": "gfp", "p": 7}`. Unknown keys are rejected so that a typo in
//! an input file fails loudly instead of being ignored.

use serde::{Deserialize, Serialize};

use crate::cba::CbaArray;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::leonard::QRacahParams;
use crate::linalg::{Matrix, Vector};
use crate::simplex::Location;

/// The field a file's scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpecJson {
    Rational,
    Gfp { p: u64 },
}

impl FieldSpecJson {
    pub fn to_field(self) -> Result<FieldSpec, Error> {
        match self {
            FieldSpecJson::Rational => Ok(FieldSpec::rational()),
            FieldSpecJson::Gfp { p } => FieldSpec::prime_field(p),
        }
    }

    pub fn from_field(field: FieldSpec) -> Self {
        match field.modulus() {
            None => FieldSpecJson::Rational,
            Some(p) => FieldSpecJson::Gfp { p },
        }
    }
}

/// A square map with its ordered eigenvalue sequence.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub field: FieldSpecJson,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub theta: Vec<String>,
}

impl MapFile {
    /// The parsed map and eigenvalue sequence; whether the sequence really
    /// is the spectrum is certified later, not here.
    pub fn to_parts(&self) -> Result<(Matrix, Vec<Scalar>), Error> {
        let field = self.field.to_field()?;
        let a = parse_matrix(&self.a, field)?;
        let theta = parse_scalars(&self.theta, field)?;
        Ok((a, theta))
    }
}

/// One location of a stored array with its vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayEntry {
    pub loc: [usize; 3],
    pub vec: Vec<String>,
}

/// A full stored array: the grid diameter, the eigenvalue sequence it was
/// built against, and one entry per location.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayFile {
    pub d: usize,
    pub field: FieldSpecJson,
    pub theta: Vec<String>,
    pub array: Vec<ArrayEntry>,
}

impl ArrayFile {
    pub fn to_array(&self) -> Result<CbaArray, Error> {
        let field = self.field.to_field()?;
        let theta = parse_scalars(&self.theta, field)?;
        if theta.len() != self.d + 1 {
            return Err(Error::Schema(format!(
                "d is {} but {} eigenvalues were given",
                self.d,
                theta.len()
            )));
        }
        let entries = self
            .array
            .iter()
            .map(|entry| {
                let location = Location::new(entry.loc[0], entry.loc[1], entry.loc[2]);
                let vector = parse_vector(&entry.vec, field)?;
                Ok((location, vector))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        CbaArray::from_entries(theta, entries)
    }

    pub fn from_array(array: &CbaArray) -> ArrayFile {
        ArrayFile {
            d: array.d(),
            field: FieldSpecJson::from_field(array.field()),
            theta: scalar_strings(array.theta()),
            array: array
                .iter()
                .map(|(loc, vector)| ArrayEntry {
                    loc: [loc.r, loc.s, loc.t],
                    vec: vector_strings(vector),
                })
                .collect(),
        }
    }
}

/// A pair of maps with their ordered eigenvalue sequences.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeonardFile {
    pub field: FieldSpecJson,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub theta: Vec<String>,
    #[serde(rename = "Astar")]
    pub a_star: Vec<Vec<String>>,
    pub theta_star: Vec<String>,
}

impl LeonardFile {
    pub fn to_parts(&self) -> Result<(Matrix, Vec<Scalar>, Matrix, Vec<Scalar>), Error> {
        let field = self.field.to_field()?;
        let a = parse_matrix(&self.a, field)?;
        let theta = parse_scalars(&self.theta, field)?;
        let a_star = parse_matrix(&self.a_star, field)?;
        let theta_star = parse_scalars(&self.theta_star, field)?;
        Ok((a, theta, a_star, theta_star))
    }
}

/// The four scalars and diameter of the eigenvalue family
/// `theta_i = a + b q^i + c q^{-i}`. The field is chosen by the consumer,
/// not stored in the file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QRacahFile {
    pub q: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: usize,
}

impl QRacahFile {
    pub fn to_params(&self, field: FieldSpec) -> Result<QRacahParams, Error> {
        QRacahParams::new(
            Scalar::parse(&self.q, field)?,
            Scalar::parse(&self.a, field)?,
            Scalar::parse(&self.b, field)?,
            Scalar::parse(&self.c, field)?,
            self.d,
        )
    }
}

pub fn parse_scalars(texts: &[String], field: FieldSpec) -> Result<Vec<Scalar>, Error> {
    texts.iter().map(|t| Scalar::parse(t, field)).collect()
}

pub fn parse_vector(texts: &[String], field: FieldSpec) -> Result<Vector, Error> {
    Vector::new(parse_scalars(texts, field)?)
}

pub fn parse_matrix(rows: &[Vec<String>], field: FieldSpec) -> Result<Matrix, Error> {
    let parsed = rows
        .iter()
        .map(|row| parse_scalars(row, field))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed)
}

pub fn scalar_strings(scalars: &[Scalar]) -> Vec<String> {
    scalars.iter().map(Scalar::to_string).collect()
}

pub fn vector_strings(v: &Vector) -> Vec<String> {
    scalar_strings(v.entries())
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vector_strings(&m.row(i))).collect()
}
