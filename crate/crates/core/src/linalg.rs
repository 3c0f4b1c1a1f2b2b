//! Dense exact vectors and matrices, rank by Gaussian elimination, repeated
//! application of linear factors, and the spectral projectors of a
//! multiplicity-free map.
//!
//! Everything here works over a single [`FieldSpec`] carried by each value;
//! shapes and fields are validated at the public boundaries so the inner
//! loops can run without rechecking.

use std::fmt;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};

/// A column vector with entries in one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    entries: Vec<Scalar>,
    field: FieldSpec,
}

impl Vector {
    /// Wraps a nonempty list of entries drawn from one field.
    pub fn new(entries: Vec<Scalar>) -> Result<Self, Error> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Shape("empty vector".to_string()))?;
        let field = first.field();
        for entry in &entries {
            if entry.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: entry.field().to_string(),
                });
            }
        }
        Ok(Vector { entries, field })
    }

    /// The zero vector of length `n`.
    pub fn zeros(field: FieldSpec, n: usize) -> Self {
        Vector {
            entries: vec![Scalar::zero(field); n],
            field,
        }
    }

    /// Convenience constructor from integers.
    pub fn from_integers(entries: &[i64], field: FieldSpec) -> Self {
        Vector {
            entries: entries
                .iter()
                .map(|&n| Scalar::from_integer(n, field))
                .collect(),
            field,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entry(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Vector) -> Result<Vector, Error> {
        self.check_compatible(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.raw_add(b))
            .collect();
        Ok(Vector {
            entries,
            field: self.field,
        })
    }

    pub fn sub(&self, rhs: &Vector) -> Result<Vector, Error> {
        self.check_compatible(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.raw_sub(b))
            .collect();
        Ok(Vector {
            entries,
            field: self.field,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Vector, Error> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: c.field().to_string(),
            });
        }
        Ok(Vector {
            entries: self.entries.iter().map(|e| e.raw_mul(c)).collect(),
            field: self.field,
        })
    }

    fn check_compatible(&self, rhs: &Vector) -> Result<(), Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        if self.len() != rhs.len() {
            return Err(Error::Shape(format!(
                "vector lengths {} and {} differ",
                self.len(),
                rhs.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{entry}")?;
        }
        write!(f, ")")
    }
}

/// A dense matrix stored row-major, with entries in one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    field: FieldSpec,
}

impl Matrix {
    /// Wraps a nonempty rectangular grid of entries drawn from one field.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let height = rows.len();
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if height == 0 || width == 0 {
            return Err(Error::Shape("empty matrix".to_string()));
        }
        let mut entries = Vec::with_capacity(height * width);
        let field = rows[0][0].field();
        for row in rows {
            if row.len() != width {
                return Err(Error::Shape(format!(
                    "ragged rows: expected width {width}, found {}",
                    row.len()
                )));
            }
            for entry in row {
                if entry.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: entry.field().to_string(),
                    });
                }
                entries.push(entry);
            }
        }
        Ok(Matrix {
            rows: height,
            cols: width,
            entries,
            field,
        })
    }

    /// Stacks vectors as the rows of a matrix.
    pub fn from_row_vectors(rows: &[Vector]) -> Result<Self, Error> {
        Matrix::from_rows(rows.iter().map(|v| v.entries().to_vec()).collect())
    }

    /// Convenience constructor from integers.
    pub fn from_integers(rows: &[Vec<i64>], field: FieldSpec) -> Result<Self, Error> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&n| Scalar::from_integer(n, field))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
            field,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector {
            entries: self.entries[i * self.cols..(i + 1) * self.cols].to_vec(),
            field: self.field,
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector {
            entries: (0..self.rows).map(|i| self.entry(i, j).clone()).collect(),
            field: self.field,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.raw_add(b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.raw_sub(b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix, Error> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: c.field().to_string(),
            });
        }
        Ok(Matrix {
            entries: self.entries.iter().map(|e| e.raw_mul(c)).collect(),
            ..self.clone_shape()
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = acc.raw_add(&self.entry(i, k).raw_mul(rhs.entry(k, j)));
                }
                out.entries[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &Vector) -> Result<Vector, Error> {
        if self.field != v.field() {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: v.field().to_string(),
            });
        }
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = acc.raw_add(&self.entry(i, k).raw_mul(v.entry(k)));
                }
                acc
            })
            .collect();
        Ok(Vector {
            entries,
            field: self.field,
        })
    }

    /// The rank, computed by exact Gaussian elimination. At each step the
    /// pivot is the first row with a nonzero entry in the current column,
    /// so the computation is deterministic.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(found) = (pivot_row..self.rows).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(pivot_row, found);
            let pivot_tail: Vec<Scalar> = work[pivot_row][col..].to_vec();
            for row in work.iter_mut().skip(pivot_row + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].raw_div(&pivot_tail[0]);
                for (entry, pivot_entry) in row[col..].iter_mut().zip(&pivot_tail) {
                    *entry = entry.raw_sub(&factor.raw_mul(pivot_entry));
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivot_row
    }

    /// The exact inverse, by Gauss-Jordan elimination on `[self | I]`.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut work: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.entries[i * n..(i + 1) * n].to_vec();
                for j in 0..n {
                    row.push(if i == j {
                        Scalar::one(self.field)
                    } else {
                        Scalar::zero(self.field)
                    });
                }
                row
            })
            .collect();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !work[r][col].is_zero()) else {
                return Err(Error::Singular);
            };
            work.swap(col, found);
            let pivot = work[col][col].clone();
            for entry in work[col].iter_mut() {
                *entry = entry.raw_div(&pivot);
            }
            let pivot_row: Vec<Scalar> = work[col].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row) {
                    *entry = entry.raw_sub(&factor.raw_mul(pivot_entry));
                }
            }
        }
        Matrix::from_rows(work.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<(), Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn clone_shape(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
            field: self.field,
        }
    }
}

/// Applies the product `(m - roots[0]) (m - roots[1]) ... (m - roots[k-1])`
/// to `v`, evaluating the rightmost factor first. The factors commute, so
/// any evaluation order gives the same vector; this one is fixed for
/// determinism.
pub fn poly_apply(m: &Matrix, roots: &[Scalar], v: &Vector) -> Result<Vector, Error> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "expected a square matrix, found {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut w = v.clone();
    for root in roots.iter().rev() {
        if root.field() != m.field() {
            return Err(Error::FieldMismatch {
                left: m.field().to_string(),
                right: root.field().to_string(),
            });
        }
        w = m.mul_vector(&w)?.sub(&w.scale(root)?)?;
    }
    // With no roots at all, still validate that m and v are compatible.
    if roots.is_empty() && m.cols() != v.len() {
        return Err(Error::Shape(format!(
            "cannot apply {}x{} to a vector of length {}",
            m.rows(),
            m.cols(),
            v.len()
        )));
    }
    Ok(w)
}

/// Whether `x` lies in the span of `span`, decided by comparing ranks.
pub fn in_span(span: &[Vector], x: &Vector) -> Result<bool, Error> {
    if span.is_empty() {
        return Ok(x.is_zero());
    }
    let base = Matrix::from_row_vectors(span)?;
    let mut extended = span.to_vec();
    extended.push(x.clone());
    let augmented = Matrix::from_row_vectors(&extended)?;
    Ok(base.rank() == augmented.rank())
}

/// A square matrix certified multiplicity-free, together with its ordered
/// eigenvalues and the matching spectral projectors.
///
/// The projectors are built by the Lagrange product formula
/// `E_i = prod_{j != i} (m - theta_j I) / (theta_i - theta_j)` and then
/// checked against every defining identity: they sum to the identity, they
/// are pairwise orthogonal idempotents of rank one, and each one commutes
/// with `m` and scales to it on its eigenspace. Passing all of those checks
/// certifies after the fact that `m` really is multiplicity-free with the
/// given spectrum, so construction doubles as verification.
#[derive(Clone, Debug)]
pub struct EigStructure {
    matrix: Matrix,
    eigenvalues: Vec<Scalar>,
    idempotents: Vec<Matrix>,
}

impl EigStructure {
    /// Builds and certifies the projectors of `matrix` for the ordered
    /// spectrum `eigenvalues`.
    pub fn new(matrix: Matrix, eigenvalues: Vec<Scalar>) -> Result<Self, Error> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "expected a square matrix, found {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        if eigenvalues.len() != n {
            return Err(Error::Shape(format!(
                "a {n}x{n} matrix needs {n} eigenvalues, found {}",
                eigenvalues.len()
            )));
        }
        let field = matrix.field();
        for value in &eigenvalues {
            if value.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: value.field().to_string(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if eigenvalues[i] == eigenvalues[j] {
                    return Err(Error::RepeatedEigenvalue {
                        first: i,
                        second: j,
                        value: eigenvalues[i].to_string(),
                    });
                }
            }
        }

        let idempotents: Vec<Matrix> = (0..n)
            .map(|i| lagrange_projector(&matrix, &eigenvalues, i))
            .collect::<Result<_, _>>()?;

        // Certify the construction; any failure means the matrix is not
        // multiplicity-free with this spectrum.
        for (i, e) in idempotents.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::NotMultiplicityFree(format!("projector {i} is zero")));
            }
        }
        let mut sum = Matrix::zeros(field, n, n);
        for e in &idempotents {
            sum = sum.add(e)?;
        }
        if sum != Matrix::identity(field, n) {
            return Err(Error::NotMultiplicityFree(
                "projector sum differs from the identity".to_string(),
            ));
        }
        for (i, e) in idempotents.iter().enumerate() {
            let r = e.rank();
            if r != 1 {
                return Err(Error::NotMultiplicityFree(format!(
                    "projector {i} has rank {r}, expected 1"
                )));
            }
        }
        for (i, ei) in idempotents.iter().enumerate() {
            for (j, ej) in idempotents.iter().enumerate() {
                let product = ei.mul(ej)?;
                let expected = if i == j {
                    ei.clone()
                } else {
                    Matrix::zeros(field, n, n)
                };
                if product != expected {
                    return Err(Error::NotMultiplicityFree(format!(
                        "projector product ({i}, {j}) violates orthogonality"
                    )));
                }
            }
        }
        for (i, e) in idempotents.iter().enumerate() {
            let scaled = e.scale(&eigenvalues[i])?;
            if matrix.mul(e)? != scaled || e.mul(&matrix)? != scaled {
                return Err(Error::NotMultiplicityFree(format!(
                    "projector {i} does not commute with the map onto its eigenspace"
                )));
            }
        }

        Ok(EigStructure {
            matrix,
            eigenvalues,
            idempotents,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> &Scalar {
        &self.eigenvalues[i]
    }

    pub fn idempotents(&self) -> &[Matrix] {
        &self.idempotents
    }

    pub fn idempotent(&self, i: usize) -> &Matrix {
        &self.idempotents[i]
    }

    /// The diameter: one less than the dimension.
    pub fn d(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    /// The same map with the eigenvalue ordering reversed. Rebuilt from
    /// scratch so the result carries the same certification.
    pub fn reversed(&self) -> EigStructure {
        let reversed: Vec<Scalar> = self.eigenvalues.iter().rev().cloned().collect();
        EigStructure::new(self.matrix.clone(), reversed)
            .expect("reversing a certified spectrum preserves every invariant")
    }
}

fn lagrange_projector(m: &Matrix, eigenvalues: &[Scalar], i: usize) -> Result<Matrix, Error> {
    let field = m.field();
    let n = m.rows();
    let mut numerator = Matrix::identity(field, n);
    let mut denominator = Scalar::one(field);
    for (j, value) in eigenvalues.iter().enumerate() {
        if j == i {
            continue;
        }
        let shifted = m.sub(&Matrix::identity(field, n).scale(value)?)?;
        numerator = numerator.mul(&shifted)?;
        denominator = denominator.mul(&eigenvalues[i].sub(value)?)?;
    }
    numerator.scale(&denominator.inv()?)
}
