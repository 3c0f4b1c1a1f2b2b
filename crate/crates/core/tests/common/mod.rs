//! Shared generators for the acceptance suite: seeded random
//! multiplicity-free maps produced by conjugating integer diagonal
//! matrices, and random parameter scalars.

use billiard::{EigStructure, FieldSpec, Matrix, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A field for every parity: the rationals and a large prime field, so
/// random cases exercise both scalar representations.
pub fn field_for(index: usize) -> FieldSpec {
    if index.is_multiple_of(2) {
        FieldSpec::rational()
    } else {
        FieldSpec::prime_field(10007).expect("10007 is prime")
    }
}

/// The shared input sequence for the randomized-array tests: `count`
/// multiplicity-free rational maps with diameters drawn from `1..=8`.
/// The fixed seed means every caller sees the identical sequence, so
/// separate tests can exercise different properties of the same maps.
pub fn standard_cases(count: usize) -> Vec<(usize, EigStructure)> {
    let mut generator = rng(101);
    (0..count)
        .map(|_| {
            let d = generator.gen_range(1..=8usize);
            let eig = random_multiplicity_free(&mut generator, d, FieldSpec::rational());
            (d, eig)
        })
        .collect()
}

/// `count` pairwise distinct integers from `lo..=hi`. The range stays
/// narrow enough that the values remain distinct modulo 10007 as well.
pub fn distinct_integers(rng: &mut StdRng, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    assert!((hi - lo + 1) as usize >= count);
    let mut values: Vec<i64> = Vec::with_capacity(count);
    while values.len() < count {
        let candidate = rng.gen_range(lo..=hi);
        if !values.contains(&candidate) {
            values.push(candidate);
        }
    }
    values
}

/// A random matrix with small integer entries, resampled until invertible.
pub fn random_invertible(rng: &mut StdRng, n: usize, field: FieldSpec) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let candidate = Matrix::from_integers(&rows, field).expect("rectangular rows");
        if candidate.inverse().is_ok() {
            return candidate;
        }
    }
}

/// A certified multiplicity-free map of diameter `d`: a random distinct
/// integer spectrum conjugated by a random invertible integer matrix.
pub fn random_multiplicity_free(rng: &mut StdRng, d: usize, field: FieldSpec) -> EigStructure {
    let n = d + 1;
    let spectrum = distinct_integers(rng, n, -20, 20);
    let theta: Vec<Scalar> = spectrum
        .iter()
        .map(|&v| Scalar::from_integer(v, field))
        .collect();
    let mut diagonal = vec![vec![0i64; n]; n];
    for (i, &value) in spectrum.iter().enumerate() {
        diagonal[i][i] = value;
    }
    let diagonal = Matrix::from_integers(&diagonal, field).expect("rectangular rows");
    let p = random_invertible(rng, n, field);
    let p_inv = p.inverse().expect("resampled until invertible");
    let conjugated = p
        .mul(&diagonal)
        .expect("same field")
        .mul(&p_inv)
        .expect("same field");
    EigStructure::new(conjugated, theta)
        .expect("a conjugated distinct diagonal is multiplicity-free")
}

/// A random nonzero rational with small numerator and denominator.
pub fn random_nonzero_rational(rng: &mut StdRng) -> Scalar {
    let field = FieldSpec::rational();
    loop {
        let numerator = rng.gen_range(-9i64..=9);
        if numerator == 0 {
            continue;
        }
        let denominator = rng.gen_range(1i64..=9);
        let text = format!("{numerator}/{denominator}");
        return Scalar::parse(&text, field).expect("well-formed fraction");
    }
}
