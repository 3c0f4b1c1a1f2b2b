//! Leonard systems, their split decompositions, and the correspondence
//! between split subspaces and the borders of a billiard array.
//!
//! A Leonard system here is a pair of multiplicity-free maps `A`, `A*` on
//! the same space, each with an ordered eigenvalue sequence, such that each
//! map is tridiagonal with irreducible off-diagonals with respect to the
//! other's eigenspace decomposition: writing `E_i` for the projectors of
//! `A` and `E*_i` for those of `A*`,
//!
//! ```text
//! E_i A* E_j = 0 exactly when |i - j| > 1,    and likewise with the
//! E*_i A E*_j = 0 exactly when |i - j| > 1,   roles of A and A* swapped.
//! ```
//!
//! Both conditions are verified directly from the projectors; nothing is
//! taken on trust. A verified system carries a split decomposition: the
//! one-dimensional subspaces `U_i` spanned by
//! `(A - theta_{d-i+1} I) ... (A - theta_d I) v` for a nonzero
//! `v` in `E*_0 V`, which refine both eigenspace filtrations at once.
//! The borders of the billiard array built from `(A, v)` land in these
//! subspaces: the left border in `U_i`, the right border in the split
//! subspaces of the system with the eigenvalue order of `A` reversed, and
//! the bottom border in the eigenspaces themselves.

use crate::cba::{bottom_border_check, projector_column, suffix_roots, PolyCba};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{in_span, poly_apply, EigStructure, Matrix, Vector};
use crate::report::Report;
use crate::simplex::Location;

/// A verified Leonard system: two certified multiplicity-free maps whose
/// projector band conditions have been checked in both directions.
#[derive(Clone, Debug)]
pub struct LeonardSystem {
    eig: EigStructure,
    eig_star: EigStructure,
}

impl LeonardSystem {
    pub fn eig(&self) -> &EigStructure {
        &self.eig
    }

    pub fn eig_star(&self) -> &EigStructure {
        &self.eig_star
    }

    pub fn a(&self) -> &Matrix {
        self.eig.matrix()
    }

    pub fn a_star(&self) -> &Matrix {
        self.eig_star.matrix()
    }

    pub fn theta(&self) -> &[Scalar] {
        self.eig.eigenvalues()
    }

    pub fn theta_star(&self) -> &[Scalar] {
        self.eig_star.eigenvalues()
    }

    pub fn d(&self) -> usize {
        self.eig.d()
    }

    pub fn field(&self) -> FieldSpec {
        self.eig.field()
    }

    /// The same pair with the eigenvalue order of the first map reversed.
    /// Reversing an ordering preserves every defining condition, so the
    /// result is re-verified rather than assumed.
    pub fn downarrow(&self) -> LeonardSystem {
        let reversed: Vec<Scalar> = self.theta().iter().rev().cloned().collect();
        verify_leonard_system(
            self.a().clone(),
            reversed,
            self.a_star().clone(),
            self.theta_star().to_vec(),
        )
        .expect("reversing the eigenvalue order preserves the defining conditions")
    }
}

/// Checks one band condition: sandwiching `inner` between the `i`-th and
/// `j`-th projectors of `outer` must vanish exactly when `|i - j| > 1`.
/// The `starred` flag only tags which direction a failure belongs to.
fn band_condition(outer: &EigStructure, inner: &Matrix, starred: bool) -> Result<(), Error> {
    let d = outer.d();
    for i in 0..=d {
        for j in 0..=d {
            let gap = i.abs_diff(j);
            if gap == 0 {
                // The diagonal blocks are unconstrained.
                continue;
            }
            let product = outer.idempotent(i).mul(inner)?.mul(outer.idempotent(j))?;
            let expected_zero = gap > 1;
            if product.is_zero() != expected_zero {
                return Err(Error::NotLeonard {
                    starred,
                    row: i,
                    col: j,
                    expected_zero,
                });
            }
        }
    }
    Ok(())
}

/// Certifies a Leonard system from raw parts: both maps are certified
/// multiplicity-free against their ordered eigenvalue sequences, then the
/// band conditions are checked, the plain direction (`E_i A* E_j`) first.
pub fn verify_leonard_system(
    a: Matrix,
    theta: Vec<Scalar>,
    a_star: Matrix,
    theta_star: Vec<Scalar>,
) -> Result<LeonardSystem, Error> {
    if a.rows() != a_star.rows() || a.cols() != a_star.cols() {
        return Err(Error::Shape(format!(
            "the two maps act on different spaces: {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            a_star.rows(),
            a_star.cols()
        )));
    }
    if a.field() != a_star.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: a_star.field().to_string(),
        });
    }
    let eig = EigStructure::new(a, theta)?;
    let eig_star = EigStructure::new(a_star, theta_star)?;
    verify_leonard_pair(eig, eig_star)
}

/// Certifies a Leonard system from two maps that are already certified
/// individually, checking compatibility and then both band conditions.
pub fn verify_leonard_pair(
    eig: EigStructure,
    eig_star: EigStructure,
) -> Result<LeonardSystem, Error> {
    if eig.d() != eig_star.d() {
        return Err(Error::Shape(format!(
            "the two maps act on different spaces: dimensions {} and {}",
            eig.d() + 1,
            eig_star.d() + 1
        )));
    }
    if eig.field() != eig_star.field() {
        return Err(Error::FieldMismatch {
            left: eig.field().to_string(),
            right: eig_star.field().to_string(),
        });
    }
    band_condition(&eig, eig_star.matrix(), false)?;
    band_condition(&eig_star, eig.matrix(), true)?;
    Ok(LeonardSystem { eig, eig_star })
}

/// The split decomposition of a verified system: spanning vectors for the
/// one-dimensional subspaces `U_0, ..., U_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    spanners: Vec<Vector>,
}

impl SplitDecomposition {
    pub fn d(&self) -> usize {
        self.spanners.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.spanners[0].field()
    }

    pub fn spanner(&self, i: usize) -> &Vector {
        &self.spanners[i]
    }

    pub fn spanners(&self) -> &[Vector] {
        &self.spanners
    }
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn rank_of(vectors: &[Vector]) -> usize {
    Matrix::from_row_vectors(vectors)
        .expect("vectors of a verified system share field and dimension")
        .rank()
}

/// Computes the split decomposition of a verified system and checks every
/// property it is supposed to have, one report entry per property:
///
/// * `split-spanner`: each spanning vector is nonzero;
/// * `split-direct-sum`: together they span the whole space;
/// * `split-membership`: the `i`-th spanner lies in `E*_0 V + ... + E*_i V`
///   and in `E_0 V + ... + E_{d-i} V`;
/// * `split-partial-sum-lower`: `U_0 + ... + U_i` equals the first of
///   those filtrations;
/// * `split-partial-sum-upper`: `U_i + ... + U_d` equals the second;
/// * `split-end`: `U_0 = E*_0 V` and `U_d = E_0 V`.
pub fn split_with_report(ls: &LeonardSystem) -> (SplitDecomposition, Report) {
    let d = ls.d();
    let theta = ls.theta();
    let seed = projector_column(ls.eig_star().idempotent(0));
    let shared = "vectors of a verified system share field and dimension";
    let spanners: Vec<Vector> = (0..=d)
        .map(|i| poly_apply(ls.a(), &suffix_roots(theta, i), &seed).expect(shared))
        .collect();
    let e_cols: Vec<Vector> = ls
        .eig()
        .idempotents()
        .iter()
        .map(projector_column)
        .collect();
    let estar_cols: Vec<Vector> = ls
        .eig_star()
        .idempotents()
        .iter()
        .map(projector_column)
        .collect();

    let mut report = Report::new();
    for (i, u) in spanners.iter().enumerate() {
        report.push(
            "split-spanner",
            format!("i={i}"),
            !u.is_zero(),
            if u.is_zero() {
                "spanning vector is zero"
            } else {
                "spanning vector is nonzero"
            }
            .to_string(),
        );
    }

    let full_rank = rank_of(&spanners);
    report.push(
        "split-direct-sum",
        "V".to_string(),
        full_rank == d + 1,
        format!("rank {full_rank}, expected {}", d + 1),
    );

    for (i, u) in spanners.iter().enumerate() {
        let in_lower = in_span(&estar_cols[..=i], u).expect(shared);
        let in_upper = in_span(&e_cols[..=d - i], u).expect(shared);
        report.push(
            "split-membership",
            format!("i={i}"),
            in_lower && in_upper,
            format!(
                "within E*_0 + ... + E*_{i}: {}; within E_0 + ... + E_{}: {}",
                yes_no(in_lower),
                d - i,
                yes_no(in_upper)
            ),
        );
    }

    for i in 0..=d {
        let ours = rank_of(&spanners[..=i]);
        let theirs = rank_of(&estar_cols[..=i]);
        let union: Vec<Vector> = spanners[..=i]
            .iter()
            .chain(estar_cols[..=i].iter())
            .cloned()
            .collect();
        let joint = rank_of(&union);
        let expected = i + 1;
        report.push(
            "split-partial-sum-lower",
            format!("i={i}"),
            ours == expected && theirs == expected && joint == expected,
            format!(
                "ranks: pieces {ours}, eigenspaces {theirs}, union {joint}; expected {expected}"
            ),
        );
    }

    for i in 0..=d {
        let ours = rank_of(&spanners[i..]);
        let theirs = rank_of(&e_cols[..=d - i]);
        let union: Vec<Vector> = spanners[i..]
            .iter()
            .chain(e_cols[..=d - i].iter())
            .cloned()
            .collect();
        let joint = rank_of(&union);
        let expected = d - i + 1;
        report.push(
            "split-partial-sum-upper",
            format!("i={i}"),
            ours == expected && theirs == expected && joint == expected,
            format!(
                "ranks: pieces {ours}, eigenspaces {theirs}, union {joint}; expected {expected}"
            ),
        );
    }

    let start = in_span(std::slice::from_ref(&estar_cols[0]), &spanners[0]).expect(shared)
        && in_span(std::slice::from_ref(&spanners[0]), &estar_cols[0]).expect(shared);
    report.push(
        "split-end",
        "U_0".to_string(),
        start,
        format!("equals E*_0 V: {}", yes_no(start)),
    );
    let end = in_span(std::slice::from_ref(&e_cols[0]), &spanners[d]).expect(shared)
        && in_span(std::slice::from_ref(&spanners[d]), &e_cols[0]).expect(shared);
    report.push(
        "split-end",
        "U_d".to_string(),
        end,
        format!("equals E_0 V: {}", yes_no(end)),
    );

    (SplitDecomposition { spanners }, report)
}

/// The split decomposition alone; any failed property becomes an error.
pub fn split_decomposition(ls: &LeonardSystem) -> Result<SplitDecomposition, Error> {
    let (split, report) = split_with_report(ls);
    for (index, u) in split.spanners().iter().enumerate() {
        if u.is_zero() {
            return Err(Error::SpannerZero { index });
        }
    }
    if let Some(first) = report.failures().next() {
        return Err(Error::SplitViolation(format!(
            "{} at {}: {}",
            first.check, first.subject, first.detail
        )));
    }
    Ok(split)
}

/// The split property report alone.
pub fn split_report(ls: &LeonardSystem) -> Report {
    split_with_report(ls).1
}

/// Builds the billiard array of a verified system from a seed spanning
/// `E*_0 V` and checks where its three borders land, one entry per border
/// location:
///
/// * `left-border`: the vector at `(i, d-i, 0)` lies in `U_i`;
/// * `right-border`: the vector at `(0, d-i, i)` lies in the `i`-th split
///   subspace of the system with the eigenvalue order of `A` reversed;
/// * `bottom-border`: the vector at `(d-i, 0, i)` is an eigenvector of `A`
///   for the `i`-th eigenvalue.
pub fn border_correspondence(ls: &LeonardSystem) -> Report {
    let mut report = Report::new();
    let seed = projector_column(ls.eig_star().idempotent(0));
    let cba = match PolyCba::build(ls.eig().clone(), seed) {
        Ok(cba) => cba,
        Err(e) => {
            report.push(
                "seed",
                "E*_0 column".to_string(),
                false,
                format!("array construction failed: {e}"),
            );
            return report;
        }
    };
    let d = ls.d();
    let shared = "vectors of a verified system share field and dimension";
    let (split, _) = split_with_report(ls);
    let down = ls.downarrow();
    let (down_split, _) = split_with_report(&down);
    for i in 0..=d {
        let loc = Location::new(i, d - i, 0);
        let vector = cba.array().vector(loc).expect("border location");
        let pass = !vector.is_zero()
            && in_span(std::slice::from_ref(split.spanner(i)), vector).expect(shared);
        report.push(
            "left-border",
            format!("i={i} loc={loc}"),
            pass,
            format!("lies in U_{i}: {}", yes_no(pass)),
        );
    }
    for i in 0..=d {
        let loc = Location::new(0, d - i, i);
        let vector = cba.array().vector(loc).expect("border location");
        let pass = !vector.is_zero()
            && in_span(std::slice::from_ref(down_split.spanner(i)), vector).expect(shared);
        report.push(
            "right-border",
            format!("i={i} loc={loc}"),
            pass,
            format!("lies in the reversed-order U_{i}: {}", yes_no(pass)),
        );
    }
    report.merge(bottom_border_check(&cba));
    report
}

/// Eigenvalue data of the four-parameter family
/// `theta_i = a + b q^i + c q^{-i}`, the most general sequence a Leonard
/// system of full shape can have. The parameters are validated up front:
/// `q` must avoid `0`, `1`, `-1`; `b` and `c` must be nonzero; and the
/// resulting eigenvalues must be pairwise distinct, which fails exactly
/// when `c = b q^{i+j}` for some pair `i < j`.
#[derive(Clone, Debug)]
pub struct QRacahParams {
    q: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: usize,
    theta: Vec<Scalar>,
}

impl QRacahParams {
    pub fn new(q: Scalar, a: Scalar, b: Scalar, c: Scalar, d: usize) -> Result<Self, Error> {
        let field = q.field();
        for other in [&a, &b, &c] {
            if other.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: other.field().to_string(),
                });
            }
        }
        if q.is_zero() {
            return Err(Error::InvalidParameter("q must be nonzero".to_string()));
        }
        if q.is_one() {
            return Err(Error::InvalidParameter("q must not be 1".to_string()));
        }
        if q.add(&Scalar::one(field))?.is_zero() {
            return Err(Error::InvalidParameter("q must not be -1".to_string()));
        }
        if b.is_zero() {
            return Err(Error::InvalidParameter("b must be nonzero".to_string()));
        }
        if c.is_zero() {
            return Err(Error::InvalidParameter("c must be nonzero".to_string()));
        }
        let theta: Vec<Scalar> = (0..=d)
            .map(|i| {
                let rising = b.mul(&q.pow(i as i64)?)?;
                let falling = c.mul(&q.pow(-(i as i64))?)?;
                a.add(&rising)?.add(&falling)
            })
            .collect::<Result<_, _>>()?;
        for i in 0..theta.len() {
            for j in i + 1..theta.len() {
                if theta[i] == theta[j] {
                    return Err(Error::RepeatedEigenvalue {
                        first: i,
                        second: j,
                        value: theta[i].to_string(),
                    });
                }
            }
        }
        Ok(QRacahParams {
            q,
            a,
            b,
            c,
            d,
            theta,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.q.field()
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.theta
    }

    /// The billiard-array value at a location of the grid two sizes
    /// smaller, in parameter form:
    /// `q (b q^{d+t-r-1} - c) / (b q^{d+t-r+1} - c)`. For valid parameters
    /// the denominator exponent lies in a range the distinctness check
    /// already excludes, so the division cannot actually fail.
    pub fn value(&self, loc: Location) -> Result<Scalar, Error> {
        if self.d < 2 || loc.diameter() != self.d - 2 {
            return Err(Error::Shape(format!(
                "location {loc} does not belong to the diameter-{} grid",
                self.d.saturating_sub(2)
            )));
        }
        let low = (self.d + loc.t) as i64 - loc.r as i64 - 1;
        let numerator = self.b.mul(&self.q.pow(low)?)?.sub(&self.c)?;
        let denominator = self.b.mul(&self.q.pow(low + 2)?)?.sub(&self.c)?;
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator(format!(
                "parameter-form value at {loc}"
            )));
        }
        self.q.mul(&numerator.div(&denominator)?)
    }
}

/// The tridiagonal pair with `A` having subdiagonal `1, ..., d`,
/// superdiagonal `d, ..., 1`, and zero diagonal, and `A*` diagonal with
/// entries `d - 2i`; both eigenvalue sequences are `d, d - 2, ..., -d`.
/// Returns `(A, theta, A*, theta*)` without any verification.
pub fn krawtchouk_fixture(
    field: FieldSpec,
    d: usize,
) -> (Matrix, Vec<Scalar>, Matrix, Vec<Scalar>) {
    let n = d + 1;
    let mut a = vec![vec![0i64; n]; n];
    let mut a_star = vec![vec![0i64; n]; n];
    for i in 0..n {
        if i > 0 {
            a[i][i - 1] = i as i64;
        }
        if i < d {
            a[i][i + 1] = (d - i) as i64;
        }
        a_star[i][i] = d as i64 - 2 * i as i64;
    }
    let theta: Vec<Scalar> = (0..n)
        .map(|i| Scalar::from_integer(d as i64 - 2 * i as i64, field))
        .collect();
    (
        Matrix::from_integers(&a, field).expect("rectangular integer rows"),
        theta.clone(),
        Matrix::from_integers(&a_star, field).expect("rectangular integer rows"),
        theta,
    )
}

/// The fixture of [`krawtchouk_fixture`], verified. Over a field whose
/// characteristic divides a difference of eigenvalues the verification
/// fails; over the rationals it succeeds for every `d`.
pub fn krawtchouk_system(field: FieldSpec, d: usize) -> Result<LeonardSystem, Error> {
    let (a, theta, a_star, theta_star) = krawtchouk_fixture(field, d);
    verify_leonard_system(a, theta, a_star, theta_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cba::closed_form_value;
    use crate::simplex::locations;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn sc(n: i64) -> Scalar {
        Scalar::from_integer(n, q())
    }

    fn scalars(ns: &[i64]) -> Vec<Scalar> {
        ns.iter().map(|&n| sc(n)).collect()
    }

    fn frac(text: &str) -> Scalar {
        Scalar::parse(text, q()).unwrap()
    }

    fn loc(r: usize, s: usize, t: usize) -> Location {
        Location::new(r, s, t)
    }

    #[test]
    fn krawtchouk_band_pattern_matches_the_brute_force_oracle() {
        // Oracle: compute every sandwich product directly from the
        // projectors and compare its vanishing against the band shape.
        let (a, theta, a_star, theta_star) = krawtchouk_fixture(q(), 3);
        let eig = EigStructure::new(a.clone(), theta.clone()).unwrap();
        let eig_star = EigStructure::new(a_star.clone(), theta_star.clone()).unwrap();
        for i in 0..=3usize {
            for j in 0..=3usize {
                if i == j {
                    continue;
                }
                let plain = eig
                    .idempotent(i)
                    .mul(&a_star)
                    .unwrap()
                    .mul(eig.idempotent(j))
                    .unwrap();
                let starred = eig_star
                    .idempotent(i)
                    .mul(&a)
                    .unwrap()
                    .mul(eig_star.idempotent(j))
                    .unwrap();
                assert_eq!(plain.is_zero(), i.abs_diff(j) > 1, "plain at ({i}, {j})");
                assert_eq!(
                    starred.is_zero(),
                    i.abs_diff(j) > 1,
                    "starred at ({i}, {j})"
                );
            }
        }
        assert!(verify_leonard_system(a, theta, a_star, theta_star).is_ok());
    }

    #[test]
    fn krawtchouk_verifies_for_a_range_of_diameters() {
        for d in 1..=5 {
            assert!(krawtchouk_system(q(), d).is_ok(), "diameter {d}");
        }
    }

    #[test]
    fn commuting_diagonal_pair_is_rejected() {
        // Two diagonal maps commute, so every off-diagonal sandwich
        // vanishes and the nonzero requirement next to the diagonal fails
        // at the first pair checked.
        let a = Matrix::from_integers(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]], q()).unwrap();
        let a_star =
            Matrix::from_integers(&[vec![3, 0, 0], vec![0, 4, 0], vec![0, 0, 5]], q()).unwrap();
        let err =
            verify_leonard_system(a, scalars(&[0, 1, 2]), a_star, scalars(&[3, 4, 5])).unwrap_err();
        assert_eq!(
            err,
            Error::NotLeonard {
                starred: false,
                row: 0,
                col: 1,
                expected_zero: false
            }
        );
    }

    #[test]
    fn permuting_the_eigenvalue_order_breaks_the_band_shape() {
        let (a, theta, a_star, theta_star) = krawtchouk_fixture(q(), 2);
        // Oracle: in the correct order, the (1, 2) sandwich is nonzero.
        let good = EigStructure::new(a.clone(), theta).unwrap();
        let sandwich = good
            .idempotent(1)
            .mul(&a_star)
            .unwrap()
            .mul(good.idempotent(2))
            .unwrap();
        assert!(!sandwich.is_zero());
        // Swapping the first two eigenvalues renames projector 1 to 0, so
        // the same nonzero product now sits at distance two.
        let permuted = scalars(&[0, 2, -2]);
        let err = verify_leonard_system(a, permuted, a_star, theta_star).unwrap_err();
        assert_eq!(
            err,
            Error::NotLeonard {
                starred: false,
                row: 0,
                col: 2,
                expected_zero: true
            }
        );
    }

    #[test]
    fn mismatched_shapes_and_fields_are_rejected() {
        let a = Matrix::from_integers(&[vec![0, 1], vec![1, 0]], q()).unwrap();
        let small = Matrix::from_integers(&[vec![1]], q()).unwrap();
        assert!(matches!(
            verify_leonard_system(a.clone(), scalars(&[1, -1]), small, vec![sc(1)]),
            Err(Error::Shape(_))
        ));
        let gf = FieldSpec::prime_field(5).unwrap();
        let b = Matrix::from_integers(&[vec![1, 0], vec![0, 4]], gf).unwrap();
        let theta_gf: Vec<Scalar> = [1, 4]
            .iter()
            .map(|&n| Scalar::from_integer(n, gf))
            .collect();
        assert!(matches!(
            verify_leonard_system(a, scalars(&[1, -1]), b, theta_gf),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn downarrow_reverses_the_eigenvalue_order_and_is_an_involution() {
        let ls = krawtchouk_system(q(), 2).unwrap();
        let down = ls.downarrow();
        assert_eq!(down.theta(), &scalars(&[-2, 0, 2])[..]);
        assert_eq!(down.theta_star(), ls.theta_star());
        let back = down.downarrow();
        assert_eq!(back.theta(), ls.theta());
        assert_eq!(back.eig().idempotents(), ls.eig().idempotents());
    }

    #[test]
    fn krawtchouk_split_spanners_match_hand_computation() {
        // By hand for diameter two: the seed is the first standard basis
        // vector, then (A + 2I) e_0 = (2, 1, 0) and A (2, 1, 0) = (2, 2, 2).
        let ls = krawtchouk_system(q(), 2).unwrap();
        let (split, report) = split_with_report(&ls);
        assert_eq!(split.spanner(0), &Vector::from_integers(&[1, 0, 0], q()));
        assert_eq!(split.spanner(1), &Vector::from_integers(&[2, 1, 0], q()));
        assert_eq!(split.spanner(2), &Vector::from_integers(&[2, 2, 2], q()));
        assert!(report.passed());
        // 3 spanner entries, 1 direct sum, 3 memberships, 3 + 3 partial
        // sums, 2 ends.
        assert_eq!(report.len(), 15);
        assert!(split_decomposition(&ls).is_ok());
    }

    #[test]
    fn split_reports_pass_across_diameters_and_fields() {
        for d in 1..=4 {
            let ls = krawtchouk_system(q(), d).unwrap();
            assert!(split_report(&ls).passed(), "rational, diameter {d}");
        }
        let gf = FieldSpec::prime_field(7).unwrap();
        let ls = krawtchouk_system(gf, 2).unwrap();
        assert!(split_report(&ls).passed());
        assert_eq!(split_decomposition(&ls).unwrap().field(), gf);
    }

    #[test]
    fn border_correspondence_passes_for_krawtchouk() {
        for d in 1..=4 {
            let ls = krawtchouk_system(q(), d).unwrap();
            let report = border_correspondence(&ls);
            assert!(report.passed(), "diameter {d}");
            assert_eq!(report.len(), 3 * (d + 1));
            for check in ["left-border", "right-border", "bottom-border"] {
                assert_eq!(
                    report.entries().iter().filter(|e| e.check == check).count(),
                    d + 1,
                    "{check} at diameter {d}"
                );
            }
        }
    }

    #[test]
    fn borders_identify_the_expected_vectors_at_diameter_two() {
        let ls = krawtchouk_system(q(), 2).unwrap();
        let seed = projector_column(ls.eig_star().idempotent(0));
        let cba = PolyCba::build(ls.eig().clone(), seed).unwrap();
        let (split, _) = split_with_report(&ls);
        // The left border literally consists of the split spanners here.
        assert_eq!(cba.array().vector(loc(0, 2, 0)).unwrap(), split.spanner(0));
        assert_eq!(cba.array().vector(loc(1, 1, 0)).unwrap(), split.spanner(1));
        assert_eq!(cba.array().vector(loc(2, 0, 0)).unwrap(), split.spanner(2));
        // The right border matches the reversed-order spanners.
        let (down_split, _) = split_with_report(&ls.downarrow());
        assert_eq!(
            cba.array().vector(loc(0, 1, 1)).unwrap(),
            down_split.spanner(1)
        );
        assert_eq!(
            cba.array().vector(loc(0, 0, 2)).unwrap(),
            down_split.spanner(2)
        );
    }

    #[test]
    fn border_membership_is_insensitive_to_the_seed_scale() {
        let ls = krawtchouk_system(q(), 3).unwrap();
        let seed = projector_column(ls.eig_star().idempotent(0))
            .scale(&frac("5/3"))
            .unwrap();
        let cba = PolyCba::build(ls.eig().clone(), seed).unwrap();
        let (split, _) = split_with_report(&ls);
        for i in 0..=3 {
            let vector = cba.array().vector(loc(i, 3 - i, 0)).unwrap();
            assert!(in_span(std::slice::from_ref(split.spanner(i)), vector).unwrap());
        }
    }

    #[test]
    fn parameter_family_eigenvalues_match_the_direct_formula() {
        let params = QRacahParams::new(sc(2), sc(0), sc(1), sc(1), 2).unwrap();
        assert_eq!(
            params.eigenvalues(),
            &[sc(2), frac("5/2"), frac("17/4")][..]
        );
        assert_eq!(params.value(loc(0, 0, 0)).unwrap(), frac("2/7"));
        assert_eq!(
            closed_form_value(params.eigenvalues(), loc(0, 0, 0)).unwrap(),
            frac("2/7")
        );
    }

    #[test]
    fn parameter_form_values_agree_with_the_closed_form_everywhere() {
        let params = QRacahParams::new(sc(2), sc(1), sc(3), sc(5), 4).unwrap();
        for location in locations(2) {
            assert_eq!(
                params.value(location).unwrap(),
                closed_form_value(params.eigenvalues(), location).unwrap(),
                "value at {location}"
            );
        }
        // Off-grid locations are rejected.
        assert!(matches!(params.value(loc(3, 0, 0)), Err(Error::Shape(_))));
        let tiny = QRacahParams::new(sc(2), sc(0), sc(1), sc(1), 1).unwrap();
        assert!(matches!(tiny.value(loc(0, 0, 0)), Err(Error::Shape(_))));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        for bad_q in [sc(0), sc(1), sc(-1)] {
            assert!(matches!(
                QRacahParams::new(bad_q, sc(0), sc(1), sc(1), 2),
                Err(Error::InvalidParameter(_))
            ));
        }
        assert!(matches!(
            QRacahParams::new(sc(2), sc(0), sc(0), sc(1), 2),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            QRacahParams::new(sc(2), sc(0), sc(1), sc(0), 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn eigenvalue_collisions_are_located_exactly() {
        // With q = 2, b = 1, c = 16 the collision c = b q^{i+j} happens at
        // i + j = 4, so theta_0 = theta_4 and theta_1 = theta_3.
        let err = QRacahParams::new(sc(2), sc(0), sc(1), sc(16), 4).unwrap_err();
        assert_eq!(
            err,
            Error::RepeatedEigenvalue {
                first: 0,
                second: 4,
                value: "17".to_string()
            }
        );
        // The two-step case from the duplicate fixture: theta_0 = theta_2.
        let err = QRacahParams::new(sc(2), sc(0), sc(1), sc(4), 2).unwrap_err();
        assert_eq!(
            err,
            Error::RepeatedEigenvalue {
                first: 0,
                second: 2,
                value: "5".to_string()
            }
        );
        assert_eq!(
            err.to_string(),
            "duplicate eigenvalue: theta_0 = theta_2 = 5"
        );
    }

    #[test]
    fn parameter_family_works_over_prime_fields() {
        let gf = FieldSpec::prime_field(11).unwrap();
        let two = Scalar::from_integer(2, gf);
        let params = QRacahParams::new(
            two.clone(),
            Scalar::zero(gf),
            Scalar::one(gf),
            Scalar::from_integer(3, gf),
            2,
        )
        .unwrap();
        // theta_i = 2^i + 3 * 2^{-i} mod 11: 4, 2 + 7 = 9, 4 + 9 = 13 = 2.
        let expected: Vec<Scalar> = [4, 9, 2]
            .iter()
            .map(|&n| Scalar::from_integer(n, gf))
            .collect();
        assert_eq!(params.eigenvalues(), &expected[..]);
        assert_eq!(
            params.value(loc(0, 0, 0)).unwrap(),
            closed_form_value(params.eigenvalues(), loc(0, 0, 0)).unwrap()
        );
    }

    #[test]
    fn characteristic_collisions_surface_as_errors() {
        let gf2 = FieldSpec::prime_field(2).unwrap();
        assert!(matches!(
            krawtchouk_system(gf2, 2),
            Err(Error::RepeatedEigenvalue { .. })
        ));
        // Over GF(7) the diameter-two eigenvalues 2, 0, -2 stay distinct.
        let gf7 = FieldSpec::prime_field(7).unwrap();
        assert!(krawtchouk_system(gf7, 2).is_ok());
    }
}
