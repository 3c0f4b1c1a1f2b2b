//! The error type shared by every module of this crate.

use std::fmt;

/// Everything that can go wrong while building or verifying an array.
///
/// Degenerate input is reported through this type rather than by panicking,
/// so callers (the command-line tool in particular) can distinguish bad
/// input from a failed verification verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A prime-field modulus that is not prime.
    NotPrime(u64),
    /// A scalar literal that could not be read in the requested field.
    ParseScalar { text: String, reason: String },
    /// Arithmetic combining scalars from two different fields.
    FieldMismatch { left: String, right: String },
    /// Division by zero in the scalar field.
    DivisionByZero,
    /// A dimension or shape inconsistency (ragged rows, length mismatch, ...).
    Shape(String),
    /// Two entries of an eigenvalue list coincide.
    RepeatedEigenvalue {
        first: usize,
        second: usize,
        value: String,
    },
    /// The spectral projectors of a candidate map fail one of their defining
    /// identities, so the map is not multiplicity-free with that spectrum.
    NotMultiplicityFree(String),
    /// A seed vector with a vanishing component in some eigenspace.
    SeedComponentZero { index: usize },
    /// Two black cliques assign different labels to a shared edge.
    EdgeLabelConflict { subject: String },
    /// A black clique whose three vectors do not satisfy the dependency
    /// relation encoded by the edge labels.
    CliqueDependency { subject: String },
    /// A tridiagonality condition of a Leonard system fails at (row, col).
    /// `starred` tells which family of projectors sandwiches the other map.
    NotLeonard {
        starred: bool,
        row: usize,
        col: usize,
        expected_zero: bool,
    },
    /// A parameter set that violates its stated constraints.
    InvalidParameter(String),
    /// A denominator that vanishes in a closed-form evaluation.
    ZeroDenominator(String),
    /// A split-decomposition spanning vector that is zero.
    SpannerZero { index: usize },
    /// A split-decomposition consistency check that failed.
    SplitViolation(String),
    /// A matrix inverse requested for a singular matrix.
    Singular,
    /// An input document that does not match the expected schema.
    Schema(String),
    /// An internal consistency guard failed; this indicates a bug in the
    /// crate, not a problem with the input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            Error::ParseScalar { text, reason } => {
                write!(f, "cannot read scalar {text:?}: {reason}")
            }
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: {left} versus {right}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::RepeatedEigenvalue {
                first,
                second,
                value,
            } => write!(
                f,
                "duplicate eigenvalue: theta_{first} = theta_{second} = {value}"
            ),
            Error::NotMultiplicityFree(msg) => {
                write!(f, "map is not multiplicity-free with this spectrum: {msg}")
            }
            Error::SeedComponentZero { index } => {
                write!(f, "seed vector has zero component in eigenspace {index}")
            }
            Error::EdgeLabelConflict { subject } => {
                write!(f, "conflicting edge labels on {subject}")
            }
            Error::CliqueDependency { subject } => write!(
                f,
                "black clique {subject} violates the labeled dependency relation"
            ),
            Error::NotLeonard {
                starred,
                row,
                col,
                expected_zero,
            } => {
                let (outer, inner) = if *starred { ("E*", "A") } else { ("E", "A*") };
                if *expected_zero {
                    write!(
                        f,
                        "{outer}_{row} {inner} {outer}_{col} is nonzero but |{row} - {col}| > 1"
                    )
                } else {
                    write!(
                        f,
                        "{outer}_{row} {inner} {outer}_{col} is zero but |{row} - {col}| = 1"
                    )
                }
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ZeroDenominator(msg) => write!(f, "zero denominator: {msg}"),
            Error::SpannerZero { index } => {
                write!(f, "split component {index} has a zero spanning vector")
            }
            Error::SplitViolation(msg) => write!(f, "split decomposition check failed: {msg}"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::Schema(msg) => write!(f, "input does not match the expected schema: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
