//! Exact construction and verification of billiard arrays of polynomial
//! type, and of the Leonard systems whose split decompositions they trace.
//!
//! A billiard array of diameter `d` assigns a one-dimensional subspace of a
//! `(d + 1)`-dimensional vector space to each location of a triangular grid,
//! subject to two conditions: the locations on any maximal line span
//! subspaces that are linearly independent, and the three locations of any
//! upward triangle (a *black clique*) span a two-dimensional space. The
//! *polynomial type* arrays handled here are built from a single
//! multiplicity-free linear map `A` with ordered eigenvalues
//! `theta_0, ..., theta_d` and a seed vector `v`: the location `(r, s, t)`
//! receives
//!
//! ```text
//! (A - theta_d I) ... (A - theta_{d-r+1} I) (A - theta_0 I) ... (A - theta_{t-1} I) v.
//! ```
//!
//! Everything is computed over the rationals or a prime field with exact
//! arithmetic, and every claimed property is checked rather than assumed:
//! the eigenvalue sequence is certified by constructing the primitive
//! idempotents, the array conditions are verified rank by rank, the edge
//! labels are validated against the dependency relation on every black
//! clique, and the value function is compared with its closed form.
//!
//! ```
//! use billiard::cba::{closed_form_value, edge_labels, value_function, verify_cba};
//! use billiard::{EigStructure, FieldSpec, Matrix, PolyCba, Scalar};
//!
//! let field = FieldSpec::rational();
//! let theta: Vec<Scalar> = (0..3).map(|i| Scalar::from_integer(i, field)).collect();
//! let map = Matrix::from_integers(
//!     &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
//!     field,
//! )?;
//!
//! // Certify the spectrum, build the array, and verify its conditions.
//! let eig = EigStructure::new(map, theta.clone())?;
//! let cba = PolyCba::with_default_seed(eig)?;
//! assert!(verify_cba(cba.array()).passed());
//!
//! // Derive the edge labeling and compare the value function with its
//! // closed form at the single interior location of a diameter-2 grid.
//! let labeling = edge_labels(cba.array())?;
//! let values = value_function(&labeling)?;
//! for (location, value) in values.iter() {
//!     assert_eq!(*value, closed_form_value(&theta, location)?);
//! }
//! # Ok::<(), billiard::Error>(())
//! ```
//!
//! Module guide:
//!
//! * [`field`] — exact scalars over the rationals or a prime field;
//! * [`linalg`] — vectors, matrices, rank, and certified eigenstructures;
//! * [`simplex`] — the triangular grid, its lines, and its cliques;
//! * [`cba`] — array construction, verification, edge labels, values;
//! * [`leonard`] — Leonard systems, split decompositions, borders;
//! * [`json`] — file schemas for maps, arrays, pairs, and parameters;
//! * [`report`] — the pass/fail entry list every verifier produces.

#![forbid(unsafe_code)]

pub mod cba;
pub mod error;
pub mod field;
pub mod json;
pub mod leonard;
pub mod linalg;
pub mod report;
pub mod simplex;

pub use cba::{CbaArray, EdgeLabeling, PolyCba, ValueFunction};
pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use leonard::{LeonardSystem, QRacahParams, SplitDecomposition};
pub use linalg::{EigStructure, Matrix, Vector};
pub use report::{CheckEntry, Report};
pub use simplex::{Axis, Location};
