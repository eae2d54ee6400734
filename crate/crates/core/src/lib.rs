//! Orientation-preserving isometries of hyperbolic 5-space as 2×2 quaternionic
//! matrices acting on the boundary sphere `ℍ ∪ {∞}` by `Z ↦ (aZ + b)(cZ + d)^-1`.
//!
//! - [`quat`]: quaternion arithmetic and similarity classes.
//! - [`qmat2`]: `GL(2, ℍ)`, the complex embedding `A ↦ A_C` and its real
//!   characteristic polynomial.
//! - [`classify`]: the invariants `c1, c2, c3` and the dynamical type.
//! - [`spectral`]: right eigenvalues, fixed points, an eigenvalue-based type
//!   oracle and the conjugacy normal form.
//! - [`moebius`]: the boundary action, inversions and reflections.
//! - [`zclass`]: centralizer types.
//! - [`sample`]: seeded random inputs and the classifier/oracle cross-check.

// `!(x > t)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod error;
pub mod moebius;
pub mod qmat2;
pub mod quat;
pub mod sample;
pub mod spectral;
pub mod zclass;

pub use classify::{classify, ClassificationReport, DynamicalType, Invariants};
pub use error::{Error, Result};
pub use qmat2::{CMat4, CharPolyCoeffs, QMat2};
pub use quat::{Quaternion, DEFAULT_TOL};
pub use spectral::{BoundaryPoint, NormalForm, NormalFormKind};
pub use zclass::ZClassType;
