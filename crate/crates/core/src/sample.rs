//! Seeded random matrices and the classifier/oracle cross-check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, ClassificationReport, DynamicalType};
use crate::qmat2::QMat2;
use crate::quat::Quaternion;
use crate::spectral::eigen_structure_oracle;

/// Smallest `det A_C` accepted for a random matrix.
pub const MIN_DET: f64 = 1e-6;
/// Smallest decisive margin accepted for a random matrix in oracle comparisons.
pub const MIN_MARGIN: f64 = 1e-4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components i.i.d. uniform on `[-2, 2]`.
pub fn quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0))
}

/// A quaternion in the `1, i` plane with components uniform on `[-2, 2]`.
pub fn complex<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0), 0.0, 0.0)
}

pub fn qmat2<R: Rng>(rng: &mut R) -> QMat2 {
    QMat2::new(quaternion(rng), quaternion(rng), quaternion(rng), quaternion(rng))
}

/// Rejection-samples until `det A_C > MIN_DET`.
pub fn invertible<R: Rng>(rng: &mut R) -> QMat2 {
    loop {
        let a = qmat2(rng);
        if a.det_embedding() > MIN_DET {
            return a;
        }
    }
}

/// An invertible matrix whose classification is well away from every decision surface.
pub fn well_posed<R: Rng>(rng: &mut R, tol: f64) -> (QMat2, ClassificationReport) {
    loop {
        let a = invertible(rng);
        if let Ok(report) = classify(&a, tol) {
            if !report.borderline && report.decisive_margin() >= MIN_MARGIN {
                return (a, report);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: usize,
    pub matrix: QMat2,
    pub classify: DynamicalType,
    /// `None` when the oracle itself failed.
    pub oracle: Option<DynamicalType>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub total: usize,
    pub agree: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares `classify` with the eigenvalue oracle on `n` well-posed random matrices.
pub fn check_oracle(n: usize, seed: u64, tol: f64) -> OracleCheck {
    let mut rng = rng(seed);
    let mut disagreements = Vec::new();
    for index in 0..n {
        let (matrix, report) = well_posed(&mut rng, tol);
        let oracle = eigen_structure_oracle(&matrix, tol).ok();
        if oracle != Some(report.dtype) {
            disagreements.push(Disagreement { index, matrix, classify: report.dtype, oracle });
        }
    }
    OracleCheck { total: n, agree: n - disagreements.len(), disagreements }
}
