//! Centralizer types (z-classes) in `GL(2, ℍ)`.
//!
//! Two elements share a z-class when their centralizers are conjugate. Read
//! off the normal form, the centralizer only depends on whether the diagonal
//! entries are real, whether they coincide, and whether the form is triangular,
//! which leaves seven classes.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qmat2::QMat2;
use crate::quat::Quaternion;
use crate::sample::{complex as random_complex, quaternion as random_quaternion, rng};
use crate::spectral::{normal_form, NormalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZClassType {
    /// Centralizer `GL(2, ℍ)`.
    Scalar,
    /// `ℍ* ⊕ ℍ*`.
    RealDiagDistinct,
    /// `ℍ* ⋉ T(2, ℍ)`.
    RealParabolic,
    /// `ℂ* ⋉ T(2, ℂ)`.
    ComplexParabolic,
    /// `ℂ* ⊕ ℂ*`.
    ComplexDiagDistinct,
    /// `ℍ* ⊕ ℂ*`.
    MixedDiag,
    /// `GL(2, ℂ)`.
    ComplexScalar,
}

impl ZClassType {
    pub const ALL: [ZClassType; 7] = [
        Self::Scalar,
        Self::RealDiagDistinct,
        Self::RealParabolic,
        Self::ComplexParabolic,
        Self::ComplexDiagDistinct,
        Self::MixedDiag,
        Self::ComplexScalar,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Scalar => "scalar",
            Self::RealDiagDistinct => "real-diag-distinct",
            Self::RealParabolic => "real-parabolic",
            Self::ComplexParabolic => "complex-parabolic",
            Self::ComplexDiagDistinct => "complex-diag-distinct",
            Self::MixedDiag => "mixed-diag",
            Self::ComplexScalar => "complex-scalar",
        }
    }

    /// The representative whose centralizer [`sample_centralizer`] samples.
    pub fn representative(&self) -> QMat2 {
        let lambda = Quaternion::from_polar(1.0, PI / 3.0);
        let mu = Quaternion::from_polar(1.0, PI / 4.0);
        let one = Quaternion::ONE;
        match self {
            Self::Scalar => QMat2::IDENTITY,
            Self::RealDiagDistinct => QMat2::diag(Quaternion::real(2.0), one),
            Self::RealParabolic => QMat2::upper(one, one, one),
            Self::ComplexParabolic => QMat2::upper(lambda, one, lambda),
            Self::ComplexDiagDistinct => QMat2::diag(lambda, mu),
            Self::MixedDiag => QMat2::diag(lambda, one),
            Self::ComplexScalar => QMat2::diag(lambda, lambda),
        }
    }
}

impl fmt::Display for ZClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn is_real(z: Complex64, tol: f64) -> bool {
    let theta = z.im.abs().atan2(z.re);
    theta <= tol || PI - theta <= tol
}

/// z-class read off an already computed normal form.
pub fn z_class_of_normal_form(nf: &NormalForm, tol: f64) -> ZClassType {
    let [p, q] = nf.diagonal();
    let (p_real, q_real) = (is_real(p, tol), is_real(q, tol));
    if nf.is_triangular() {
        return if p_real { ZClassType::RealParabolic } else { ZClassType::ComplexParabolic };
    }
    let equal = (p - q).norm() <= tol * p.norm().max(q.norm());
    match (p_real, q_real, equal) {
        (true, true, true) => ZClassType::Scalar,
        (true, true, false) => ZClassType::RealDiagDistinct,
        (true, false, _) | (false, true, _) => ZClassType::MixedDiag,
        (false, false, true) => ZClassType::ComplexScalar,
        (false, false, false) => ZClassType::ComplexDiagDistinct,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZClassReport {
    pub zclass: ZClassType,
    /// `S` with `S A S^-1` equal to the normal form; the centralizer of `A`
    /// is `S^-1 Z(canonical) S`.
    pub conjugator: QMat2,
    pub canonical: QMat2,
}

pub fn z_class_report(a: &QMat2, tol: f64) -> Result<ZClassReport> {
    let nf = normal_form(a, tol)?;
    Ok(ZClassReport { zclass: z_class_of_normal_form(&nf, tol), conjugator: nf.conjugator, canonical: nf.canonical })
}

pub fn z_class_of(a: &QMat2, tol: f64) -> Result<ZClassType> {
    Ok(z_class_report(a, tol)?.zclass)
}

/// `‖AB - BA‖_F <= tol ‖A‖_F ‖B‖_F`.
pub fn in_centralizer(a: &QMat2, b: &QMat2, tol: f64) -> bool {
    (*a * *b - *b * *a).frobenius_norm() <= tol * a.frobenius_norm() * b.frobenius_norm()
}

/// A pseudorandom invertible element of the centralizer of `zc.representative()`.
pub fn sample_centralizer(zc: ZClassType, seed: u64) -> QMat2 {
    let mut rng = rng(seed);
    loop {
        let rng = &mut rng;
        let m = match zc {
            ZClassType::Scalar => crate::sample::qmat2(rng),
            ZClassType::RealDiagDistinct => QMat2::diag(random_quaternion(rng), random_quaternion(rng)),
            ZClassType::RealParabolic => {
                let a = random_quaternion(rng);
                QMat2::upper(a, random_quaternion(rng), a)
            }
            ZClassType::ComplexParabolic => {
                let a = random_complex(rng);
                QMat2::upper(a, random_complex(rng), a)
            }
            ZClassType::ComplexDiagDistinct => QMat2::diag(random_complex(rng), random_complex(rng)),
            ZClassType::MixedDiag => QMat2::diag(random_complex(rng), random_quaternion(rng)),
            ZClassType::ComplexScalar => QMat2::new(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng)),
        };
        if m.det_embedding() > crate::sample::MIN_DET {
            return m;
        }
    }
}
