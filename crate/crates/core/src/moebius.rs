//! Linear-fractional action on `ℍ ∪ {∞}` and the inversion/reflection generators.
//!
//! Orientation-reversing maps are carried as a matrix plus a flag meaning
//! "conjugate the argument first": `Z ↦ (a Z̄ + b)(c Z̄ + d)^-1`. Composing two
//! such maps gives an honest element of `GL(2, ℍ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat2::QMat2;
use crate::quat::Quaternion;
use crate::spectral::BoundaryPoint;

/// `(a Z + b)(c Z + d)^-1`, evaluated projectively so that points near the
/// pole and `∞` itself go through the same code path.
pub fn apply(a: &QMat2, z: BoundaryPoint, tol: f64) -> BoundaryPoint {
    let (u, w) = match z {
        BoundaryPoint::Infinity => (Quaternion::ONE, Quaternion::ZERO),
        // [Z : 1] = [1 : Z^-1]; use the second chart away from the origin.
        BoundaryPoint::Finite(q) if q.norm() > 1.0 => match q.inverse() {
            Ok(qinv) => (Quaternion::ONE, qinv),
            Err(_) => (q, Quaternion::ONE),
        },
        BoundaryPoint::Finite(q) => (q, Quaternion::ONE),
    };
    let [u2, w2] = a.mul_vec([u, w]);
    BoundaryPoint::from_homogeneous(u2, w2, tol)
}

fn conj_point(z: BoundaryPoint) -> BoundaryPoint {
    match z {
        BoundaryPoint::Finite(q) => BoundaryPoint::Finite(q.conj()),
        BoundaryPoint::Infinity => BoundaryPoint::Infinity,
    }
}

/// Inversion in the 3-sphere `|Z - a| = r`: `Z ↦ a + r^2 (Z̄ - ā)^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub center: Quaternion,
    pub radius: f64,
}

impl Inversion {
    pub fn new(center: Quaternion, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidGenerator(format!("inversion radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    /// `(a Z̄ - a ā + r^2)(Z̄ - ā)^-1`
    pub fn as_map(&self) -> ConformalMap {
        let a = self.center;
        let m = QMat2::new(a, Quaternion::real(self.radius * self.radius - a.norm_sqr()), Quaternion::ONE, -a.conj());
        ConformalMap { matrix: m, reversing: true }
    }

    pub fn apply(&self, z: BoundaryPoint, tol: f64) -> BoundaryPoint {
        self.as_map().apply(z, tol)
    }
}

/// Reflection in a hyperplane through `base` with unit normal `normal`:
/// `Z ↦ a - λ (Z̄ - ā) λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reflection {
    pub normal: Quaternion,
    pub base: Quaternion,
}

impl Reflection {
    pub fn new(normal: Quaternion, base: Quaternion, tol: f64) -> Result<Self> {
        if !((normal.norm() - 1.0).abs() <= tol) {
            return Err(Error::InvalidGenerator(format!("reflection normal must be a unit quaternion, |λ| = {}", normal.norm())));
        }
        Ok(Self { normal, base })
    }

    /// `(-λ Z̄ + λ ā + a λ̄)(λ̄)^-1`
    pub fn as_map(&self) -> ConformalMap {
        let (l, a) = (self.normal, self.base);
        let m = QMat2::new(-l, l * a.conj() + a * l.conj(), Quaternion::ZERO, l.conj());
        ConformalMap { matrix: m, reversing: true }
    }

    pub fn apply(&self, z: BoundaryPoint, tol: f64) -> BoundaryPoint {
        self.as_map().apply(z, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Generator {
    Inversion(Inversion),
    Reflection(Reflection),
}

impl Generator {
    pub fn as_map(&self) -> ConformalMap {
        match self {
            Self::Inversion(g) => g.as_map(),
            Self::Reflection(g) => g.as_map(),
        }
    }

    pub fn apply(&self, z: BoundaryPoint, tol: f64) -> BoundaryPoint {
        self.as_map().apply(z, tol)
    }
}

impl From<Inversion> for Generator {
    fn from(g: Inversion) -> Self {
        Self::Inversion(g)
    }
}

impl From<Reflection> for Generator {
    fn from(g: Reflection) -> Self {
        Self::Reflection(g)
    }
}

/// A Möbius transformation of `ℍ ∪ {∞}`, possibly orientation-reversing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConformalMap {
    pub matrix: QMat2,
    pub reversing: bool,
}

impl From<QMat2> for ConformalMap {
    fn from(matrix: QMat2) -> Self {
        Self { matrix, reversing: false }
    }
}

/// Matrix of `Z ↦ conj(M · Z̄)`.
///
/// `conj((a Z̄ + b)(c Z̄ + d)^-1) = (Z c̄ + d̄)^-1 (Z ā + b̄)`, and solving
/// `W = (Zγ + δ)^-1 (Zα + β)` for `Z` gives the matrix `[[-δ, β], [γ, -α]]` of
/// the inverse map.
fn conjugated_by_bar(m: &QMat2, tol: f64) -> Result<QMat2> {
    let inverse_map = QMat2::new(-m.d.conj(), m.b.conj(), m.c.conj(), -m.a.conj());
    inverse_map.inverse(tol)
}

impl ConformalMap {
    pub fn apply(&self, z: BoundaryPoint, tol: f64) -> BoundaryPoint {
        let z = if self.reversing { conj_point(z) } else { z };
        apply(&self.matrix, z, tol)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ConformalMap, tol: f64) -> Result<ConformalMap> {
        if next.reversing {
            Ok(ConformalMap { matrix: next.matrix * conjugated_by_bar(&self.matrix, tol)?, reversing: !self.reversing })
        } else {
            Ok(ConformalMap { matrix: next.matrix * self.matrix, reversing: self.reversing })
        }
    }

    pub fn orientation_preserving(&self) -> Option<QMat2> {
        (!self.reversing).then_some(self.matrix)
    }
}

/// Matrix in `GL(2, ℍ)` of `second ∘ first`.
pub fn compose_inversions(first: &Generator, second: &Generator, tol: f64) -> Result<QMat2> {
    let composed = first.as_map().then(&second.as_map(), tol)?;
    Ok(composed.orientation_preserving().expect("two orientation-reversing maps compose to a preserving one"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<BoundaryPoint>,
    /// Index of the first iterate that left the finite chart for `∞`; the orbit stops there.
    pub pole_pass: Option<usize>,
}

/// `Z0, A Z0, ..., A^n Z0`, stopping early when a finite iterate is sent to `∞`.
pub fn orbit(a: &QMat2, z0: BoundaryPoint, n: usize, tol: f64) -> Orbit {
    let mut points = Vec::with_capacity(n + 1);
    points.push(z0);
    let mut current = z0;
    for k in 1..=n {
        let next = apply(a, current, tol);
        points.push(next);
        if next.is_infinite() && !current.is_infinite() {
            return Orbit { points, pole_pass: Some(k) };
        }
        current = next;
    }
    Orbit { points, pole_pass: None }
}
