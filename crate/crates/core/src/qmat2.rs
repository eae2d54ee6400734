//! 2×2 quaternionic matrices and their complex 4×4 embedding.
//!
//! Writing every entry as `q = q0 + j q1` splits `A = A0 + j A1` with complex
//! 2×2 blocks, and
//!
//! ```text
//! A_C = [ A0  -conj(A1) ]
//!       [ A1   conj(A0) ]
//! ```
//!
//! is an injective ring homomorphism. It is exactly the matrix of the left
//! action of `A` on `(z0 + j z1, w0 + j w1)` in the coordinates `(z0, w0, z1, w1)`.

use std::ops::{Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// `[[a, b], [c, d]]`, acting on columns and on `ℍ ∪ {∞}` by `Z ↦ (aZ + b)(cZ + d)^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[Quaternion; 2]; 2]", into = "[[Quaternion; 2]; 2]")]
pub struct QMat2 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl From<[[Quaternion; 2]; 2]> for QMat2 {
    fn from(m: [[Quaternion; 2]; 2]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<QMat2> for [[Quaternion; 2]; 2] {
    fn from(m: QMat2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

/// A column vector in the right ℍ-module ℍ².
pub type QVec2 = [Quaternion; 2];

impl QMat2 {
    pub const IDENTITY: Self = Self::new(Quaternion::ONE, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE);

    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { a, b, c, d }
    }

    pub fn diag(a: Quaternion, d: Quaternion) -> Self {
        Self::new(a, Quaternion::ZERO, Quaternion::ZERO, d)
    }

    pub fn upper(a: Quaternion, b: Quaternion, d: Quaternion) -> Self {
        Self::new(a, b, Quaternion::ZERO, d)
    }

    pub fn scalar(r: f64) -> Self {
        Self::diag(Quaternion::real(r), Quaternion::real(r))
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: QVec2, v: QVec2) -> Self {
        Self::new(u[0], v[0], u[1], v[1])
    }

    pub fn entries(&self) -> [Quaternion; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self::new(f(self.a), f(self.b), f(self.c), f(self.d))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, r: f64) -> Self {
        self.map(|q| q.scale(r))
    }

    pub fn mul_vec(&self, v: QVec2) -> QVec2 {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Pivot row choice for elimination: the one whose first-column entry is larger.
    fn pivoted(&self) -> (bool, Self) {
        if self.c.norm_sqr() > self.a.norm_sqr() {
            (true, Self::new(self.c, self.d, self.a, self.b))
        } else {
            (false, *self)
        }
    }

    /// `det(A_C)`, computed as `|pivot|^2 |schur complement|^2`. Always `>= 0`.
    pub fn det_embedding(&self) -> f64 {
        let (_, m) = self.pivoted();
        match m.a.inverse() {
            Ok(ainv) => {
                let schur = m.d - m.c * ainv * m.b;
                m.a.norm_sqr() * schur.norm_sqr()
            }
            Err(_) => 0.0,
        }
    }

    /// Threshold below which `det(A_C)` counts as zero: `tol * ‖A‖_F^4`.
    pub fn singular_threshold(&self, tol: f64) -> f64 {
        tol * self.frobenius_norm().powi(4)
    }

    pub fn check_invertible(&self, tol: f64) -> Result<()> {
        let det = self.det_embedding();
        let threshold = self.singular_threshold(tol);
        if !(det > threshold) || !det.is_finite() {
            return Err(Error::SingularMatrix { det, threshold });
        }
        Ok(())
    }

    /// Inverse by block elimination with row pivoting.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        self.check_invertible(tol)?;
        let (swapped, m) = self.pivoted();
        let ainv = m.a.inverse()?;
        let sinv = (m.d - m.c * ainv * m.b).inverse()?;
        let ab = ainv * m.b;
        let ca = m.c * ainv;
        let inv = Self::new(ainv + ab * sinv * ca, -(ab * sinv), -(sinv * ca), sinv);
        // Undo the row swap: (P A)^-1 = A^-1 P^-1, i.e. swap the columns back.
        Ok(if swapped { Self::new(inv.b, inv.a, inv.d, inv.c) } else { inv })
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &Self, tol: f64) -> Result<Self> {
        Ok(*self * *other * self.inverse(tol)?)
    }

    pub fn is_real_scalar(&self, tol: f64) -> bool {
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        let off = self.b.norm().max(self.c.norm());
        let r = 0.5 * (self.a.w + self.d.w);
        off <= tol * scale && (self.a - Quaternion::real(r)).norm() <= tol * scale && (self.d - Quaternion::real(r)).norm() <= tol * scale
    }

    pub fn embed(&self) -> CMat4 {
        let [a, b, c, d] = self.entries().map(Quaternion::split);
        let a0 = [[a.c0, b.c0], [c.c0, d.c0]];
        let a1 = [[a.c1, b.c1], [c.c1, d.c1]];
        let mut m = Matrix4::zeros();
        for r in 0..2 {
            for s in 0..2 {
                m[(r, s)] = a0[r][s];
                m[(r, s + 2)] = -a1[r][s].conj();
                m[(r + 2, s)] = a1[r][s];
                m[(r + 2, s + 2)] = a0[r][s].conj();
            }
        }
        CMat4(m)
    }
}

impl Mul for QMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d, self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)
    }
}

impl Sub for QMat2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for QMat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|q| -q)
    }
}

impl Mul<QMat2> for f64 {
    type Output = QMat2;
    fn mul(self, m: QMat2) -> QMat2 {
        m.scale(self)
    }
}

/// Quaternion vector `(z0 + j z1, w0 + j w1)` from complex coordinates `(z0, w0, z1, w1)`.
pub fn qvec_from_complex(v: &Vector4<Complex64>) -> QVec2 {
    [Quaternion::from_left_j(v[0], v[2]), Quaternion::from_left_j(v[1], v[3])]
}

/// Complex coordinates `(z0, w0, z1, w1)` of a quaternion vector.
pub fn qvec_to_complex(v: QVec2) -> Vector4<Complex64> {
    let (p, q) = (v[0].split(), v[1].split());
    Vector4::new(p.c0, q.c0, p.c1, q.c1)
}

pub fn qvec_norm(v: QVec2) -> f64 {
    v[0].norm().hypot(v[1].norm())
}

/// A complex 4×4 matrix, usually the image of [`QMat2::embed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub Matrix4<Complex64>);

/// The embedded characteristic polynomial written as
/// `x^4 - 2 a3 x^3 + a2 x^2 - 2 a1 x + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoeffs {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl CharPolyCoeffs {
    /// Monic real coefficients `[1, p1, p2, p3, p4]` of `x^4 + p1 x^3 + ...`.
    pub fn monic(&self) -> [f64; 5] {
        [1.0, -2.0 * self.a3, self.a2, -2.0 * self.a1, self.a0]
    }

    pub fn as_poly(&self) -> RealPoly {
        let m = self.monic();
        RealPoly::from_descending(&m)
    }
}

/// Real polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    pub coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn from_ascending(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.to_vec() }
    }

    pub fn from_descending(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.iter().rev().copied().collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }
}

impl CMat4 {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Raw monic characteristic polynomial `[1, p1, p2, p3, p4]` (descending degree)
    /// by Faddeev–LeVerrier.
    pub fn char_poly_raw(&self) -> [Complex64; 5] {
        let a = &self.0;
        let id = Matrix4::<Complex64>::identity();
        let mut p = [Complex64::new(0.0, 0.0); 5];
        p[0] = Complex64::new(1.0, 0.0);
        let mut m = Matrix4::<Complex64>::zeros();
        for k in 1..=4 {
            m = a * m + id * p[k - 1];
            p[k] = -(a * m).trace() / k as f64;
        }
        p
    }

    /// Largest `|Im p_k| / ‖M‖_F^k` over the raw characteristic coefficients.
    pub fn char_poly_max_imag(&self) -> f64 {
        let p = self.char_poly_raw();
        let n = self.frobenius_norm().max(f64::MIN_POSITIVE);
        (1..5).map(|k| p[k].im.abs() / n.powi(k as i32)).fold(0.0, f64::max)
    }

    /// Real coefficients `(a0, a1, a2, a3)`; the trace-type coefficients carry a
    /// factor of two that is divided out here.
    pub fn char_poly(&self, tol: f64) -> Result<CharPolyCoeffs> {
        let p = self.char_poly_raw();
        let max_imag = self.char_poly_max_imag();
        if max_imag > tol {
            return Err(Error::NonRealCoefficients { max_imag });
        }
        let coeffs = CharPolyCoeffs { a3: -p[1].re / 2.0, a2: p[2].re, a1: -p[3].re / 2.0, a0: p[4].re };
        let n4 = self.frobenius_norm().powi(4);
        if !(coeffs.a0 > tol * n4) {
            return Err(Error::NonPositiveDeterminant { a0: coeffs.a0 });
        }
        Ok(coeffs)
    }

    /// Horner evaluation of a real polynomial at this matrix.
    pub fn eval_poly(&self, poly: &RealPoly) -> Matrix4<Complex64> {
        let id = Matrix4::<Complex64>::identity();
        let mut acc = Matrix4::<Complex64>::zeros();
        for &c in poly.coeffs.iter().rev() {
            acc = self.0 * acc + id * Complex64::new(c, 0.0);
        }
        acc
    }

    /// `‖p(M)‖_F / ‖M‖_F^deg`.
    pub fn poly_residual(&self, poly: &RealPoly) -> f64 {
        let value = self.eval_poly(poly);
        let norm = value.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        norm / self.frobenius_norm().powi(poly.degree() as i32)
    }

    /// Whether `p(M) = 0` within `tol * ‖M‖_F^deg * (deg + 1)`.
    pub fn annihilates(&self, poly: &RealPoly, tol: f64) -> bool {
        self.poly_residual(poly) <= tol * (poly.degree() + 1) as f64
    }

    /// Recovers the quaternion matrix from the `A0` and `A1` blocks.
    pub fn unembed(&self) -> QMat2 {
        let m = &self.0;
        let q = |r: usize, s: usize| Quaternion::from_left_j(m[(r, s)], m[(r + 2, s)]);
        QMat2::new(q(0, 0), q(0, 1), q(1, 0), q(1, 1))
    }

    /// Distance from the block pattern `[[A0, -conj A1], [A1, conj A0]]`.
    pub fn block_structure_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for s in 0..2 {
                worst = worst.max((m[(r, s + 2)] + m[(r + 2, s)].conj()).norm()).max((m[(r + 2, s + 2)] - m[(r, s)].conj()).norm());
            }
        }
        worst
    }
}

impl QMat2 {
    pub fn char_poly(&self, tol: f64) -> Result<CharPolyCoeffs> {
        self.check_invertible(tol)?;
        self.embed().char_poly(tol)
    }
}
