//! Quaternion arithmetic over `f64`.
//!
//! `Quaternion { w, x, y, z }` stands for `w + x i + y j + z k`. The complex
//! numbers are identified with the span of `{1, i}`, so every quaternion can be
//! split as `c0 + j c1` (the left-j form used by the complex embedding) or as
//! `b0 + b1 j` (the right-j form used when solving Sylvester equations).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// The unique decomposition `q = c0 + j c1` with `c0, c1` complex and `j` on the left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl ComplexPair {
    pub fn reassemble(self) -> Quaternion {
        Quaternion::from_left_j(self.c0, self.c1)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Embeds `re + im i` into the `{1, i}` plane.
    #[inline]
    pub fn from_complex(c: Complex64) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    /// `r e^{i theta}`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::from_complex(Complex64::from_polar(r, theta))
    }

    /// Builds `c0 + j c1`. Since `j (a + b i) = a j - b k`, the k-component is `-Im c1`.
    #[inline]
    pub fn from_left_j(c0: Complex64, c1: Complex64) -> Self {
        Self::new(c0.re, c0.im, c1.re, -c1.im)
    }

    /// Builds `b0 + b1 j`.
    #[inline]
    pub fn from_right_j(b0: Complex64, b1: Complex64) -> Self {
        Self::new(b0.re, b0.im, b1.re, b1.im)
    }

    #[inline]
    pub fn split(self) -> ComplexPair {
        ComplexPair { c0: Complex64::new(self.w, self.x), c1: Complex64::new(self.y, -self.z) }
    }

    /// Components `(b0, b1)` with `self = b0 + b1 j`.
    #[inline]
    pub fn split_right_j(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    #[inline]
    pub fn real_part(self) -> f64 {
        self.w
    }

    #[inline]
    pub fn imag_part(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn imag_norm(self) -> f64 {
        self.x.hypot(self.y.hypot(self.z))
    }

    #[inline]
    pub fn scale(self, r: f64) -> Self {
        Self::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }

    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Unit quaternion in the direction of `self`; `None` for zero.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    /// Projection onto the `{1, i}` plane.
    #[inline]
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.w, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Two quaternions are similar iff their real parts and norms agree.
    pub fn similar(self, other: Self, tol: f64) -> bool {
        let scale = 1f64.max(self.norm()).max(other.norm());
        (self.w - other.w).abs() <= tol * scale && (self.norm() - other.norm()).abs() <= tol * scale
    }

    /// The complex number `Re q + |Im q| i` in the similarity class of `q`.
    pub fn complex_representative(self) -> Complex64 {
        Complex64::new(self.w, self.imag_norm())
    }

    /// A unit `u` with `u q u^-1 = complex_representative(q)`.
    pub fn conjugator_to_complex(self) -> Self {
        let Some(n) = self.imag_part().normalized() else {
            return Self::ONE;
        };
        // u = normalize(1 - i n) rotates n onto i; it vanishes at n = -i, so on
        // that hemisphere rotate by j first (j n j^-1 flips the i-component).
        if n.x >= 0.0 {
            (Self::ONE - Self::I * n).normalized().unwrap_or(Self::ONE)
        } else {
            let flipped = Self::J * n * Self::J.conj();
            let u = (Self::ONE - Self::I * flipped).normalized().unwrap_or(Self::ONE);
            u * Self::J
        }
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl From<Complex64> for Quaternion {
    fn from(c: Complex64) -> Self {
        Self::from_complex(c)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: f64) -> Self {
        self.scale(r)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, r: f64) -> Self {
        self.scale(1.0 / r)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}
