//! Dynamical type of an isometry from the conjugacy invariants `c1, c2, c3`.
//!
//! With `χ(A_C) = x^4 - 2 a3 x^3 + a2 x^2 - 2 a1 x + a0`,
//!
//! ```text
//! c1 = a1^2 / (a0 sqrt(a0)),   c2 = a2 / sqrt(a0),   c3 = a3^2 / sqrt(a0).
//! ```
//!
//! All three are unchanged under `A ↦ λA`, so they are invariants of the
//! isometry rather than of the matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat2::{CharPolyCoeffs, QMat2, RealPoly};
use crate::spectral::{eigenvalues, similarity_classes, PolarClass};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Invariants {
    pub fn scale(&self) -> f64 {
        1f64.max(self.c1.abs()).max(self.c2.abs()).max(self.c3.abs())
    }
}

pub fn invariants(coeffs: &CharPolyCoeffs) -> Result<Invariants> {
    let CharPolyCoeffs { a0, a1, a2, a3 } = *coeffs;
    if !(a0 > 0.0) {
        return Err(Error::NonPositiveDeterminant { a0 });
    }
    let root = a0.sqrt();
    Ok(Invariants { c1: a1 * a1 / (a0 * root), c2: a2 / root, c3: a3 * a3 / root })
}

/// `(a1 / a0^{3/4}, a3 / a0^{1/4})`: square roots of `c1` and `c3` with their signs kept.
pub fn signed_invariants(coeffs: &CharPolyCoeffs) -> (f64, f64) {
    let q = coeffs.a0.sqrt().sqrt();
    (coeffs.a1 / (q * q * q), coeffs.a3 / q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicalType {
    TwoRotatoryHyperbolic,
    TwoRotatoryElliptic,
    OneRotatoryHyperbolic,
    Translation,
    Stretch,
    OneRotatoryElliptic,
    OneRotatoryParabolic,
    Identity,
}

impl DynamicalType {
    pub const ALL: [DynamicalType; 8] = [
        Self::TwoRotatoryHyperbolic,
        Self::TwoRotatoryElliptic,
        Self::OneRotatoryHyperbolic,
        Self::Translation,
        Self::Stretch,
        Self::OneRotatoryElliptic,
        Self::OneRotatoryParabolic,
        Self::Identity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TwoRotatoryHyperbolic => "two-rotatory-hyperbolic",
            Self::TwoRotatoryElliptic => "two-rotatory-elliptic",
            Self::OneRotatoryHyperbolic => "one-rotatory-hyperbolic",
            Self::Translation => "translation",
            Self::Stretch => "stretch",
            Self::OneRotatoryElliptic => "one-rotatory-elliptic",
            Self::OneRotatoryParabolic => "one-rotatory-parabolic",
            Self::Identity => "identity",
        }
    }

    fn uses_second_modulus(&self) -> bool {
        matches!(self, Self::TwoRotatoryHyperbolic | Self::OneRotatoryHyperbolic | Self::Stretch)
    }

    fn rotation_angles(&self) -> usize {
        match self {
            Self::TwoRotatoryHyperbolic | Self::TwoRotatoryElliptic => 2,
            Self::OneRotatoryHyperbolic | Self::OneRotatoryElliptic | Self::OneRotatoryParabolic => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for DynamicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Moduli and rotation angles (radians, in `[0, π]`) where meaningful.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IsometryParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

impl IsometryParams {
    fn from_classes(dtype: DynamicalType, p: PolarClass, q: PolarClass) -> Self {
        let mut out = Self { r: Some(p.r), ..Self::default() };
        if dtype.uses_second_modulus() {
            out.s = Some(q.r);
        } else {
            out.r = Some(0.5 * (p.r + q.r));
        }
        match dtype.rotation_angles() {
            2 => {
                out.theta = Some(p.theta);
                out.phi = Some(q.theta);
            }
            1 => out.theta = Some(0.5 * (p.theta + q.theta)),
            _ => {}
        }
        out
    }
}

/// Signed distances to the decision surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    /// `|c1 - c3|`
    pub c1_c3: f64,
    /// `|a1 / a0^{3/4} - a3 / a0^{1/4}|`; zero exactly when the two
    /// similarity classes share a modulus or an angle.
    pub signed_c1_c3: f64,
    /// `c2 - (c1 + 2)`
    pub c2_c1: f64,
    /// `c1 - 4`
    pub c1_4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "type")]
    pub dtype: DynamicalType,
    #[serde(flatten)]
    pub invariants: Invariants,
    pub params: IsometryParams,
    pub borderline: bool,
    pub margins: Margins,
    /// `‖m1(A_C)‖_F / ‖A_C‖_F^2` for the quadratic candidate minimal polynomial;
    /// only computed in the 1-rotatory elliptic/parabolic branch.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly_residual: Option<f64>,
}

impl ClassificationReport {
    /// Distance to the last decision surface consulted on the way to `dtype`.
    pub fn decisive_margin(&self) -> f64 {
        let m = &self.margins;
        let split = m.c1_c3.max(m.signed_c1_c3);
        match self.dtype {
            DynamicalType::TwoRotatoryHyperbolic => split,
            DynamicalType::TwoRotatoryElliptic | DynamicalType::OneRotatoryHyperbolic => m.c2_c1.abs(),
            DynamicalType::Stretch | DynamicalType::Identity | DynamicalType::Translation => m.c1_4.abs(),
            DynamicalType::OneRotatoryElliptic | DynamicalType::OneRotatoryParabolic => {
                m.c1_4.abs().min(self.minpoly_residual.unwrap_or(f64::INFINITY))
            }
        }
    }
}

/// Decades on either side of a threshold in which a decision is flagged as borderline.
const BORDER_FACTOR: f64 = 100.0;

fn near_threshold(margin: f64, band: f64) -> bool {
    let m = margin.abs();
    m > band / BORDER_FACTOR && m <= band * BORDER_FACTOR
}

/// The quadratic `x^2 - σ (a0 c1^2)^{1/4} x + sqrt(a0)`, `σ = sign(a3)`.
///
/// `(a0 c1^2)^{1/4}` equals `2 r |cos θ|`; the sign of `cos θ` is the sign of `a3 = 2 r cos θ`.
pub fn candidate_min_poly(coeffs: &CharPolyCoeffs, inv: &Invariants) -> RealPoly {
    let sigma = if coeffs.a3 < 0.0 { -1.0 } else { 1.0 };
    let linear = sigma * (coeffs.a0 * inv.c1 * inv.c1).sqrt().sqrt();
    RealPoly::from_descending(&[1.0, -linear, coeffs.a0.sqrt()])
}

pub fn min_poly_residual(a: &QMat2, coeffs: &CharPolyCoeffs, inv: &Invariants) -> f64 {
    a.embed().poly_residual(&candidate_min_poly(coeffs, inv))
}

/// In the branch `c1 = c3, c2 = c1 + 2, c1 < 4`: true when the characteristic
/// polynomial is also the minimal polynomial, i.e. the quadratic candidate
/// fails to annihilate `A_C`.
pub fn min_poly_equals_char_poly(a: &QMat2, coeffs: &CharPolyCoeffs, inv: &Invariants, tol: f64) -> bool {
    !a.embed().annihilates(&candidate_min_poly(coeffs, inv), tol)
}

pub fn classify(a: &QMat2, tol: f64) -> Result<ClassificationReport> {
    let coeffs = a.char_poly(tol)?;
    let inv = invariants(&coeffs)?;
    let (t1, t3) = signed_invariants(&coeffs);
    let band = tol * inv.scale();
    let margins =
        Margins { c1_c3: (inv.c1 - inv.c3).abs(), signed_c1_c3: (t1 - t3).abs(), c2_c1: inv.c2 - (inv.c1 + 2.0), c1_4: inv.c1 - 4.0 };

    let mut borderline = near_threshold(margins.c1_c3, band) || near_threshold(margins.signed_c1_c3, band);
    let mut minpoly_residual = None;

    // c1 = c3 also holds when a1 / a0^{3/4} = -a3 / a0^{1/4} (distinct moduli
    // with supplementary angles), so equality is tested on the signed roots.
    let dtype = if margins.c1_c3 > band || margins.signed_c1_c3 > band {
        DynamicalType::TwoRotatoryHyperbolic
    } else {
        borderline |= near_threshold(margins.c2_c1, band);
        if margins.c2_c1 < -band {
            DynamicalType::TwoRotatoryElliptic
        } else if margins.c2_c1 > band {
            DynamicalType::OneRotatoryHyperbolic
        } else {
            borderline |= near_threshold(margins.c1_4, band);
            if margins.c1_4 > band {
                DynamicalType::Stretch
            } else if margins.c1_4 >= -band {
                if a.is_real_scalar(tol) {
                    DynamicalType::Identity
                } else {
                    DynamicalType::Translation
                }
            } else {
                let residual = min_poly_residual(a, &coeffs, &inv);
                let limit = 3.0 * tol;
                borderline |= near_threshold(residual, limit);
                minpoly_residual = Some(residual);
                if residual > limit {
                    DynamicalType::OneRotatoryParabolic
                } else {
                    DynamicalType::OneRotatoryElliptic
                }
            }
        }
    };

    let params = eigenvalues(&a.embed())
        .map(|eigs| {
            let [p, q] = similarity_classes(&eigs, tol).map(PolarClass::of);
            IsometryParams::from_classes(dtype, p, q)
        })
        .unwrap_or_default();

    Ok(ClassificationReport { dtype, invariants: inv, params, borderline, margins, minpoly_residual })
}
