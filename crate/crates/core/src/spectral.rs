//! Right eigenvalues, boundary fixed points, an eigenvalue-based type oracle
//! and the constructive conjugacy normal form.
//!
//! A complex eigenvector `(z0, w0, z1, w1)` of `A_C` with eigenvalue `λ` gives
//! the quaternion vector `v = (z0 + j z1, w0 + j w1)` with `A v = v λ`. The
//! eigenvalues of `A_C` come in conjugate pairs, one pair per quaternion
//! similarity class of right eigenvalues.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::DynamicalType;
use crate::error::{Error, Result};
use crate::qmat2::{qvec_from_complex, qvec_norm, CMat4, QMat2, QVec2};
use crate::quat::Quaternion;

/// Relative tolerance for deciding that two computed eigenvalues coincide.
///
/// Eigenvalues of a defective matrix move like the square root of a
/// perturbation, so clustering is done at `sqrt(tol)` while rank and residual
/// decisions stay at `tol`.
pub fn cluster_tol(tol: f64) -> f64 {
    tol.sqrt()
}

fn is_real_angle(theta: f64, tol: f64) -> bool {
    theta <= tol || PI - theta <= tol
}

/// Modulus and argument in `[0, π]` of an upper-half-plane representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarClass {
    pub r: f64,
    pub theta: f64,
}

impl PolarClass {
    pub fn of(lambda: Complex64) -> Self {
        Self { r: lambda.norm(), theta: lambda.im.abs().atan2(lambda.re) }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

fn upper(z: Complex64) -> Complex64 {
    Complex64::new(z.re, z.im.abs())
}

/// The four eigenvalues of a complex 4×4 matrix via complex Schur.
///
/// QR can stagnate on nearly scalar matrices at the tightest deflation
/// threshold, so it is relaxed a few times before giving up.
pub fn eigenvalues(m: &CMat4) -> Result<[Complex64; 4]> {
    let schur = [1.0, 16.0, 256.0, 4096.0]
        .into_iter()
        .find_map(|k| m.0.try_schur(k * f64::EPSILON, 10_000))
        .ok_or_else(|| Error::DegenerateReduction("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok([t[(0, 0)], t[(1, 1)], t[(2, 2)], t[(3, 3)]])
}

/// Groups the eigenvalues of `A_C` into two quaternion similarity classes,
/// each represented by its upper-half-plane value, ordered by modulus and then
/// by angle.
pub fn similarity_classes(eigs: &[Complex64; 4], tol: f64) -> [Complex64; 2] {
    let u = eigs.map(upper);
    let pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let ((p, q), (r, s)) = pairings
        .into_iter()
        .min_by(|x, y| {
            let cost = |((a, b), (c, d)): ((usize, usize), (usize, usize))| (u[a] - u[b]).norm() + (u[c] - u[d]).norm();
            cost(*x).total_cmp(&cost(*y))
        })
        .unwrap();
    let first = (u[p] + u[q]) / 2.0;
    let second = (u[r] + u[s]) / 2.0;
    let mut classes = [first, second];
    if class_order_swapped(classes[0], classes[1], tol) {
        classes.swap(0, 1);
    }
    classes
}

/// True when `(a, b)` should be emitted as `(b, a)`: moduli ascending, then angles.
fn class_order_swapped(a: Complex64, b: Complex64, tol: f64) -> bool {
    let (pa, pb) = (PolarClass::of(a), PolarClass::of(b));
    let scale = pa.r.max(pb.r);
    if (pa.r - pb.r).abs() > tol * scale {
        pa.r > pb.r
    } else {
        pa.theta > pb.theta
    }
}

fn same_class(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm())
}

type ShiftedSvd = Vec<(f64, Vector4<Complex64>)>;

/// Singular values (descending) and matching right singular vectors of `A_C - λ I`.
fn shifted_svd(m: &CMat4, lambda: Complex64) -> ShiftedSvd {
    let shifted = m.0 - Matrix4::<Complex64>::identity() * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut out: Vec<(f64, Vector4<Complex64>)> = (0..4).map(|k| (svd.singular_values[k], v_t.row(k).adjoint().into_owned())).collect();
    out.sort_by(|x, y| y.0.total_cmp(&x.0));
    out
}

/// Number of singular values of `A_C - λ I` at or below `tol * ‖A_C‖_F`.
pub fn nullity(m: &CMat4, lambda: Complex64, tol: f64) -> usize {
    let threshold = tol * m.frobenius_norm();
    shifted_svd(m, lambda).iter().filter(|(s, _)| *s <= threshold).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RightEigenPair {
    pub lambda: Complex64,
    pub v: QVec2,
}

impl RightEigenPair {
    /// `‖A v - v λ‖ / (‖A‖ ‖v‖)`.
    pub fn residual(&self, a: &QMat2) -> f64 {
        let lam = Quaternion::from_complex(self.lambda);
        let av = a.mul_vec(self.v);
        let diff = [av[0] - self.v[0] * lam, av[1] - self.v[1] * lam];
        qvec_norm(diff) / (a.frobenius_norm() * qvec_norm(self.v))
    }
}

fn normalize_qvec(v: QVec2) -> QVec2 {
    let n = qvec_norm(v);
    [v[0].scale(1.0 / n), v[1].scale(1.0 / n)]
}

fn independent(u: QVec2, v: QVec2, tol: f64) -> bool {
    QMat2::from_columns(u, v).det_embedding() > tol
}

/// Right eigenpairs grouped by similarity class.
///
/// For each class, eigenvectors spanning its quaternionic eigenspace are
/// returned (one for a simple class, two when the class fills ℍ², as for
/// scalar matrices or `diag(i, j)`).
pub fn right_eigenpairs(a: &QMat2, tol: f64) -> Result<Vec<RightEigenPair>> {
    a.check_invertible(tol)?;
    let m = a.embed();
    let eigs = eigenvalues(&m)?;
    let classes = similarity_classes(&eigs, tol);
    let ctol = cluster_tol(tol);

    let with_real = |lam: Complex64| -> Vec<Complex64> {
        if is_real_angle(PolarClass::of(lam).theta, ctol) {
            vec![Complex64::new(lam.re, 0.0), lam]
        } else {
            vec![lam]
        }
    };
    let groups: Vec<Vec<Complex64>> = if same_class(classes[0], classes[1], ctol) {
        let mut g = with_real((classes[0] + classes[1]) / 2.0);
        g.extend([classes[0], classes[1]]);
        vec![g]
    } else {
        vec![with_real(classes[0]), with_real(classes[1])]
    };

    let threshold = tol * m.frobenius_norm();
    let mut pairs = Vec::new();
    for candidates in groups {
        // Near a defective class every λ within sqrt(eps) has a tiny smallest
        // singular value, so candidates are tried in order of preference (the
        // snapped cluster mean first) and the first genuine one wins.
        let scored: Vec<(Complex64, ShiftedSvd)> = candidates.iter().map(|&lam| (lam, shifted_svd(&m, lam))).collect();
        let (lambda, svd) = scored
            .iter()
            .find(|(_, svd)| svd[3].0 <= threshold)
            .or_else(|| scored.iter().min_by(|x, y| x.1[3].0.total_cmp(&y.1[3].0)))
            .cloned()
            .unwrap();

        let real = is_real_angle(PolarClass::of(lambda).theta, ctol);
        let min_null = if real { 2 } else { 1 };
        let null = svd.iter().filter(|(s, _)| *s <= threshold).count().max(min_null);

        let mut accepted: Vec<QVec2> = Vec::new();
        if null == 4 {
            accepted.push([Quaternion::ONE, Quaternion::ZERO]);
            accepted.push([Quaternion::ZERO, Quaternion::ONE]);
        } else {
            for (_, x) in svd.iter().rev().take(null) {
                let v = normalize_qvec(qvec_from_complex(x));
                if accepted.len() < 2 && accepted.iter().all(|&u| independent(u, v, ctol)) {
                    accepted.push(v);
                }
            }
        }
        pairs.extend(accepted.into_iter().map(|v| RightEigenPair { lambda, v }));
    }
    Ok(pairs)
}

/// A point of the boundary sphere `ℍ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(Quaternion),
    Infinity,
}

impl BoundaryPoint {
    /// The point `[u : w]` of the projective line, i.e. `u w^-1`, or `∞` when
    /// `w` is negligible against `(u, w)`.
    pub fn from_homogeneous(u: Quaternion, w: Quaternion, tol: f64) -> Self {
        let n = qvec_norm([u, w]);
        if w.norm() > tol * n {
            match w.inverse() {
                Ok(winv) => Self::Finite(u * winv),
                Err(_) => Self::Infinity,
            }
        } else {
            Self::Infinity
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// Distance on the chart containing both points; `∞` only matches `∞`.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Self::Infinity, Self::Infinity) => true,
            (Self::Finite(p), Self::Finite(q)) => (*p - *q).norm() <= tol * 1f64.max(p.norm()).max(q.norm()),
            _ => false,
        }
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(q) => q.serialize(s),
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(Quaternion),
            Symbol(String),
        }
        match Repr::deserialize(d)? {
            Repr::Finite(q) => Ok(Self::Finite(q)),
            Repr::Symbol(s) if s == "inf" => Ok(Self::Infinity),
            Repr::Symbol(s) => Err(serde::de::Error::custom(format!("expected [w,x,y,z] or \"inf\", got {s:?}"))),
        }
    }
}

/// Fixed points on `ℍ ∪ {∞}`, one per returned eigenvector, deduplicated.
///
/// When the fixed set is not discrete (scalar matrices, or a 1-rotatory
/// elliptic with its fixed 2-sphere) this returns the points coming from an
/// eigenvector basis.
pub fn fixed_points(a: &QMat2, tol: f64) -> Result<Vec<BoundaryPoint>> {
    let mut out: Vec<BoundaryPoint> = Vec::new();
    for pair in right_eigenpairs(a, tol)? {
        let p = BoundaryPoint::from_homogeneous(pair.v[0], pair.v[1], tol);
        if !out.iter().any(|q| q.close_to(&p, cluster_tol(tol))) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Dynamical type read off the right-eigenvalue structure alone, without the
/// characteristic-polynomial invariants.
pub fn eigen_structure_oracle(a: &QMat2, tol: f64) -> Result<DynamicalType> {
    a.check_invertible(tol)?;
    let m = a.embed();
    let eigs = eigenvalues(&m)?;
    let [first, second] = similarity_classes(&eigs, tol);
    let ctol = cluster_tol(tol);
    let (p, q) = (PolarClass::of(first), PolarClass::of(second));

    let same_modulus = (p.r - q.r).abs() <= ctol * p.r.max(q.r);
    let same_angle = (p.theta - q.theta).abs() <= ctol;
    let real = is_real_angle(p.theta, ctol) && is_real_angle(q.theta, ctol);

    let dtype = match (same_modulus, same_angle) {
        (false, true) if real => DynamicalType::Stretch,
        (false, true) => DynamicalType::OneRotatoryHyperbolic,
        (false, false) => DynamicalType::TwoRotatoryHyperbolic,
        (true, false) => DynamicalType::TwoRotatoryElliptic,
        (true, true) => {
            let lambda = (first + second) / 2.0;
            let null = nullity(&m, lambda, tol);
            let diagonalizable = if real { null >= 3 } else { null >= 2 };
            match (diagonalizable, real) {
                (true, true) => DynamicalType::Identity,
                (true, false) => DynamicalType::OneRotatoryElliptic,
                (false, true) => DynamicalType::Translation,
                (false, false) => DynamicalType::OneRotatoryParabolic,
            }
        }
    };
    Ok(dtype)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormalFormKind {
    /// `[[λ, 1], [0, λ]]`
    #[serde(rename = "T")]
    T,
    /// `diag(r e^{iθ}, r e^{iφ})`
    #[serde(rename = "D_equal_modulus")]
    DEqualModulus,
    /// `diag(r e^{iθ}, s e^{iφ})`, `r < s`
    #[serde(rename = "D_distinct_modulus")]
    DDistinctModulus,
}

/// A conjugacy representative with a conjugator `S`: `S A S^-1 = canonical`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub canonical: QMat2,
    pub conjugator: QMat2,
    /// `‖S A S^-1 - canonical‖_F / ‖A‖_F`.
    pub residual: f64,
}

impl NormalForm {
    /// The two diagonal entries of the canonical matrix as complex numbers.
    pub fn diagonal(&self) -> [Complex64; 2] {
        [self.canonical.a.to_complex(), self.canonical.d.to_complex()]
    }

    pub fn polar(&self) -> [PolarClass; 2] {
        self.diagonal().map(PolarClass::of)
    }

    pub fn is_triangular(&self) -> bool {
        self.kind == NormalFormKind::T
    }
}

/// Working state of the reduction: `current = S A S^-1`.
#[derive(Clone, Copy)]
struct Reduction {
    source: QMat2,
    s: QMat2,
    current: QMat2,
    tol: f64,
}

impl Reduction {
    fn conjugate_by(&mut self, x: QMat2) -> Result<()> {
        self.current = x.conjugate(&self.current, self.tol)?;
        self.s = x * self.s;
        Ok(())
    }

    fn finish(self, kind: NormalFormKind, canonical: QMat2) -> Result<NormalForm> {
        let norm = self.source.frobenius_norm();
        let sinv = self.s.inverse(self.tol)?;
        let residual = (self.s * self.source * sinv - canonical).frobenius_norm() / norm;
        Ok(NormalForm { kind, canonical, conjugator: self.s, residual })
    }
}

fn c2q(z: Complex64) -> Quaternion {
    Quaternion::from_complex(z)
}

fn translation(z: Quaternion) -> QMat2 {
    QMat2::upper(Quaternion::ONE, -z, Quaternion::ONE)
}

/// Constructive reduction to `T_{r,θ}`, `D_{r,θ,φ}` or `D_{r,s,θ,φ}`.
///
/// 1. Move a right eigenvector to the first basis vector, making the matrix
///    upper triangular.
/// 2. Conjugate each diagonal entry into the closed upper half of ℂ with
///    `diag(u, w)`; this already lands the angles in `[0, π]`.
/// 3. Remove the off-diagonal entry with a translation `Z ↦ Z - Z0` solving
///    `α Z0 - Z0 δ = -β`, or, when the diagonal entries coincide, strip its
///    `j`-part and rescale what is left to `1`.
pub fn normal_form(a: &QMat2, tol: f64) -> Result<NormalForm> {
    let pairs = right_eigenpairs(a, tol)?;
    let v = pairs[0].v;
    let p = if v[0].norm() >= v[1].norm() {
        QMat2::from_columns(v, [Quaternion::ZERO, Quaternion::ONE])
    } else {
        QMat2::from_columns(v, [Quaternion::ONE, Quaternion::ZERO])
    };
    let s = p.inverse(tol)?;
    let mut red = Reduction { source: *a, s, current: s * *a * p, tol };

    let rotate = QMat2::diag(red.current.a.conjugator_to_complex(), red.current.d.conjugator_to_complex());
    red.conjugate_by(rotate)?;
    let alpha = red.current.a.complex_representative();
    let delta = red.current.d.complex_representative();
    let scale = alpha.norm().max(delta.norm());
    let gate = cluster_tol(tol);

    if same_class(alpha, delta, cluster_tol(tol)) {
        let nf = reduce_equal(red, alpha, scale)?;
        if nf.residual <= 10.0 * tol || (alpha - delta).norm() <= tol * scale {
            return Ok(nf);
        }
    }
    let nf = reduce_distinct(red, alpha, delta)?;
    if !(nf.residual <= gate) {
        return Err(Error::DegenerateReduction(format!("normal-form residual {:e} exceeds {:e}", nf.residual, gate)));
    }
    Ok(nf)
}

fn reduce_equal(mut red: Reduction, alpha: Complex64, scale: f64) -> Result<NormalForm> {
    let tol = red.tol;
    let real = is_real_angle(PolarClass::of(alpha).theta, cluster_tol(tol));
    let lambda = if real { Complex64::new(alpha.re, 0.0) } else { alpha };
    let diag = QMat2::diag(c2q(lambda), c2q(lambda));

    if real {
        let beta = red.current.b;
        if beta.norm() <= tol * scale {
            return red.finish(NormalFormKind::DEqualModulus, diag);
        }
        red.conjugate_by(QMat2::diag(beta.inverse()?, Quaternion::ONE))?;
    } else {
        let (_, b1) = red.current.b.split_right_j();
        let z1 = -b1 / (alpha - alpha.conj());
        red.conjugate_by(translation(Quaternion::from_right_j(Complex64::new(0.0, 0.0), z1)))?;
        let b0 = red.current.b.to_complex();
        if b0.norm() <= tol * scale {
            return red.finish(NormalFormKind::DEqualModulus, diag);
        }
        red.conjugate_by(QMat2::diag(c2q(b0.inv()), Quaternion::ONE))?;
    }
    let t = QMat2::upper(c2q(lambda), Quaternion::ONE, c2q(lambda));
    red.finish(NormalFormKind::T, t)
}

fn reduce_distinct(mut red: Reduction, alpha: Complex64, delta: Complex64) -> Result<NormalForm> {
    let tol = red.tol;
    let scale = alpha.norm().max(delta.norm());
    let (b0, b1) = red.current.b.split_right_j();
    let d0 = alpha - delta;
    let d1 = alpha - delta.conj();
    let tiny = f64::EPSILON * scale;
    let z0 = if b0.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else if d0.norm() > tiny {
        -b0 / d0
    } else {
        return Err(Error::DegenerateReduction("diagonal entries coincide in the distinct-eigenvalue branch".into()));
    };
    let z1 = if b1.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else if d1.norm() > tiny {
        -b1 / d1
    } else {
        return Err(Error::DegenerateReduction("conjugate diagonal entries coincide in the distinct-eigenvalue branch".into()));
    };
    red.conjugate_by(translation(Quaternion::from_right_j(z0, z1)))?;

    let (mut first, mut second) = (alpha, delta);
    if class_order_swapped(first, second, tol) {
        let swap = QMat2::new(Quaternion::ZERO, Quaternion::ONE, Quaternion::ONE, Quaternion::ZERO);
        red.conjugate_by(swap)?;
        std::mem::swap(&mut first, &mut second);
    }
    let (p, q) = (PolarClass::of(first), PolarClass::of(second));
    let kind = if (p.r - q.r).abs() <= tol * p.r.max(q.r) { NormalFormKind::DEqualModulus } else { NormalFormKind::DDistinctModulus };
    red.finish(kind, QMat2::diag(c2q(first), c2q(second)))
}
