//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use quatmoeb::classify::{classify, invariants, min_poly_equals_char_poly};
use quatmoeb::moebius::{apply, compose_inversions, Generator, Inversion};
use quatmoeb::qmat2::CMat4;
use quatmoeb::sample::{self, check_oracle};
use quatmoeb::spectral::{fixed_points, normal_form, NormalFormKind};
use quatmoeb::zclass::{in_centralizer, sample_centralizer, z_class_of, ZClassType};
use quatmoeb::{BoundaryPoint, DynamicalType, QMat2, Quaternion};
use rand::Rng;

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn polar(r: f64, theta: f64) -> Quaternion {
    Quaternion::from_polar(r, theta)
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / 1f64.max(x.abs()).max(y.abs())
}

/// `(c1, c2, c3)` of `diag(r e^{iθ}, s e^{iφ})` from the closed forms; the
/// parabolic `T` form shares the invariants of its diagonal.
fn closed_form(r: f64, theta: f64, s: f64, phi: f64) -> [f64; 3] {
    let rs = r * s;
    [
        (r * phi.cos() + s * theta.cos()).powi(2) / rs,
        (r * r + s * s + 4.0 * rs * theta.cos() * phi.cos()) / rs,
        (r * theta.cos() + s * phi.cos()).powi(2) / rs,
    ]
}

struct Golden {
    name: &'static str,
    matrix: QMat2,
    dtype: DynamicalType,
    zclass: ZClassType,
    params: (f64, f64, f64, f64),
}

fn golden() -> Vec<Golden> {
    let one = Quaternion::ONE;
    let l = polar(1.0, PI / 3.0);
    vec![
        Golden {
            name: "identity",
            matrix: QMat2::IDENTITY,
            dtype: DynamicalType::Identity,
            zclass: ZClassType::Scalar,
            params: (1.0, 0.0, 1.0, 0.0),
        },
        Golden {
            name: "[[1,1],[0,1]]",
            matrix: QMat2::upper(one, one, one),
            dtype: DynamicalType::Translation,
            zclass: ZClassType::RealParabolic,
            params: (1.0, 0.0, 1.0, 0.0),
        },
        Golden {
            name: "diag(2,1)",
            matrix: QMat2::diag(Quaternion::real(2.0), one),
            dtype: DynamicalType::Stretch,
            zclass: ZClassType::RealDiagDistinct,
            params: (2.0, 0.0, 1.0, 0.0),
        },
        Golden {
            name: "diag(2i,1)",
            matrix: QMat2::diag(polar(2.0, PI / 2.0), one),
            dtype: DynamicalType::TwoRotatoryHyperbolic,
            zclass: ZClassType::MixedDiag,
            params: (2.0, PI / 2.0, 1.0, 0.0),
        },
        Golden {
            name: "diag(e^{iπ/2},e^{iπ/3})",
            matrix: QMat2::diag(polar(1.0, PI / 2.0), l),
            dtype: DynamicalType::TwoRotatoryElliptic,
            zclass: ZClassType::ComplexDiagDistinct,
            params: (1.0, PI / 2.0, 1.0, PI / 3.0),
        },
        Golden {
            name: "diag(2e^{iπ/3},e^{iπ/3})",
            matrix: QMat2::diag(polar(2.0, PI / 3.0), l),
            dtype: DynamicalType::OneRotatoryHyperbolic,
            zclass: ZClassType::ComplexDiagDistinct,
            params: (2.0, PI / 3.0, 1.0, PI / 3.0),
        },
        Golden {
            name: "diag(e^{iπ/3},e^{iπ/3})",
            matrix: QMat2::diag(l, l),
            dtype: DynamicalType::OneRotatoryElliptic,
            zclass: ZClassType::ComplexScalar,
            params: (1.0, PI / 3.0, 1.0, PI / 3.0),
        },
        Golden {
            name: "[[e^{iπ/3},1],[0,e^{iπ/3}]]",
            matrix: QMat2::upper(l, one, l),
            dtype: DynamicalType::OneRotatoryParabolic,
            zclass: ZClassType::ComplexParabolic,
            params: (1.0, PI / 3.0, 1.0, PI / 3.0),
        },
    ]
}

fn criterion_1() -> Outcome {
    let mut worst = 0f64;
    for g in golden() {
        let report = classify(&g.matrix, TOL).map_err(|e| format!("{}: {e}", g.name))?;
        if report.dtype != g.dtype {
            return Err(format!("{}: got {}, want {}", g.name, report.dtype, g.dtype));
        }
        let (r, theta, s, phi) = g.params;
        let want = closed_form(r, theta, s, phi);
        let got = [report.invariants.c1, report.invariants.c2, report.invariants.c3];
        for (x, y) in got.iter().zip(want) {
            let e = rel(*x, y);
            worst = worst.max(e);
            if e > 1e-9 {
                return Err(format!("{}: invariants {got:?}, closed form {want:?}", g.name));
            }
        }
    }
    Ok(format!("8/8 types match, worst invariant error {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let check = check_oracle(10_000, 2, TOL);
    if check.disagreements.is_empty() {
        Ok(format!("{}/{} agree", check.agree, check.total))
    } else {
        Err(format!("{}/{} agree, first disagreement {:?}", check.agree, check.total, check.disagreements[0]))
    }
}

fn criterion_3() -> Outcome {
    let mut rng = sample::rng(3);
    let mut worst = 0f64;
    for k in 0..5_000 {
        let (a, ra) = sample::well_posed(&mut rng, TOL);
        let s = sample::invertible(&mut rng);
        let b = s.conjugate(&a, TOL).map_err(|e| format!("pair {k}: {e}"))?;
        let rb = classify(&b, TOL).map_err(|e| format!("pair {k}: {e}"))?;
        if ra.dtype != rb.dtype {
            return Err(format!("pair {k}: dtype {} vs {}", ra.dtype, rb.dtype));
        }
        let (za, zb) = (z_class_of(&a, TOL), z_class_of(&b, TOL));
        match (za, zb) {
            (Ok(x), Ok(y)) if x == y => {}
            other => return Err(format!("pair {k}: z-class {other:?}")),
        }
        let (ia, ib) = (ra.invariants, rb.invariants);
        for (x, y) in [(ia.c1, ib.c1), (ia.c2, ib.c2), (ia.c3, ib.c3)] {
            let e = rel(x, y);
            worst = worst.max(e);
            if e > 1e-7 {
                return Err(format!("pair {k}: invariants {ia:?} vs {ib:?}"));
            }
        }
    }
    Ok(format!("5000 pairs invariant, worst invariant error {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = sample::rng(4);
    let mut worst = 0f64;
    let mut min_a0 = f64::INFINITY;
    for k in 0..100_000 {
        let m = sample::invertible(&mut rng).embed();
        let raw = m.char_poly_raw();
        let scale = 1f64.max(m.frobenius_norm());
        for (deg, p) in raw.iter().enumerate() {
            worst = worst.max(p.im.abs() / scale.powi(deg as i32));
        }
        let a0 = raw[4].re;
        min_a0 = min_a0.min(a0);
        if a0.is_nan() || a0 <= 0.0 {
            return Err(format!("matrix {k}: a0 = {a0:e}"));
        }
    }
    if worst > 1e-10 {
        return Err(format!("max |Im| / scale = {worst:e}"));
    }
    Ok(format!("max |Im| / scale^k = {worst:.1e}, min a0 = {min_a0:.1e}"))
}

fn shape_ok(canonical: &QMat2, kind: NormalFormKind) -> Result<(), String> {
    let complex = |q: Quaternion| q.y == 0.0 && q.z == 0.0;
    let angle_ok = |q: Quaternion| q.x >= 0.0;
    let (p, q) = (canonical.a, canonical.d);
    if !(complex(p) && complex(q) && angle_ok(p) && angle_ok(q) && canonical.c == Quaternion::ZERO) {
        return Err(format!("not an upper-half-plane triangular form: {canonical:?}"));
    }
    match kind {
        NormalFormKind::T => {
            if canonical.b != Quaternion::ONE || p != q {
                return Err(format!("malformed T form {canonical:?}"));
            }
        }
        NormalFormKind::DEqualModulus | NormalFormKind::DDistinctModulus => {
            if canonical.b != Quaternion::ZERO {
                return Err(format!("malformed D form {canonical:?}"));
            }
            let (r, s) = (p.norm(), q.norm());
            let equal = (r - s).abs() <= TOL * r.max(s);
            if equal != (kind == NormalFormKind::DEqualModulus) || (!equal && r > s) {
                return Err(format!("moduli {r} {s} inconsistent with {kind:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = sample::rng(5);
    let mut worst = 0f64;
    for k in 0..10_000 {
        let a = sample::invertible(&mut rng);
        let nf = normal_form(&a, TOL).map_err(|e| format!("matrix {k}: {e}"))?;
        let s_inv = nf.conjugator.inverse(TOL).map_err(|e| format!("matrix {k}: {e}"))?;
        let err = (nf.conjugator * a * s_inv - nf.canonical).frobenius_norm() / a.frobenius_norm();
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("matrix {k}: reconstruction error {err:e} for {a:?}"));
        }
        shape_ok(&nf.canonical, nf.kind).map_err(|e| format!("matrix {k}: {e}"))?;
    }
    Ok(format!("10000 forms, worst ‖SAS⁻¹ − N‖/‖A‖ = {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = sample::rng(6);
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let (a, b) = (sample::qmat2(&mut rng), sample::qmat2(&mut rng));
        let lhs = (a * b).embed();
        let rhs = CMat4(a.embed().0 * b.embed().0);
        let err = CMat4(lhs.0 - rhs.0).frobenius_norm() / (a.embed().frobenius_norm() * b.embed().frobenius_norm());
        worst = worst.max(err);
    }
    if worst > 1e-12 {
        return Err(format!("worst relative error {worst:e}"));
    }
    Ok(format!("10000 pairs, worst relative error {worst:.1e}"))
}

fn point_error(x: BoundaryPoint, y: BoundaryPoint) -> f64 {
    match (x, y) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => (p - q).norm(),
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

fn random_point<R: Rng>(rng: &mut R) -> (Quaternion, BoundaryPoint) {
    let z = sample::quaternion(rng);
    (z, BoundaryPoint::Finite(z))
}

fn random_inversion<R: Rng>(rng: &mut R) -> Generator {
    Inversion::new(sample::quaternion(rng), rng.random_range(0.5..=2.0)).unwrap().into()
}

fn criterion_7() -> Outcome {
    let mut rng = sample::rng(7);
    let n = 1_000;
    let mut worst = [0f64; 4];

    for k in 0..n {
        let (a, b) = (sample::invertible(&mut rng), sample::invertible(&mut rng));
        let (z, p) = random_point(&mut rng);
        let e = point_error(apply(&(a * b), p, TOL), apply(&a, apply(&b, p, TOL), TOL)) / (1.0 + z.norm_sqr());
        worst[0] = worst[0].max(e);
        if e > 1e-8 {
            return Err(format!("homomorphism instance {k}: error {e:e}"));
        }
    }

    for k in 0..n {
        let g = random_inversion(&mut rng);
        let (z, p) = random_point(&mut rng);
        let e = point_error(g.apply(g.apply(p, TOL), TOL), p);
        worst[1] = worst[1].max(e / (1.0 + z.norm_sqr()));
        if e > 1e-9 * (1.0 + z.norm_sqr()) {
            return Err(format!("involution instance {k}: error {e:e}"));
        }
    }

    for k in 0..n {
        let (f, g) = (random_inversion(&mut rng), random_inversion(&mut rng));
        let m = compose_inversions(&f, &g, TOL).map_err(|e| format!("compose instance {k}: {e}"))?;
        let (z, p) = random_point(&mut rng);
        let e = point_error(apply(&m, p, TOL), g.apply(f.apply(p, TOL), TOL)) / (1.0 + z.norm_sqr());
        worst[2] = worst[2].max(e);
        if e > 1e-8 {
            return Err(format!("compose instance {k}: error {e:e}"));
        }
    }

    for k in 0..n {
        let a = sample::invertible(&mut rng);
        let fixed = fixed_points(&a, TOL).map_err(|e| format!("fixed-point instance {k}: {e}"))?;
        for p in fixed {
            let scale = match p {
                BoundaryPoint::Finite(q) => 1.0 + q.norm_sqr(),
                BoundaryPoint::Infinity => 1.0,
            };
            let e = point_error(apply(&a, p, TOL), p) / scale;
            worst[3] = worst[3].max(e);
            if e > 1e-7 {
                return Err(format!("fixed-point instance {k}: error {e:e} at {p:?}"));
            }
        }
    }
    Ok(format!(
        "1000 each: homomorphism {:.1e}, involution {:.1e}, composition {:.1e}, fixed points {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn criterion_8() -> Outcome {
    let mut seen = Vec::new();
    for zc in ZClassType::ALL {
        let rep = zc.representative();
        let got = z_class_of(&rep, TOL).map_err(|e| format!("{zc}: {e}"))?;
        if got != zc {
            return Err(format!("representative of {zc} classified as {got}"));
        }
        seen.push(got);
        for seed in 0..100 {
            let m = sample_centralizer(zc, seed);
            if !in_centralizer(&rep, &m, TOL) {
                return Err(format!("{zc} seed {seed}: sample does not commute"));
            }
        }
    }
    seen.sort();
    seen.dedup();
    if seen.len() != 7 {
        return Err(format!("{} distinct z-classes", seen.len()));
    }
    for g in golden() {
        let got = z_class_of(&g.matrix, TOL).map_err(|e| format!("{}: {e}", g.name))?;
        if got != g.zclass {
            return Err(format!("{} ({}): z-class {got}, want {}", g.name, g.dtype, g.zclass));
        }
    }
    Ok("7 distinct z-classes, 700 centralizer samples commute, dtype→z-class table holds".into())
}

fn criterion_9() -> Outcome {
    let one = Quaternion::ONE;
    for theta in [PI / 3.0, 2.0 * PI / 3.0] {
        let l = polar(1.0, theta);
        let d = QMat2::diag(l, l);
        let t = QMat2::upper(l, one, l);
        let (cd, ct) = (d.char_poly(TOL).map_err(|e| e.to_string())?, t.char_poly(TOL).map_err(|e| e.to_string())?);
        let (id, it) = (invariants(&cd).map_err(|e| e.to_string())?, invariants(&ct).map_err(|e| e.to_string())?);
        if rel(id.c1, it.c1) > 1e-12 || rel(id.c2, it.c2) > 1e-12 || rel(id.c3, it.c3) > 1e-12 {
            return Err(format!("θ = {theta}: invariants differ, {id:?} vs {it:?}"));
        }
        if min_poly_equals_char_poly(&d, &cd, &id, TOL) || !min_poly_equals_char_poly(&t, &ct, &it, TOL) {
            return Err(format!("θ = {theta}: annihilation test does not separate the pair"));
        }
        let (rd, rt) = (classify(&d, TOL).map_err(|e| e.to_string())?, classify(&t, TOL).map_err(|e| e.to_string())?);
        if rd.dtype != DynamicalType::OneRotatoryElliptic || rt.dtype != DynamicalType::OneRotatoryParabolic {
            return Err(format!("θ = {theta}: classified {} / {}", rd.dtype, rt.dtype));
        }
        if rd.minpoly_residual.is_none() || rt.minpoly_residual.is_none() {
            return Err(format!("θ = {theta}: decided outside the minimal-polynomial branch"));
        }
    }
    Ok("θ = π/3 and 2π/3 pairs share invariants and split on m1(A_C)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden table", criterion_1),
        ("oracle equivalence", criterion_2),
        ("conjugation invariance", criterion_3),
        ("reality and positivity", criterion_4),
        ("normal-form reconstruction", criterion_5),
        ("embedding homomorphism", criterion_6),
        ("Möbius consistency", criterion_7),
        ("seven z-classes", criterion_8),
        ("minimal-polynomial tiebreak", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
