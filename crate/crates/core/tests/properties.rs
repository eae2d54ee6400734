use proptest::prelude::*;

use quatmoeb::classify::classify;
use quatmoeb::moebius::{apply, compose_inversions, Generator, Inversion, Reflection};
use quatmoeb::qmat2::{qvec_norm, CMat4};
use quatmoeb::spectral::{fixed_points, right_eigenpairs};
use quatmoeb::zclass::z_class_of;
use quatmoeb::{BoundaryPoint, QMat2, Quaternion};

const TOL: f64 = 1e-9;

fn arb_quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn arb_unit() -> impl Strategy<Value = Quaternion> {
    arb_quat().prop_filter_map("zero quaternion", |q| q.normalized())
}

fn arb_qmat2() -> impl Strategy<Value = QMat2> {
    prop::array::uniform4(arb_quat()).prop_map(|[a, b, c, d]| QMat2::new(a, b, c, d))
}

fn arb_invertible() -> impl Strategy<Value = QMat2> {
    arb_qmat2().prop_filter("near-singular", |m| m.det_embedding() > 1e-3)
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / 1f64.max(x.abs()).max(y.abs())
}

fn close(x: BoundaryPoint, y: BoundaryPoint, tol: f64) -> bool {
    match (x, y) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => (p - q).norm() <= tol,
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
        _ => false,
    }
}

proptest! {
    #[test]
    fn norm_is_multiplicative(p in arb_quat(), q in arb_quat()) {
        prop_assert!(rel((p * q).norm(), p.norm() * q.norm()) <= 1e-12);
    }

    #[test]
    fn multiplication_is_associative(p in arb_quat(), q in arb_quat(), r in arb_quat()) {
        let err = ((p * q) * r - p * (q * r)).norm();
        prop_assert!(err <= 1e-12 * 1f64.max(p.norm() * q.norm() * r.norm()));
    }

    #[test]
    fn conjugates_are_similar(q in arb_quat(), v in arb_unit()) {
        prop_assert!(q.similar(v * q * v.conj(), 1e-10));
    }

    #[test]
    fn complex_representative_is_similar(q in arb_quat()) {
        prop_assert!(q.similar(Quaternion::from_complex(q.complex_representative()), 1e-12));
    }

    #[test]
    fn conjugator_lands_in_the_complex_plane(q in arb_quat()) {
        let u = q.conjugator_to_complex();
        let w = u * q * u.inverse().unwrap();
        let want = Quaternion::from_complex(q.complex_representative());
        prop_assert!((w - want).norm() <= 1e-12 * 1f64.max(q.norm()));
    }

    #[test]
    fn split_round_trip_is_exact(q in arb_quat()) {
        prop_assert_eq!(q.split().reassemble(), q);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in arb_qmat2(), b in arb_qmat2()) {
        let lhs = (a * b).embed();
        let rhs = a.embed().0 * b.embed().0;
        let err = CMat4(lhs.0 - rhs).frobenius_norm();
        prop_assert!(err <= 1e-12 * a.embed().frobenius_norm() * b.embed().frobenius_norm());
    }

    #[test]
    fn embedding_round_trips(a in arb_qmat2()) {
        prop_assert_eq!(a.embed().unembed(), a);
    }

    #[test]
    fn inverse_is_two_sided(a in arb_invertible()) {
        let inv = a.inverse(TOL).unwrap();
        let scale = a.frobenius_norm() * inv.frobenius_norm();
        prop_assert!((a * inv - QMat2::IDENTITY).frobenius_norm() <= 1e-12 * scale);
        prop_assert!((inv * a - QMat2::IDENTITY).frobenius_norm() <= 1e-12 * scale);
    }

    #[test]
    fn char_poly_is_conjugation_invariant(a in arb_invertible(), s in arb_invertible()) {
        let b = s.conjugate(&a, TOL).unwrap();
        let (ca, cb) = (a.char_poly(TOL).unwrap(), b.char_poly(TOL).unwrap());
        let norm = a.embed().frobenius_norm();
        let pairs = [(ca.a3, cb.a3, 1), (ca.a2, cb.a2, 2), (ca.a1, cb.a1, 3), (ca.a0, cb.a0, 4)];
        for (x, y, k) in pairs {
            prop_assert!((x - y).abs() <= 1e-8 * norm.powi(k), "{ca:?} vs {cb:?}");
        }
    }

    #[test]
    fn invariants_are_scale_free(a in arb_invertible(), lambda in 0.1..10.0f64) {
        let (ra, rb) = (classify(&a, TOL).unwrap(), classify(&a.scale(lambda), TOL).unwrap());
        prop_assert_eq!(ra.dtype, rb.dtype);
        prop_assert!(rel(ra.invariants.c1, rb.invariants.c1) <= 1e-9);
        prop_assert!(rel(ra.invariants.c2, rb.invariants.c2) <= 1e-9);
        prop_assert!(rel(ra.invariants.c3, rb.invariants.c3) <= 1e-9);
    }

    #[test]
    fn classification_and_z_class_are_conjugation_invariant(a in arb_invertible(), s in arb_invertible()) {
        let ra = classify(&a, TOL).unwrap();
        prop_assume!(!ra.borderline);
        let b = s.conjugate(&a, TOL).unwrap();
        let rb = classify(&b, TOL).unwrap();
        prop_assume!(!rb.borderline);
        prop_assert_eq!(ra.dtype, rb.dtype);
        prop_assert_eq!(z_class_of(&a, TOL).unwrap(), z_class_of(&b, TOL).unwrap());
    }

    #[test]
    fn eigenpairs_have_small_residuals(a in arb_invertible()) {
        for pair in right_eigenpairs(&a, TOL).unwrap() {
            prop_assert!(pair.residual(&a) <= 1e-8 * a.frobenius_norm() * qvec_norm(pair.v));
        }
    }

    #[test]
    fn eigenvalue_class_is_closed_under_similarity(a in arb_invertible(), q in arb_unit()) {
        for pair in right_eigenpairs(&a, TOL).unwrap() {
            let lambda = Quaternion::from_complex(pair.lambda);
            let w = [pair.v[0] * q, pair.v[1] * q];
            let mu = q.conj() * lambda * q;
            let [x, y] = a.mul_vec(w);
            let err = qvec_norm([x - w[0] * mu, y - w[1] * mu]);
            prop_assert!(err <= 1e-8 * a.frobenius_norm() * qvec_norm(w));
        }
    }

    #[test]
    fn fixed_points_are_fixed(a in arb_invertible()) {
        for p in fixed_points(&a, TOL).unwrap() {
            let scale = match p {
                BoundaryPoint::Finite(z) => 1.0 + z.norm_sqr(),
                BoundaryPoint::Infinity => 1.0,
            };
            prop_assert!(close(apply(&a, p, TOL), p, 1e-7 * scale), "{p:?}");
        }
    }

    #[test]
    fn action_is_a_homomorphism(a in arb_invertible(), b in arb_invertible(), z in arb_quat()) {
        let p = BoundaryPoint::Finite(z);
        let lhs = apply(&(a * b), p, TOL);
        let rhs = apply(&a, apply(&b, p, TOL), TOL);
        prop_assert!(close(lhs, rhs, 1e-8 * (1.0 + z.norm_sqr())), "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn action_is_projective(a in arb_invertible(), lambda in prop_oneof![-10.0..-0.1f64, 0.1..10.0f64], z in arb_quat()) {
        let p = BoundaryPoint::Finite(z);
        prop_assert!(close(apply(&a.scale(lambda), p, TOL), apply(&a, p, TOL), 1e-8 * (1.0 + z.norm_sqr())));
    }

    #[test]
    fn inversions_are_involutions(center in arb_quat(), radius in 0.5..2.0f64, z in arb_quat()) {
        let g = Inversion::new(center, radius).unwrap();
        let p = BoundaryPoint::Finite(z);
        prop_assert!(close(g.apply(g.apply(p, TOL), TOL), p, 1e-9 * (1.0 + z.norm_sqr())));
    }

    #[test]
    fn reflections_are_involutions(normal in arb_unit(), base in arb_quat(), z in arb_quat()) {
        let g = Reflection::new(normal, base, TOL).unwrap();
        let p = BoundaryPoint::Finite(z);
        prop_assert!(close(g.apply(g.apply(p, TOL), TOL), p, 1e-9 * (1.0 + z.norm_sqr())));
    }

    #[test]
    fn composed_generators_match_pointwise(
        c1 in arb_quat(), r1 in 0.5..2.0f64, normal in arb_unit(), base in arb_quat(), z in arb_quat(), inversion_first in any::<bool>(),
    ) {
        let f: Generator = Inversion::new(c1, r1).unwrap().into();
        let g: Generator = Reflection::new(normal, base, TOL).unwrap().into();
        let (first, second) = if inversion_first { (f, g) } else { (g, f) };
        let m = compose_inversions(&first, &second, TOL).unwrap();
        let p = BoundaryPoint::Finite(z);
        let lhs = apply(&m, p, TOL);
        let rhs = second.apply(first.apply(p, TOL), TOL);
        prop_assert!(close(lhs, rhs, 1e-8 * (1.0 + z.norm_sqr())), "{lhs:?} vs {rhs:?}");
    }
}
