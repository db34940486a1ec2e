mod common;

use common::{rel_frob, seed_and_dim};
use orbitgeo_core::curves::{covariant_derivative, geodesic_residual, SampledCurve};
use orbitgeo_core::linalg;
use orbitgeo_core::manifold::{
    curvature, distance, emi_check, exp_map, exp_map_alternate, geodesic, isometry_action, log_map, metric_at,
    norm_at, sectional, segal_check,
};
use orbitgeo_core::sampling::{self, trial_rng};
use orbitgeo_core::spectral::{matrix_function, MatrixFunction};
use orbitgeo_core::{Geodesic, PositivePoint, TangentVector, UnitizedOperator};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn geodesic_endpoints_and_reversal((seed, n) in seed_and_dim(), t in 0.0f64..1.0) {
        let mut rng = trial_rng(seed, 10, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        prop_assert!(rel_frob(&geodesic(&p, &q, 0.0).unwrap().realize(), &p.realize()) < 1e-10);
        prop_assert!(rel_frob(&geodesic(&p, &q, 1.0).unwrap().realize(), &q.realize()) < 1e-10);
        let fwd = geodesic(&p, &q, t).unwrap();
        let bwd = geodesic(&q, &p, 1.0 - t).unwrap();
        prop_assert!(rel_frob(&fwd.realize(), &bwd.realize()) < 1e-10);
        let expected = p.scalar().powf(1.0 - t) * q.scalar().powf(t);
        prop_assert!(rel(fwd.scalar(), expected) < 1e-12);
    }

    #[test]
    fn leaf_points_stay_on_leaf((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 11, 0);
        let p = sampling::leaf_point(&mut rng, n);
        let q = sampling::leaf_point(&mut rng, n);
        for k in 1..10 {
            prop_assert_eq!(geodesic(&p, &q, k as f64 / 10.0).unwrap().scalar(), 1.0);
        }
    }

    #[test]
    fn exp_log_invert_both_ways((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 12, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let v = log_map(&p, &q).unwrap();
        prop_assert!(rel_frob(&exp_map(&p, &v).unwrap().realize(), &q.realize()) < 1e-9);
        let w = sampling::tangent(&mut rng, &p, 1.0);
        let back = log_map(&p, &exp_map(&p, &w).unwrap()).unwrap();
        prop_assert!(rel_frob(&back.value().realize(), &w.value().realize()) < 1e-9);
        let (a, b) = exp_map_alternate(&p, &w).unwrap();
        let e = exp_map(&p, &w).unwrap().realize();
        prop_assert!(rel_frob(&a, &e) < 1e-10 && rel_frob(&b, &e) < 1e-10);
    }

    #[test]
    fn exp_along_scaled_log_is_geodesic((seed, n) in seed_and_dim(), t in 0.0f64..1.0) {
        let mut rng = trial_rng(seed, 13, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let v = log_map(&p, &q).unwrap().scale(t);
        prop_assert!(rel_frob(&exp_map(&p, &v).unwrap().realize(), &geodesic(&p, &q, t).unwrap().realize()) < 1e-9);
    }

    #[test]
    fn distance_is_a_metric((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 14, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let r = sampling::positive_point(&mut rng, n);
        let pq = distance(&p, &q).unwrap();
        prop_assert!(rel(pq, distance(&q, &p).unwrap()) < 1e-9);
        prop_assert!(distance(&p, &p).unwrap() < 1e-12);
        prop_assert!(pq <= distance(&p, &r).unwrap() + distance(&r, &q).unwrap() + 1e-9);
        let v = log_map(&p, &q).unwrap();
        prop_assert!(rel(norm_at(&p, &v).unwrap(), pq) < 1e-12);
    }

    #[test]
    fn congruence_is_an_isometry((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 15, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let g = sampling::invertible(&mut rng, n);
        let gp = isometry_action(&g, &p).unwrap();
        let gq = isometry_action(&g, &q).unwrap();
        prop_assert!(rel(distance(&gp, &gq).unwrap(), distance(&p, &q).unwrap()) < 1e-9);
    }

    #[test]
    fn curvature_symmetries_and_sign((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 16, 0);
        let p = sampling::positive_point(&mut rng, n);
        let [x, y, z, w] = [0, 1, 2, 3].map(|_| sampling::tangent(&mut rng, &p, 1.0));
        let rxy = curvature(&p, &x, &y, &z).unwrap();
        let ryx = curvature(&p, &y, &x, &z).unwrap();
        prop_assert!(linalg::max_abs(&(rxy.value() + ryx.value()).realize()) <= 1e-14);
        let a = metric_at(&p, &rxy, &w).unwrap();
        let b = metric_at(&p, &curvature(&p, &z, &w, &x).unwrap(), &y).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
        prop_assert_eq!(curvature(&p, &x, &x, &z).unwrap().value().norm2(), 0.0);
        let k = sectional(&p, &x, &y).unwrap();
        prop_assert!(k <= 1e-10);
        let k2 = sectional(&p, &x.scale(3.7), &y).unwrap();
        prop_assert!((k - k2).abs() < 1e-10 * k.abs().max(1.0));
    }

    #[test]
    fn emi_and_segal_hold((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 17, 0);
        let x = sampling::hermitian_op(&mut rng, n, 1.5);
        let y = sampling::hermitian_op(&mut rng, n, 1.5);
        let (l, r) = emi_check(&x, &y).unwrap();
        prop_assert!(l <= r + 1e-10);
        let (l, r) = segal_check(&x, &y).unwrap();
        prop_assert!(l <= r + 1e-10);
        // the emi right side is the distance between the exponentials
        let ex = PositivePoint::new(matrix_function(&x, MatrixFunction::Exp).unwrap()).unwrap();
        let ey = PositivePoint::new(matrix_function(&y, MatrixFunction::Exp).unwrap()).unwrap();
        let (_, rhs) = emi_check(&x, &y).unwrap();
        prop_assert!(rel(distance(&ex, &ey).unwrap(), rhs) < 1e-9);
    }

    #[test]
    fn emi_and_segal_equal_on_commuting_pairs((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 18, 0);
        let u = sampling::unitary(&mut rng, n);
        let diag = |rng: &mut rand_chacha::ChaCha8Rng| {
            let d: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(rng, -1.0..1.0)).collect();
            linalg::hermitian_part(&(&u * linalg::diag_real(&d) * u.adjoint()))
        };
        let x = UnitizedOperator::hermitian(0.3, diag(&mut rng)).unwrap();
        let y = UnitizedOperator::hermitian(-0.2, diag(&mut rng)).unwrap();
        let (l, r) = emi_check(&x, &y).unwrap();
        prop_assert!((l - r).abs() < 1e-10);
        let (l, r) = segal_check(&x, &y).unwrap();
        prop_assert!((l - r).abs() < 1e-10 * r.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn euler_residual_and_parallel_velocity((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 19, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let g = Geodesic::new(&p, &q).unwrap();
        let g2 = g.clone();
        let curve = SampledCurve::from_geodesic(g);
        let scale = p.value().norm2().max(q.value().norm2());
        for t in [0.25, 0.5, 0.75] {
            prop_assert!(geodesic_residual(&curve, t).unwrap() < 1e-5 * scale);
            let nabla = covariant_derivative(&curve, |s| g2.velocity(s), t).unwrap();
            prop_assert!(nabla.value().norm2() < 1e-6 * scale);
        }
    }

    #[test]
    fn metric_compatibility_along_random_curves((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 20, 0);
        let p = sampling::positive_point(&mut rng, n);
        let a = sampling::tangent(&mut rng, &p, 0.8);
        let b = sampling::tangent(&mut rng, &p, 0.5);
        let v0 = sampling::hermitian_op(&mut rng, n, 1.0);
        let v1 = sampling::hermitian_op(&mut rng, n, 1.0);
        let w0 = sampling::hermitian_op(&mut rng, n, 1.0);
        let w1 = sampling::hermitian_op(&mut rng, n, 1.0);
        let (pc, ac, bc) = (p.clone(), a.clone(), b.clone());
        // exp_p(tA + t^2 B): a smooth curve that is not a geodesic
        let curve = SampledCurve::new(move |t| {
            let v = TangentVector::new(&pc, &ac.value().scale_real(t) + &bc.value().scale_real(t * t))?;
            exp_map(&pc, &v)
        });
        let vf = |t: f64| Ok(&v0 + &v1.scale_real(t.sin()));
        let wf = |t: f64| Ok(&w0 + &w1.scale_real(t * t));
        let inner = |t: f64| {
            let g = curve.at(t).unwrap();
            metric_at(&g, &TangentVector::new(&g, vf(t).unwrap()).unwrap(), &TangentVector::new(&g, wf(t).unwrap()).unwrap()).unwrap()
        };
        for t in [0.3, 0.6] {
            let h = 1e-4;
            let lhs = (inner(t + h) - inner(t - h)) / (2.0 * h);
            let g = curve.at(t).unwrap();
            let v = TangentVector::new(&g, vf(t).unwrap()).unwrap();
            let w = TangentVector::new(&g, wf(t).unwrap()).unwrap();
            let rhs = metric_at(&g, &covariant_derivative(&curve, vf, t).unwrap(), &w).unwrap()
                + metric_at(&g, &v, &covariant_derivative(&curve, wf, t).unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-5 * lhs.abs().max(1.0), "{} vs {}", lhs, rhs);
        }
    }

    #[test]
    fn geodesic_beats_piecewise_competitors((seed, n) in seed_and_dim()) {
        let mut rng = trial_rng(seed, 21, 0);
        let p = sampling::positive_point(&mut rng, n);
        let q = sampling::positive_point(&mut rng, n);
        let len = SampledCurve::from_geodesic(Geodesic::new(&p, &q).unwrap()).length().unwrap();
        prop_assert!(rel(len, distance(&p, &q).unwrap()) < 1e-6);
        for k in 0..20 {
            let s = (k as f64 + 0.5) / 20.0;
            let mid = geodesic(&p, &q, s).unwrap();
            let size = 0.05 + 0.3 * rand::Rng::random::<f64>(&mut rng);
            let bump = sampling::tangent(&mut rng, &mid, size);
            let m = exp_map(&mid, &bump).unwrap();
            let competitor = distance(&p, &m).unwrap() + distance(&m, &q).unwrap();
            prop_assert!(len <= competitor + 1e-6);
        }
    }
}

#[test]
fn distance_reference_values() {
    let id = PositivePoint::identity(2);
    let e = PositivePoint::new(UnitizedOperator::hermitian(std::f64::consts::E, linalg::zeros(2)).unwrap()).unwrap();
    assert!((distance(&id, &e).unwrap() - 1.0).abs() < 1e-12);
    let q = PositivePoint::new(UnitizedOperator::hermitian(1.0, linalg::diag_real(&[3.0, 0.0])).unwrap()).unwrap();
    assert!((distance(&id, &q).unwrap() - 2.0 * 4f64.ln()).abs() < 1e-12);
    let mid = geodesic(&id, &q, 0.5).unwrap();
    assert!(linalg::max_abs(&(mid.realize() - linalg::diag_real(&[2.0, 1.0]))) < 1e-12);
}
