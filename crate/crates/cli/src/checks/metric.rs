use orbitgeo_core::algebra::inner2;
use orbitgeo_core::curves::{covariant_derivative, SampledCurve};
use orbitgeo_core::linalg::{self, C64};
use orbitgeo_core::manifold::{distance, exp_map, isometry_action, metric_at};
use orbitgeo_core::sampling;
use orbitgeo_core::spectral::{matrix_function, spectral, MatrixFunction};
use orbitgeo_core::{Result, TangentVector, UnitizedOperator};
use rand::Rng;

use super::{max_of, rel, rel_frob, Check, Ctx, Tolerance};
use crate::config::Suite;

fn random_op(rng: &mut impl Rng, n: usize) -> UnitizedOperator {
    let s = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let part = sampling::complex_gaussian(rng, n, n) * C64::new(0.3, 0.0);
    UnitizedOperator::new(s, part).expect("square")
}

fn trace_cyclicity(cx: &mut Ctx) -> Result<f64> {
    let rng = &mut cx.rng;
    let x = random_op(rng, cx.dim);
    let y = random_op(rng, cx.dim);
    let z = sampling::hermitian_op(rng, cx.dim, 1.0);
    let s1 = (x.norm2() * y.norm2()).powi(2).max(1.0);
    let l1 = inner2(&(&x * &y), &(&y.adjoint() * &x.adjoint()))?;
    let r1 = inner2(&(&y * &x), &(&x.adjoint() * &y.adjoint()))?;
    let s2 = (x.norm2() * y.norm2() * z.norm2() * z.norm2()).max(1.0);
    let l2 = inner2(&(&z * &x), &(&y * &z))?;
    let r2 = inner2(&(&x * &z), &(&z * &y))?;
    Ok(((l1 - r1).norm() / s1).max((l2 - r2).norm() / s2))
}

// r(x) / |x|_2 - 1, at most zero up to rounding
fn spectral_radius(cx: &mut Ctx) -> Result<f64> {
    let size = cx.rng.random_range(0.1..10.0);
    let h = sampling::hermitian(&mut cx.rng, cx.dim) * C64::new(size, 0.0);
    let x = UnitizedOperator::hermitian(0.0, linalg::hermitian_part(&h))?;
    Ok(spectral(&x)?.spectral_radius() / x.norm2() - 1.0)
}

fn opnorm_submultiplicative(cx: &mut Ctx) -> Result<f64> {
    let x = sampling::complex_gaussian(&mut cx.rng, cx.dim, cx.dim);
    let y = sampling::complex_gaussian(&mut cx.rng, cx.dim, cx.dim);
    Ok(linalg::op_norm(&(&x * &y)) / (linalg::hs_norm(&x) * linalg::hs_norm(&y)) - 1.0)
}

fn functional_equations(cx: &mut Ctx) -> Result<f64> {
    let t1 = cx.rng.random_range(-2.0..2.0);
    let t2 = cx.rng.random_range(-2.0..2.0);
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let p = p.value();
    let pr = p.realize();
    let back = matrix_function(&matrix_function(p, MatrixFunction::Log)?, MatrixFunction::Exp)?;
    let s = matrix_function(p, MatrixFunction::Sqrt)?;
    let nested = matrix_function(&matrix_function(p, MatrixFunction::Pow(t2))?, MatrixFunction::Pow(t1))?;
    let direct = matrix_function(p, MatrixFunction::Pow(t1 * t2))?;
    Ok(max_of([
        rel_frob(&back.realize(), &pr),
        rel_frob(&(&s * &s).realize(), &pr),
        rel_frob(&nested.realize(), &direct.realize()),
    ]))
}

fn homomorphism(cx: &mut Ctx) -> Result<f64> {
    let rng = &mut cx.rng;
    let [x, y, z] = [0, 1, 2].map(|_| random_op(rng, cx.dim));
    let xy = &x * &y;
    let left = &xy * &z;
    let right = &x * &(&y * &z);
    Ok(max_of([
        rel_frob(&xy.realize(), &(x.realize() * y.realize())),
        rel_frob(&left.realize(), &right.realize()),
        (left.scalar() - right.scalar()).norm() / left.scalar().norm().max(1.0),
    ]))
}

fn isometry(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    let g = sampling::invertible(&mut cx.rng, cx.dim);
    let moved = distance(&isometry_action(&g, &p)?, &isometry_action(&g, &q)?)?;
    Ok(rel(moved, distance(&p, &q)?))
}

// d/dt <V, W> against <DV, W> + <V, DW> along exp_p(tA + t^2 B)
fn compatibility(cx: &mut Ctx) -> Result<f64> {
    let n = cx.dim;
    let rng = &mut cx.rng;
    let p = sampling::positive_point(rng, n);
    let a = sampling::tangent(rng, &p, 0.8);
    let b = sampling::tangent(rng, &p, 0.5);
    let [v0, v1, w0, w1] = [0, 1, 2, 3].map(|_| sampling::hermitian_op(rng, n, 1.0));
    let curve = SampledCurve::new(move |t| {
        let v = TangentVector::new(&p, &a.value().scale_real(t) + &b.value().scale_real(t * t))?;
        exp_map(&p, &v)
    })
    .with_step(cx.step);
    let vf = |t: f64| Ok(&v0 + &v1.scale_real(t.sin()));
    let wf = |t: f64| Ok(&w0 + &w1.scale_real(t * t));
    let inner = |t: f64| -> Result<f64> {
        let g = curve.at(t)?;
        metric_at(&g, &TangentVector::new(&g, vf(t)?)?, &TangentVector::new(&g, wf(t)?)?)
    };
    let h = cx.step;
    let mut worst: f64 = 0.0;
    for t in [0.3, 0.6] {
        let lhs = (inner(t + h)? - inner(t - h)?) / (2.0 * h);
        let g = curve.at(t)?;
        let v = TangentVector::new(&g, vf(t)?)?;
        let w = TangentVector::new(&g, wf(t)?)?;
        let rhs = metric_at(&g, &covariant_derivative(&curve, vf, t)?, &w)?
            + metric_at(&g, &v, &covariant_derivative(&curve, wf, t)?)?;
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok(worst)
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "metric/trace_cyclicity",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: trace_cyclicity,
        about: "trace cyclicity of the unitized inner product",
    },
    Check {
        id: "metric/spectral_radius",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-12),
        dims: None,
        run: spectral_radius,
        about: "r(x) <= |x|_2 for pure-part Hermitian x",
    },
    Check {
        id: "metric/opnorm_submultiplicative",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-12),
        dims: None,
        run: opnorm_submultiplicative,
        about: "|xy|_op <= |x|_2 |y|_2",
    },
    Check {
        id: "metric/functional_equations",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: functional_equations,
        about: "exp(log p) = p, sqrt(p)^2 = p, (p^a)^b = p^(ab)",
    },
    Check {
        id: "metric/homomorphism",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-12),
        dims: None,
        run: homomorphism,
        about: "associativity and realize(xy) = realize(x) realize(y)",
    },
    Check {
        id: "metric/isometry",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: isometry,
        about: "dist(gpg*, gqg*) = dist(p, q)",
    },
    Check {
        id: "metric/compatibility",
        suite: Suite::Metric,
        tolerance: Tolerance::Residual(1e-5),
        dims: None,
        run: compatibility,
        about: "metric compatibility of the connection along random curves",
    },
];
