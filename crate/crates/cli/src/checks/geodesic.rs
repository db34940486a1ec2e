use orbitgeo_core::curves::{geodesic_residual, SampledCurve};
use orbitgeo_core::manifold::{distance, exp_map, geodesic, log_map};
use orbitgeo_core::sampling;
use orbitgeo_core::{Geodesic, Result};
use rand::Rng;

use super::{max_of, rel, rel_frob, Check, Ctx, Tolerance};
use crate::config::Suite;

fn euler(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    let scale = p.value().norm2().max(q.value().norm2());
    let curve = SampledCurve::from_geodesic(Geodesic::new(&p, &q)?).with_step(cx.step);
    let mut worst: f64 = 0.0;
    for t in [0.25, 0.5, 0.75] {
        worst = worst.max(geodesic_residual(&curve, t)? / scale);
    }
    Ok(worst)
}

fn endpoints(cx: &mut Ctx) -> Result<f64> {
    let t = cx.rng.random_range(0.0..1.0);
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    Ok(max_of([
        rel_frob(&geodesic(&p, &q, 0.0)?.realize(), &p.realize()),
        rel_frob(&geodesic(&p, &q, 1.0)?.realize(), &q.realize()),
        rel_frob(&geodesic(&p, &q, t)?.realize(), &geodesic(&q, &p, 1.0 - t)?.realize()),
    ]))
}

fn leaf(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::leaf_point(&mut cx.rng, cx.dim);
    let q = sampling::leaf_point(&mut cx.rng, cx.dim);
    let mut worst: f64 = 0.0;
    for k in 1..10 {
        worst = worst.max((geodesic(&p, &q, k as f64 / 10.0)?.scalar() - 1.0).abs());
    }
    Ok(worst)
}

fn scalar_formula(cx: &mut Ctx) -> Result<f64> {
    let t = cx.rng.random_range(0.0..1.0);
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    let expected = p.scalar().powf(1.0 - t) * q.scalar().powf(t);
    Ok(rel(geodesic(&p, &q, t)?.scalar(), expected))
}

fn exp_log(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    let v = log_map(&p, &q)?;
    let w = sampling::tangent(&mut cx.rng, &p, 1.0);
    let back = log_map(&p, &exp_map(&p, &w)?)?;
    Ok(max_of([
        rel_frob(&exp_map(&p, &v)?.realize(), &q.realize()),
        rel_frob(&back.value().realize(), &w.value().realize()),
    ]))
}

// length(gamma) - (dist(p, m) + dist(m, q)) over 20 perturbed midpoints m
fn minimality(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let q = sampling::positive_point(&mut cx.rng, cx.dim);
    let len = SampledCurve::from_geodesic(Geodesic::new(&p, &q)?).with_step(cx.step).length()?;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..20 {
        let mid = geodesic(&p, &q, (k as f64 + 0.5) / 20.0)?;
        let size = cx.rng.random_range(0.05..0.35);
        let m = exp_map(&mid, &sampling::tangent(&mut cx.rng, &mid, size))?;
        worst = worst.max(len - (distance(&p, &m)? + distance(&m, &q)?));
    }
    Ok(worst)
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "geodesic/euler",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Residual(1e-5),
        dims: None,
        run: euler,
        about: "Euler residual of the geodesic at t = 1/4, 1/2, 3/4, relative to scale",
    },
    Check {
        id: "geodesic/endpoints",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: endpoints,
        about: "gamma(0) = p, gamma(1) = q and reversal",
    },
    Check {
        id: "geodesic/leaf",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Fixed(f64::EPSILON),
        dims: None,
        run: leaf,
        about: "scalar part stays 1 between leaf points",
    },
    Check {
        id: "geodesic/scalar_formula",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Residual(1e-12),
        dims: None,
        run: scalar_formula,
        about: "scalar part of gamma(t) is l_p^(1-t) l_q^t",
    },
    Check {
        id: "geodesic/exp_log",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: exp_log,
        about: "exp and log invert each other both ways",
    },
    Check {
        id: "geodesic/minimality",
        suite: Suite::Geodesic,
        tolerance: Tolerance::Residual(1e-6),
        dims: None,
        run: minimality,
        about: "geodesic length against 20 broken competitors",
    },
];
