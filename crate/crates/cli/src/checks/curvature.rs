use orbitgeo_core::linalg;
use orbitgeo_core::manifold::{curvature, metric_at, sectional};
use orbitgeo_core::sampling;
use orbitgeo_core::Result;

use super::{Check, Ctx, Tolerance};
use crate::config::Suite;

fn antisymmetry(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let [x, y, z] = [0, 1, 2].map(|_| sampling::tangent(&mut cx.rng, &p, 1.0));
    let sum = curvature(&p, &x, &y, &z)?.value() + curvature(&p, &y, &x, &z)?.value();
    Ok(linalg::max_abs(&sum.realize()))
}

fn pair_symmetry(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let [x, y, z, w] = [0, 1, 2, 3].map(|_| sampling::tangent(&mut cx.rng, &p, 1.0));
    let a = metric_at(&p, &curvature(&p, &x, &y, &z)?, &w)?;
    let b = metric_at(&p, &curvature(&p, &z, &w, &x)?, &y)?;
    Ok((a - b).abs() / a.abs().max(1.0))
}

fn sectional_sign(cx: &mut Ctx) -> Result<f64> {
    let p = sampling::positive_point(&mut cx.rng, cx.dim);
    let x = sampling::tangent(&mut cx.rng, &p, 1.0);
    let y = sampling::tangent(&mut cx.rng, &p, 1.0);
    sectional(&p, &x, &y)
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "curvature/antisymmetry",
        suite: Suite::Curvature,
        tolerance: Tolerance::Residual(1e-14),
        dims: None,
        run: antisymmetry,
        about: "R(X,Y)Z = -R(Y,X)Z",
    },
    Check {
        id: "curvature/pair_symmetry",
        suite: Suite::Curvature,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: pair_symmetry,
        about: "<R(X,Y)Z,W> = <R(Z,W)X,Y>",
    },
    Check {
        id: "curvature/sectional",
        suite: Suite::Curvature,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: sectional_sign,
        about: "sectional curvature of random planes is nonpositive",
    },
];
