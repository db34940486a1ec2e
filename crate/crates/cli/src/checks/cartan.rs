use orbitgeo_core::linalg::{self, block_split, CMatrix, I};
use orbitgeo_core::manifold::{metric_at, tangent};
use orbitgeo_core::orbit::{cartan_split, tangent_normal_split, OrbitPoint};
use orbitgeo_core::sampling;
use orbitgeo_core::Result;
use rand::Rng;

use super::{Check, Ctx, Tolerance};
use crate::config::Suite;

fn projector_point(cx: &mut Ctx) -> Result<OrbitPoint> {
    let rank = cx.rng.random_range(1..cx.dim);
    let base = sampling::projector_base(&mut cx.rng, cx.dim, rank);
    OrbitPoint::new(base, sampling::unitary(&mut cx.rng, cx.dim))
}

// [k,k], [m,m] in k; [k,m] in m; likewise for products
fn grading(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let a = p.base().projector()?;
    let s = cartan_split(&a, &sampling::hermitian(&mut cx.rng, cx.dim))?;
    let t = cartan_split(&a, &sampling::hermitian(&mut cx.rng, cx.dim))?;
    let grade = |m: &CMatrix, even: bool| {
        let (d, o) = block_split(&a, m);
        linalg::max_abs(if even { &o } else { &d })
    };
    let mut worst: f64 = 0.0;
    for (i, x) in [&s.diag, &s.codiag].into_iter().enumerate() {
        for (j, y) in [&t.diag, &t.codiag].into_iter().enumerate() {
            let even = i == j;
            let c = linalg::commutator(&(x * I), &(y * I));
            worst = worst.max(grade(&c, even)).max(grade(&(x * y), even));
        }
    }
    Ok(worst)
}

fn tangent_normal(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let x = sampling::hermitian(&mut cx.rng, cx.dim);
    let (t, n) = tangent_normal_split(&p, &x)?;
    let commutes = linalg::max_abs(&linalg::commutator(&n, &p.point().realize()));
    let tv = tangent(p.point(), 0.0, t)?;
    let nv = tangent(p.point(), 0.0, n)?;
    Ok(commutes.max(metric_at(p.point(), &tv, &nv)?.abs()))
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "cartan/grading",
        suite: Suite::Cartan,
        tolerance: Tolerance::Residual(1e-12),
        dims: None,
        run: grading,
        about: "the eight inclusions of the diagonal/co-diagonal grading",
    },
    Check {
        id: "cartan/tangent_normal",
        suite: Suite::Cartan,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: tangent_normal,
        about: "normal parts commute with p and are orthogonal to tangents",
    },
];
