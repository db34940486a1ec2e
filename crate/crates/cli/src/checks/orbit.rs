use orbitgeo_core::curves::SampledCurve;
use orbitgeo_core::linalg::{self, block_split, CMatrix, C64, I};
use orbitgeo_core::manifold::{distance, exp_map, isometry_action, tangent};
use orbitgeo_core::orbit::{
    ambient_geodesy_residual, flat_residual, orbit_exp, orbit_generator, orbit_geodesic, orbit_length, orbit_log,
    orbit_velocity, orbits_coincide_witness, sigma_residual, FiniteSpectrumHermitian, OrbitPoint,
};
use orbitgeo_core::sampling;
use orbitgeo_core::spectral::SpectralDecomposition;
use orbitgeo_core::{Result, UnitizedOperator};
use rand::Rng;

use super::{max_of, rel, Check, Ctx, Tolerance};
use crate::config::Suite;

fn projector_point(cx: &mut Ctx) -> Result<OrbitPoint> {
    let rank = cx.rng.random_range(1..cx.dim);
    let base = sampling::projector_base(&mut cx.rng, cx.dim, rank);
    OrbitPoint::new(base, sampling::unitary(&mut cx.rng, cx.dim))
}

fn spectrum(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(SpectralDecomposition::of_matrix(&linalg::hermitian_part(m))?.eigenvalues().to_vec())
}

fn spectrum_gap(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let (x, y) = (spectrum(a)?, spectrum(b)?);
    Ok(max_of(x.iter().zip(&y).map(|(s, t)| (s - t).abs())).max(0.0))
}

fn invariance(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let size = cx.rng.random_range(0.1..3.0);
    let h = sampling::codiagonal(&mut cx.rng, &p.base().projector()?, size);
    let q = orbit_exp(&p, &orbit_velocity(&p, &h)?)?;
    Ok(max_of([
        q.spectrum_drift(),
        (q.point().scalar() - 1.0).abs(),
        spectrum_gap(&q.point().realize(), &p.point().realize())?,
    ]))
}

fn unitary_isometry(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let q = OrbitPoint::new(
        sampling::projector_base(&mut cx.rng, cx.dim, p.base().rank()),
        sampling::unitary(&mut cx.rng, cx.dim),
    )?;
    let u = UnitizedOperator::from_realization(linalg::ONE, &sampling::unitary(&mut cx.rng, cx.dim))?;
    let moved = distance(&isometry_action(&u, p.point())?, &isometry_action(&u, q.point())?)?;
    Ok(rel(moved, distance(p.point(), q.point())?))
}

fn codiagonal(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let a = p.base().projector()?;
    let size = cx.rng.random_range(0.1..4.0);
    let h = sampling::codiagonal(&mut cx.rng, &a, size);
    Ok(flat_residual(&a, &h)?.max(sigma_residual(p.base().matrix(), &h)?))
}

// 1e-8 / flat_residual: at most 1 when the residual clears 1e-8
fn obstruction(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let a = p.base().projector()?;
    let h = loop {
        let h = sampling::hermitian(&mut cx.rng, cx.dim);
        let (h0, h1) = block_split(&a, &h);
        if linalg::hs_norm(&linalg::commutator(&h0, &h1)) > 1e-6 {
            break h;
        }
    };
    Ok(1e-8 / flat_residual(&a, &h)?)
}

// 1 on a misclassification, 0 otherwise
fn dichotomy(cx: &mut Ctx) -> Result<f64> {
    let n = cx.dim;
    let commuting: bool = cx.rng.random();
    let u = sampling::unitary(&mut cx.rng, n);
    let d: Vec<f64> = (0..n).map(|_| cx.rng.random_range(-1.0..1.0)).collect();
    let a = linalg::hermitian_part(&(&u * linalg::diag_real(&d) * u.adjoint()));
    let w = if commuting {
        let e: Vec<f64> = (0..n).map(|_| cx.rng.random_range(-1.0..1.0)).collect();
        &u * linalg::diag_real(&e) * u.adjoint() * I
    } else {
        sampling::hermitian(&mut cx.rng, n) * I
    };
    let geodesic = ambient_geodesy_residual(&a, &w)? < 1e-10;
    let commutes = linalg::hs_norm(&linalg::commutator(&w, &a)) < 1e-8;
    Ok(if geodesic == commutes { 0.0 } else { 1.0 })
}

// 1e-6 / (largest spectral mismatch found over at most 50 tangent directions)
fn non_geodesic(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let a = p.base().projector()?;
    let target = spectrum(&p.point().realize())?;
    let mut best: f64 = 0.0;
    for _ in 0..50 {
        let h = sampling::codiagonal(&mut cx.rng, &a, 1.0);
        let v = tangent(p.point(), 0.0, orbit_velocity(&p, &h)?)?;
        let q = spectrum(&exp_map(p.point(), &v)?.realize())?;
        best = best.max(max_of(q.iter().zip(&target).map(|(s, t)| (s - t).abs())));
        if best > 1e-6 {
            break;
        }
    }
    Ok(1e-6 / best)
}

fn generator(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let h = sampling::codiagonal(&mut cx.rng, &p.base().projector()?, 1.0);
    let recovered = orbit_generator(&p, &orbit_velocity(&p, &h)?)?;
    Ok(linalg::max_abs(&(recovered - h)))
}

fn log_pair(cx: &mut Ctx) -> Result<(OrbitPoint, OrbitPoint, OrbitPoint)> {
    let p = projector_point(cx)?;
    let q = OrbitPoint::new(p.base().clone(), sampling::unitary(&mut cx.rng, cx.dim))?;
    let log = orbit_log(&p, &q)?;
    let end = orbit_exp(&p, &orbit_velocity(&p, &log.h)?)?;
    Ok((p, q, end))
}

fn exp_log(cx: &mut Ctx) -> Result<f64> {
    let (_, q, end) = log_pair(cx)?;
    Ok(linalg::max_abs(&(end.point().realize() - q.point().realize())))
}

fn endpoint_spectrum(cx: &mut Ctx) -> Result<f64> {
    let (p, _, end) = log_pair(cx)?;
    Ok(end.spectrum_drift().max(spectrum_gap(&end.point().realize(), &p.point().realize())?))
}

// below pi/2 the co-diagonal generator is the unique minimal one
fn log_of_exp(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let h = sampling::codiagonal(&mut cx.rng, &p.base().projector()?, 1.0);
    let size = cx.rng.random_range(0.1..1.4);
    let h = &h * C64::new(size / linalg::op_norm(&h), 0.0);
    let q = orbit_geodesic(&p, &h, 1.0)?;
    Ok(linalg::max_abs(&(orbit_log(&p, &q)?.h - h)))
}

fn length(cx: &mut Ctx) -> Result<f64> {
    let p = projector_point(cx)?;
    let a = p.base().projector()?;
    let size = cx.rng.random_range(0.2..3.0);
    let h = sampling::codiagonal(&mut cx.rng, &a, size);
    let exact = orbit_length(&a, &h)?;
    let hc = h.clone();
    let curve = SampledCurve::new(move |t| Ok(orbit_geodesic(&p, &hc, t)?.point().clone())).with_step(cx.step);
    Ok((curve.length()? - exact).abs() / exact)
}

fn length_2x2(cx: &mut Ctx) -> Result<f64> {
    let theta = cx.rng.random_range(0.05..1.5);
    let base = FiniteSpectrumHermitian::projector_base(&linalg::identity(2), 1)?;
    let p = OrbitPoint::new(base, sampling::unitary(&mut cx.rng, 2))?;
    let h = linalg::from_real_rows(&[&[0.0, theta], &[theta, 0.0]]);
    let curve = SampledCurve::new(move |t| Ok(orbit_geodesic(&p, &h, t)?.point().clone())).with_step(cx.step);
    Ok((curve.length()? - 2.0 * theta).abs())
}

fn witness(cx: &mut Ctx) -> Result<f64> {
    let n = cx.dim;
    let rank = cx.rng.random_range(1..=n / 2);
    let k = cx.rng.random_range(1..=rank);
    let sub = sampling::finite_spectrum(&mut cx.rng, rank, k, 0.3)?;
    // nonzero eigenvalues on a random rank-dimensional subspace
    let shift = 1.0 - sub.values()[0];
    let mut values = vec![0.0];
    let mut mult = vec![n - rank];
    values.extend(sub.values().iter().map(|v| v + shift));
    mult.extend(sub.multiplicities());
    let a = FiniteSpectrumHermitian::from_spectrum(&values, &mult, sampling::unitary(&mut cx.rng, n))?;
    let g = sampling::unitary(&mut cx.rng, n);
    let w = orbits_coincide_witness(&a, &g)?;
    let u = w.u.realize();
    let lhs = &u * a.matrix() * u.adjoint();
    let rhs = &g * a.matrix() * g.adjoint();
    Ok(max_of([linalg::max_abs(&(lhs - rhs)), linalg::unitary_deviation(&u), w.leakage()]))
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "orbit/invariance",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: invariance,
        about: "orbit_exp keeps the spectrum and the unit scalar",
    },
    Check {
        id: "orbit/unitary_isometry",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: unitary_isometry,
        about: "dist(upu*, uqu*) = dist(p, q) on the orbit",
    },
    Check {
        id: "orbit/codiagonal",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: codiagonal,
        about: "co-diagonal generators solve both geodesic equations",
    },
    Check {
        id: "orbit/obstruction",
        suite: Suite::Orbit,
        tolerance: Tolerance::Fixed(1.0),
        dims: None,
        run: obstruction,
        about: "flat residual exceeds 1e-8 when [h0, h1] != 0 (statistic 1e-8 / residual)",
    },
    Check {
        id: "orbit/dichotomy",
        suite: Suite::Orbit,
        tolerance: Tolerance::Fixed(0.0),
        dims: None,
        run: dichotomy,
        about: "ambient geodesy iff [w, a] = 0 (statistic counts misclassifications)",
    },
    Check {
        id: "orbit/non_geodesic",
        suite: Suite::Orbit,
        tolerance: Tolerance::Fixed(1.0),
        dims: None,
        run: non_geodesic,
        about: "some ambient geodesic leaves the orbit (statistic 1e-6 / mismatch)",
    },
    Check {
        id: "orbit/generator",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: generator,
        about: "the co-diagonal generator is recovered from its velocity",
    },
    Check {
        id: "orbit/exp_log",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-7),
        dims: None,
        run: exp_log,
        about: "orbit_exp(orbit_log(p, q)) = q",
    },
    Check {
        id: "orbit/log_of_exp",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-7),
        dims: None,
        run: log_of_exp,
        about: "orbit_log recovers generators of norm below pi/2",
    },
    Check {
        id: "orbit/endpoint_spectrum",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: endpoint_spectrum,
        about: "log/exp endpoints keep the spectrum",
    },
    Check {
        id: "orbit/length",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-6),
        dims: None,
        run: length,
        about: "quadrature length equals |h|_2 / sqrt 2",
    },
    Check {
        id: "orbit/length_2x2",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-8),
        dims: Some(&[2]),
        run: length_2x2,
        about: "length 2 theta for h = theta (E12 + E21)",
    },
    Check {
        id: "orbit/witness",
        suite: Suite::Orbit,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: witness,
        about: "u = 1 + k supported on T with u a u* = g a g*",
    },
];
