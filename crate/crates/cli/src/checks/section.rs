use orbitgeo_core::linalg::{self, C64};
use orbitgeo_core::orbit::{cross_section, cross_section_on_orbit, exp_i, orbit_action, FiniteSpectrumHermitian};
use orbitgeo_core::sampling;
use orbitgeo_core::Result;
use rand::Rng;

use super::{Check, Ctx, Tolerance};
use crate::config::Suite;

// two to four distinct eigenvalues
fn base(cx: &mut Ctx) -> Result<FiniteSpectrumHermitian> {
    let k = cx.rng.random_range(2..=4).min(cx.dim);
    sampling::finite_spectrum(&mut cx.rng, cx.dim, k, 0.5)
}

fn identity(cx: &mut Ctx) -> Result<f64> {
    let a = base(cx)?;
    Ok(linalg::max_abs(&(cross_section(&a, a.matrix())? - linalg::identity(cx.dim))))
}

fn local_section(cx: &mut Ctx) -> Result<f64> {
    let a = base(cx)?;
    let radius = a.section_radius();
    let gen = sampling::hermitian(&mut cx.rng, cx.dim);
    let size = cx.rng.random_range(0.05..0.9);
    // |e^{ish} a e^{-ish} - a|_2 <= 2 s |h|_2 |a|_op
    let mut s = size * radius / (2.0 * linalg::op_norm(a.matrix()).max(1e-3));
    let x = loop {
        let u = exp_i(&(&gen * C64::new(s, 0.0)))?;
        let x = orbit_action(&u, a.matrix())?;
        if linalg::hs_norm(&(&x - a.matrix())) < radius {
            break x;
        }
        s *= 0.5;
    };
    let phi = cross_section_on_orbit(&a, &x)?;
    let back = orbit_action(&phi, a.matrix())?;
    Ok(linalg::max_abs(&(back - &x)).max(linalg::unitary_deviation(&phi)))
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "section/identity",
        suite: Suite::Section,
        tolerance: Tolerance::Fixed(0.0),
        dims: None,
        run: identity,
        about: "the section sends a to the identity exactly",
    },
    Check {
        id: "section/local_section",
        suite: Suite::Section,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: local_section,
        about: "pi_a(phi_a(x)) = x on the section neighborhood",
    },
];
