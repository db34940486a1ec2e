use orbitgeo_core::linalg::{self, CMatrix};
use orbitgeo_core::manifold::{distance, emi_check, segal_check};
use orbitgeo_core::sampling;
use orbitgeo_core::spectral::{matrix_function, MatrixFunction};
use orbitgeo_core::{PositivePoint, Result, UnitizedOperator};
use rand::Rng;

use super::{rel, Check, Ctx, Tolerance};
use crate::config::Suite;

fn pair(cx: &mut Ctx) -> (UnitizedOperator, UnitizedOperator) {
    let a = cx.rng.random_range(0.1..3.0);
    let b = cx.rng.random_range(0.1..3.0);
    (
        sampling::hermitian_op(&mut cx.rng, cx.dim, a),
        sampling::hermitian_op(&mut cx.rng, cx.dim, b),
    )
}

/// Two Hermitian elements diagonal in one random basis.
fn commuting_pair(cx: &mut Ctx) -> Result<(UnitizedOperator, UnitizedOperator)> {
    let n = cx.dim;
    let u = sampling::unitary(&mut cx.rng, n);
    let diag = |rng: &mut rand_chacha::ChaCha8Rng| -> CMatrix {
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        linalg::hermitian_part(&(&u * linalg::diag_real(&d) * u.adjoint()))
    };
    let s = cx.rng.random_range(-1.0..1.0);
    let t = cx.rng.random_range(-1.0..1.0);
    let x = UnitizedOperator::hermitian(s, diag(&mut cx.rng))?;
    let y = UnitizedOperator::hermitian(t, diag(&mut cx.rng))?;
    Ok((x, y))
}

// (lhs - rhs) / max(rhs, 1): at most zero when the inequality holds
fn emi_inequality(cx: &mut Ctx) -> Result<f64> {
    let (x, y) = pair(cx);
    let (l, r) = emi_check(&x, &y)?;
    Ok((l - r) / r.max(1.0))
}

fn emi_commuting(cx: &mut Ctx) -> Result<f64> {
    let (x, y) = commuting_pair(cx)?;
    let (l, r) = emi_check(&x, &y)?;
    Ok((l - r).abs() / r.max(1.0))
}

// the right side of the inequality is dist(e^x, e^y)
fn emi_distance(cx: &mut Ctx) -> Result<f64> {
    let (x, y) = pair(cx);
    let (_, r) = emi_check(&x, &y)?;
    let ex = PositivePoint::new(matrix_function(&x, MatrixFunction::Exp)?)?;
    let ey = PositivePoint::new(matrix_function(&y, MatrixFunction::Exp)?)?;
    Ok(rel(distance(&ex, &ey)?, r))
}

fn segal_inequality(cx: &mut Ctx) -> Result<f64> {
    let (x, y) = pair(cx);
    let (l, r) = segal_check(&x, &y)?;
    Ok((l - r) / r.max(1.0))
}

fn segal_commuting(cx: &mut Ctx) -> Result<f64> {
    let (x, y) = commuting_pair(cx)?;
    let (l, r) = segal_check(&x, &y)?;
    Ok((l - r).abs() / r.max(1.0))
}

pub(super) const CHECKS: &[Check] = &[
    Check {
        id: "emi/inequality",
        suite: Suite::Emi,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: emi_inequality,
        about: "|X - Y|_2 <= dist(e^X, e^Y)",
    },
    Check {
        id: "emi/commuting_equality",
        suite: Suite::Emi,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: emi_commuting,
        about: "equality for commuting X, Y",
    },
    Check {
        id: "emi/distance",
        suite: Suite::Emi,
        tolerance: Tolerance::Residual(1e-9),
        dims: None,
        run: emi_distance,
        about: "right side agrees with the geodesic distance",
    },
    Check {
        id: "segal/inequality",
        suite: Suite::Segal,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: segal_inequality,
        about: "|e^(X+Y)|_op <= |e^(X/2) e^Y e^(X/2)|_op",
    },
    Check {
        id: "segal/commuting_equality",
        suite: Suite::Segal,
        tolerance: Tolerance::Residual(1e-10),
        dims: None,
        run: segal_commuting,
        about: "equality for commuting X, Y",
    },
];
