//! Residuals of the geodesic equations for conjugation curves
//! `t -> e^{ith} e^a e^{-ith}`.

use crate::error::Result;
use crate::linalg::{self, CMatrix, C64, I};
use crate::spectral::SpectralDecomposition;

use super::split::{check_projector, check_same_dim};

fn exp_pair(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let dec = SpectralDecomposition::of_matrix(&linalg::hermitian_part(a))?;
    Ok((dec.apply(f64::exp), dec.apply(|l| (-l).exp())))
}

/// `|h^2 A^2 - 2 hAhA + 2 AhAh - A^2 h^2|_2`. Vanishes exactly when the
/// curve `e^{ith}(1 + A)e^{-ith}` is a geodesic of the flat ambient space.
pub fn flat_residual(projector: &CMatrix, h: &CMatrix) -> Result<f64> {
    check_projector(projector)?;
    check_same_dim(projector, h)?;
    let a = projector;
    let a2 = a * a;
    let ha = h * a;
    let ah = a * h;
    let two = C64::new(2.0, 0.0);
    let r = h * h * &a2 - (&ha * &ha) * two + (&ah * &ah) * two - a2 * h * h;
    Ok(linalg::hs_norm(&r))
}

/// `|X - X*|_2` with `X = h e^a h e^{-a} + h e^{-a} h e^a`.
pub fn sigma_residual(a: &CMatrix, h: &CMatrix) -> Result<f64> {
    check_same_dim(a, h)?;
    let (ea, ena) = exp_pair(a)?;
    let x = h * &ea * h * &ena + h * &ena * h * &ea;
    Ok(linalg::hs_norm(&(&x - x.adjoint())))
}

/// `|h e^a h e^{-a} - e^a h e^{-a} h|_2` with `w = ih`; zero exactly when
/// `[w, a] = 0`.
pub fn ambient_geodesy_residual(a: &CMatrix, w: &CMatrix) -> Result<f64> {
    check_same_dim(a, w)?;
    let h = w * -I;
    let (ea, ena) = exp_pair(a)?;
    let r = &h * &ea * &h * &ena - &ea * &h * &ena * &h;
    Ok(linalg::hs_norm(&r))
}
