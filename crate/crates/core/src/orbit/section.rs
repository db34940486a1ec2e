use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix};
use crate::spectral::SpectralDecomposition;

use super::exp_log::UNITARY_TOL;
use super::finite_spectrum::FiniteSpectrumHermitian;
use super::split::check_same_dim;

/// Spectra closer than this (relative) count as the same orbit.
pub const ON_ORBIT_TOL: f64 = 1e-9;

/// `pi_a(u) = u a u*`.
pub fn orbit_action(u: &CMatrix, a: &CMatrix) -> Result<CMatrix> {
    check_same_dim(u, a)?;
    let dev = linalg::unitary_deviation(u);
    if dev > UNITARY_TOL {
        return Err(GeoError::NotUnitary { deviation: dev });
    }
    Ok(linalg::hermitian_part(&(u * a * u.adjoint())))
}

/// Spectral projections of `x`, grouped with the multiplicities of `a`.
fn matched_projections(a: &FiniteSpectrumHermitian, x: &CMatrix) -> Result<Vec<CMatrix>> {
    let dec = SpectralDecomposition::of_matrix(x)?;
    let mut out = Vec::with_capacity(a.values().len());
    let mut start = 0;
    for &m in a.multiplicities() {
        let cols = dec.basis().columns(start, m);
        out.push(linalg::hermitian_part(&(&cols * cols.adjoint())));
        start += m;
    }
    Ok(out)
}

/// A unitary `u(x)` depending continuously on `x` near `a`, with `u(a) = 1`
/// and `u a u* = x` whenever `x` lies on the orbit of `a`.
///
/// With `P_i` the spectral projections of `a` and `Q_i` those of `x`,
/// `S = sum Q_i P_i` and `u = S (S* S)^{-1/2}`; on the range of `P_i` the
/// correction is `[1 - (P_i - Q_i)^2]^{-1/2}`.
pub fn cross_section(a: &FiniteSpectrumHermitian, x: &CMatrix) -> Result<CMatrix> {
    check_same_dim(a.matrix(), x)?;
    let dev = linalg::hermitian_deviation(x);
    if dev > 1e-12 * linalg::max_abs(x).max(1.0) {
        return Err(GeoError::NotHermitian { deviation: dev });
    }
    let distance = linalg::hs_norm(&(x - a.matrix()));
    let radius = a.section_radius();
    if !(distance < radius) {
        return Err(GeoError::OutsideNeighborhood { distance, radius });
    }
    let n = a.dim();
    if x == a.matrix() {
        return Ok(linalg::identity(n));
    }
    let qs = matched_projections(a, &linalg::hermitian_part(x))?;
    let mut s = linalg::zeros(n);
    for (q, p) in qs.iter().zip(a.projections()) {
        s += q * p;
    }
    let gram = SpectralDecomposition::of_matrix(&linalg::hermitian_part(&(s.adjoint() * &s)))?;
    if !gram.is_positive() {
        return Err(GeoError::OutsideNeighborhood { distance, radius });
    }
    Ok(s * gram.apply(|l| l.sqrt().recip()))
}

/// `cross_section` for a point claimed to lie on the orbit; the spectra are
/// compared first.
pub fn cross_section_on_orbit(a: &FiniteSpectrumHermitian, x: &CMatrix) -> Result<CMatrix> {
    check_same_dim(a.matrix(), x)?;
    let dec = SpectralDecomposition::of_matrix(&linalg::hermitian_part(x))?;
    let scale = a.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let drift = dec
        .eigenvalues()
        .iter()
        .zip(a.spectrum())
        .map(|(l, m)| (l - m).abs())
        .fold(0.0, f64::max);
    if drift > ON_ORBIT_TOL * scale {
        return Err(GeoError::SpectralMismatch { drift });
    }
    cross_section(a, x)
}
