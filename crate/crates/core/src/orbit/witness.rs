use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::spectral::SpectralDecomposition;

use super::exp_log::UNITARY_TOL;
use super::finite_spectrum::FiniteSpectrumHermitian;
use super::split::check_same_dim;

/// A unitary `u = 1 + k` with `u a u* = g a g*` and `k` supported on `T`.
#[derive(Debug, Clone)]
pub struct OrbitWitness {
    pub u: UnitizedOperator,
    /// Orthogonal projector onto `T = R(a) + R(g a g*)`.
    pub support: CMatrix,
    pub support_dim: usize,
}

impl OrbitWitness {
    /// Largest entry of `k - P_T k P_T`.
    pub fn leakage(&self) -> f64 {
        let k = self.u.part();
        linalg::max_abs(&(k - &self.support * k * &self.support))
    }
}

/// Builds `u = 1 + P_T (Q P* - 1_T) P_T`, where `P`, `Q` diagonalize `a` and
/// `g a g*` on `T` with the same diagonal.
pub fn orbits_coincide_witness(a: &FiniteSpectrumHermitian, g: &CMatrix) -> Result<OrbitWitness> {
    check_same_dim(a.matrix(), g)?;
    let dev = linalg::unitary_deviation(g);
    if dev > UNITARY_TOL {
        return Err(GeoError::NotUnitary { deviation: dev });
    }
    let n = a.dim();
    let am = a.matrix();
    let b = linalg::hermitian_part(&(g * am * g.adjoint()));
    let scale = linalg::max_abs(am).max(1.0);
    if linalg::max_abs(&(&b - am)) <= 1e-12 * scale {
        return Ok(OrbitWitness {
            u: UnitizedOperator::identity(n),
            support: linalg::zeros(n),
            support_dim: 0,
        });
    }
    // R(a) is spanned by eigenvectors with nonzero eigenvalue
    let tol = 1e-10 * scale;
    let mut range_cols = Vec::new();
    for (i, v) in a.values().iter().enumerate() {
        if v.abs() > tol {
            range_cols.extend(a.block(i));
        }
    }
    // orthonormal basis of T: R(a) first, then what g R(a) adds to it
    let mut cols: Vec<_> = range_cols.iter().map(|&i| a.basis().column(i).clone_owned()).collect();
    for &i in &range_cols {
        let v = g * a.basis().column(i);
        linalg::gram_schmidt_push(&mut cols, &v, 1e-12);
    }
    let t = if cols.is_empty() { CMatrix::zeros(n, 0) } else { CMatrix::from_columns(&cols) };
    let m = t.ncols();
    let at = linalg::hermitian_part(&(t.adjoint() * am * &t));
    let bt = linalg::hermitian_part(&(t.adjoint() * &b * &t));
    let pa = SpectralDecomposition::of_matrix(&at)?;
    let pb = SpectralDecomposition::of_matrix(&bt)?;
    let local = pb.basis() * pa.basis().adjoint() - linalg::identity(m);
    let k = &t * local * t.adjoint();
    let support = linalg::hermitian_part(&(&t * t.adjoint()));
    Ok(OrbitWitness {
        u: UnitizedOperator::new(C64::new(1.0, 0.0), k)?,
        support,
        support_dim: m,
    })
}
