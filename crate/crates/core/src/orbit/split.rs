use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix};

use super::exp_log::OrbitPoint;

/// Deviation allowed from `A = A* = A^2` for projector arguments.
pub const PROJECTOR_TOL: f64 = 1e-10;

pub(crate) fn check_projector(a: &CMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(GeoError::InvalidShape(format!("{}x{} is not a square matrix", a.nrows(), a.ncols())));
    }
    let dev = linalg::max_abs(&(a * a - a)).max(linalg::hermitian_deviation(a));
    if dev > PROJECTOR_TOL {
        return Err(GeoError::NotIdempotent { deviation: dev });
    }
    Ok(())
}

pub(crate) fn check_same_dim(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.nrows() != b.nrows() || !b.is_square() {
        return Err(GeoError::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    Ok(())
}

/// Block-diagonal and block-off-diagonal parts of a matrix relative to a
/// projector.
#[derive(Debug, Clone)]
pub struct BlockSplit {
    pub projector: CMatrix,
    pub diag: CMatrix,
    pub codiag: CMatrix,
}

impl BlockSplit {
    pub fn reconstruct(&self) -> CMatrix {
        &self.diag + &self.codiag
    }

    /// Largest entry of `A h0 (1-A)`, `(1-A) h0 A`, `A h1 A`, `(1-A) h1 (1-A)`.
    pub fn leakage(&self) -> f64 {
        let (_, off) = linalg::block_split(&self.projector, &self.diag);
        let (on, _) = linalg::block_split(&self.projector, &self.codiag);
        linalg::max_abs(&off).max(linalg::max_abs(&on))
    }
}

/// `h0 = A h A + (1-A) h (1-A)`, `h1 = A h (1-A) + (1-A) h A`.
pub fn cartan_split(projector: &CMatrix, h: &CMatrix) -> Result<BlockSplit> {
    check_projector(projector)?;
    check_same_dim(projector, h)?;
    let (diag, codiag) = linalg::block_split(projector, h);
    let (diag, codiag) = if linalg::is_exact_hermitian(h) {
        (linalg::hermitian_part(&diag), linalg::hermitian_part(&codiag))
    } else {
        (diag, codiag)
    };
    Ok(BlockSplit {
        projector: projector.clone(),
        diag,
        codiag,
    })
}

/// Splits `x` into the part tangent to the orbit at `p` (off the eigenspace
/// blocks of `p`) and the normal part (commuting with `p`).
pub fn tangent_normal_split(p: &OrbitPoint, x: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    check_same_dim(p.g(), x)?;
    let w = p.eigenbasis();
    let local = w.adjoint() * linalg::hermitian_part(x) * &w;
    let mut normal = linalg::zeros(x.nrows());
    for i in 0..p.base().values().len() {
        let b = p.base().block(i);
        normal
            .view_mut((b.start, b.start), (b.len(), b.len()))
            .copy_from(&local.view((b.start, b.start), (b.len(), b.len())));
    }
    let tangent = &local - &normal;
    let back = |m: &CMatrix| linalg::hermitian_part(&(&w * m * w.adjoint()));
    Ok((back(&tangent), back(&normal)))
}
