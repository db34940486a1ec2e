use std::f64::consts::LN_2;

use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::spectral::SpectralDecomposition;

/// Eigenvalues closer than this (relative to `max(1, |a|)`) are merged.
pub const CLUSTER_TOL: f64 = 1e-10;

/// A Hermitian matrix with its distinct eigenvalues and spectral projections.
#[derive(Debug, Clone)]
pub struct FiniteSpectrumHermitian {
    matrix: CMatrix,
    values: Vec<f64>,
    multiplicities: Vec<usize>,
    // eigenvectors grouped by block, blocks in ascending order
    basis: CMatrix,
    projections: Vec<CMatrix>,
}

impl FiniteSpectrumHermitian {
    /// Diagonalizes `a` and clusters its eigenvalues.
    pub fn from_matrix(a: &CMatrix) -> Result<Self> {
        if !a.is_square() || a.nrows() == 0 {
            return Err(GeoError::InvalidShape(format!("{}x{} is not a square matrix", a.nrows(), a.ncols())));
        }
        let dev = linalg::hermitian_deviation(a);
        if dev > 1e-12 * linalg::max_abs(a).max(1.0) {
            return Err(GeoError::NotHermitian { deviation: dev });
        }
        let matrix = linalg::hermitian_part(a);
        let dec = SpectralDecomposition::of_matrix(&matrix)?;
        let mut values = Vec::new();
        let mut multiplicities = Vec::new();
        for block in dec.blocks(CLUSTER_TOL) {
            let mean = dec.eigenvalues()[block.clone()].iter().sum::<f64>() / block.len() as f64;
            values.push(mean);
            multiplicities.push(block.len());
        }
        let basis = dec.basis().clone();
        let projections = Self::build_projections(&basis, &multiplicities);
        Ok(Self {
            matrix,
            values,
            multiplicities,
            basis,
            projections,
        })
    }

    /// `a = basis * diag(values repeated by multiplicity) * basis*`.
    pub fn from_spectrum(values: &[f64], multiplicities: &[usize], basis: CMatrix) -> Result<Self> {
        if values.is_empty() || values.len() != multiplicities.len() || multiplicities.contains(&0) {
            return Err(GeoError::InvalidShape("spectrum needs matching nonempty values and multiplicities".into()));
        }
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeoError::InvalidShape("distinct eigenvalues must be strictly increasing".into()));
        }
        let n: usize = multiplicities.iter().sum();
        if !basis.is_square() || basis.nrows() != n {
            return Err(GeoError::InvalidShape(format!("basis must be {n}x{n}")));
        }
        let dev = linalg::unitary_deviation(&basis);
        if dev > 1e-10 {
            return Err(GeoError::NotUnitary { deviation: dev });
        }
        let projections = Self::build_projections(&basis, multiplicities);
        let mut matrix = linalg::zeros(n);
        for (v, p) in values.iter().zip(&projections) {
            matrix += p * C64::new(*v, 0.0);
        }
        Ok(Self {
            matrix: linalg::hermitian_part(&matrix),
            values: values.to_vec(),
            multiplicities: multiplicities.to_vec(),
            basis,
            projections,
        })
    }

    /// `a = ln 2 * A` with `A` the projector onto the first `rank` columns of
    /// `basis`, so that `e^a = 1 + A`.
    pub fn projector_base(basis: &CMatrix, rank: usize) -> Result<Self> {
        let n = basis.nrows();
        if rank > n {
            return Err(GeoError::InvalidShape(format!("rank {rank} exceeds dimension {n}")));
        }
        // ascending order puts the kernel first
        let mut grouped = CMatrix::zeros(n, n);
        for (col, src) in (rank..n).chain(0..rank).enumerate() {
            grouped.set_column(col, &basis.column(src));
        }
        match (rank, n - rank) {
            (0, _) => Self::from_spectrum(&[0.0], &[n], grouped),
            (_, 0) => Self::from_spectrum(&[LN_2], &[n], grouped),
            (r, k) => Self::from_spectrum(&[0.0, LN_2], &[k, r], grouped),
        }
    }

    fn build_projections(basis: &CMatrix, multiplicities: &[usize]) -> Vec<CMatrix> {
        let mut out = Vec::with_capacity(multiplicities.len());
        let mut start = 0;
        for &m in multiplicities {
            let cols = basis.columns(start, m);
            out.push(linalg::hermitian_part(&(&cols * cols.adjoint())));
            start += m;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projections(&self) -> &[CMatrix] {
        &self.projections
    }

    /// Column range of `basis` spanning the i-th eigenspace.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.multiplicities[..i].iter().sum();
        start..start + self.multiplicities[i]
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.spectral_sum(|l| l)
    }

    pub fn spectral_sum<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let mut out = linalg::zeros(self.dim());
        for (v, p) in self.values.iter().zip(&self.projections) {
            out += p * C64::new(f(*v), 0.0);
        }
        linalg::hermitian_part(&out)
    }

    /// `e^a - 1`; equals `A` exactly for a projector base.
    pub fn exp_minus_one(&self) -> CMatrix {
        self.spectral_sum(f64::exp_m1)
    }

    pub fn exp(&self) -> CMatrix {
        self.exp_minus_one() + linalg::identity(self.dim())
    }

    /// Smallest gap between distinct eigenvalues; infinite for a multiple of
    /// the identity.
    pub fn min_gap(&self) -> f64 {
        self.values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Radius of the neighbourhood on which the cross-section is defined.
    pub fn section_radius(&self) -> f64 {
        self.min_gap() / 4.0
    }

    pub fn is_projector_base(&self) -> bool {
        self.values
            .iter()
            .all(|&v| v.abs() <= CLUSTER_TOL || (v - LN_2).abs() <= CLUSTER_TOL)
    }

    /// The projector `A = e^a - 1`, when `a` is `ln 2` times a projector.
    pub fn projector(&self) -> Result<CMatrix> {
        if !self.is_projector_base() {
            return Err(GeoError::NotProjectorBase);
        }
        let mut out = linalg::zeros(self.dim());
        for (v, p) in self.values.iter().zip(&self.projections) {
            if (v - LN_2).abs() <= CLUSTER_TOL {
                out += p;
            }
        }
        Ok(out)
    }

    /// Number of eigenvalues away from zero, counted with multiplicity.
    pub fn rank(&self) -> usize {
        let tol = CLUSTER_TOL * self.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        self.values
            .iter()
            .zip(&self.multiplicities)
            .filter(|(v, _)| v.abs() > tol)
            .map(|(_, m)| m)
            .sum()
    }

    /// Same distinct values (within `CLUSTER_TOL`) and multiplicities.
    pub fn same_spectrum(&self, other: &Self) -> bool {
        self.multiplicities == other.multiplicities
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= CLUSTER_TOL * a.abs().max(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag_real, from_real_rows, max_abs};

    #[test]
    fn clusters_repeated_eigenvalues() {
        let a = FiniteSpectrumHermitian::from_matrix(&diag_real(&[3.0, 1.0, 3.0, 1.0, 1.0])).unwrap();
        assert_eq!(a.values().len(), 2);
        assert_eq!(a.multiplicities(), &[3, 2]);
        assert!(max_abs(&(a.reconstruct() - a.matrix())) < 1e-12);
        assert_eq!(a.min_gap(), 2.0);
        assert_eq!(a.section_radius(), 0.5);
    }

    #[test]
    fn projections_resolve_identity() {
        let m = from_real_rows(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 0.0], &[0.0, 0.0, 3.0]]);
        let a = FiniteSpectrumHermitian::from_matrix(&m).unwrap();
        assert_eq!(a.values().len(), 2);
        let mut sum = linalg::zeros(3);
        for (i, p) in a.projections().iter().enumerate() {
            assert!(max_abs(&(p * p - p)) < 1e-12);
            for q in &a.projections()[i + 1..] {
                assert!(max_abs(&(p * q)) < 1e-12);
            }
            sum += p;
        }
        assert!(max_abs(&(sum - linalg::identity(3))) < 1e-12);
        assert!(max_abs(&(a.reconstruct() - m)) < 1e-12);
    }

    #[test]
    fn projector_base_exponentiates_to_one_plus_projector() {
        let a = FiniteSpectrumHermitian::projector_base(&linalg::identity(3), 1).unwrap();
        assert!(a.is_projector_base());
        assert_eq!(a.rank(), 1);
        let proj = a.projector().unwrap();
        assert!(max_abs(&(proj - diag_real(&[1.0, 0.0, 0.0]))) < 1e-15);
        assert!(max_abs(&(a.exp() - diag_real(&[2.0, 1.0, 1.0]))) < 1e-15);
    }

    #[test]
    fn non_projector_base_rejected() {
        let a = FiniteSpectrumHermitian::from_matrix(&diag_real(&[0.0, 1.0])).unwrap();
        assert!(matches!(a.projector(), Err(GeoError::NotProjectorBase)));
    }

    #[test]
    fn scalar_base_has_infinite_gap() {
        let a = FiniteSpectrumHermitian::from_matrix(&diag_real(&[2.0, 2.0])).unwrap();
        assert_eq!(a.min_gap(), f64::INFINITY);
    }

    #[test]
    fn bad_spectrum_inputs() {
        let id = linalg::identity(2);
        assert!(FiniteSpectrumHermitian::from_spectrum(&[1.0, 1.0], &[1, 1], id.clone()).is_err());
        assert!(FiniteSpectrumHermitian::from_spectrum(&[1.0], &[3], id.clone()).is_err());
        assert!(FiniteSpectrumHermitian::from_spectrum(&[0.0, 1.0], &[1, 1], id * C64::new(2.0, 0.0)).is_err());
    }
}
