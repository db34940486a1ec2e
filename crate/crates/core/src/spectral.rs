//! Hermitian eigendecomposition and the matrix functions built on it.

use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64};

/// Relative gap under which neighbouring eigenvalues count as one degenerate block.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// A spectrum is positive when `min > POSITIVITY_TOL * max(1, max)`.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order with an orthonormal eigenbasis in the columns
/// of `basis`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    basis: CMatrix,
}

impl SpectralDecomposition {
    /// Decomposes a Hermitian matrix. Only the lower triangle is read.
    pub fn of_matrix(m: &CMatrix) -> Result<Self> {
        let n = m.nrows();
        let eig = m
            .clone()
            .try_symmetric_eigen(f64::EPSILON, 10_000)
            .ok_or(GeoError::EigenSolverFailed)?;
        let mut order: Vec<usize> = (0..n).collect();
        // stable: ties keep the solver's order
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut basis = CMatrix::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            basis.set_column(col, &eig.eigenvectors.column(i));
        }
        let mut dec = Self { eigenvalues, basis };
        dec.reorthonormalize_blocks();
        Ok(dec)
    }

    /// Builds a decomposition from given parts; `basis` must be unitary.
    pub fn from_parts(eigenvalues: Vec<f64>, basis: CMatrix) -> Result<Self> {
        if basis.nrows() != eigenvalues.len() || !basis.is_square() {
            return Err(GeoError::InvalidShape("basis does not match eigenvalue count".into()));
        }
        let dev = linalg::unitary_deviation(&basis);
        if dev > 1e-10 {
            return Err(GeoError::NotUnitary { deviation: dev });
        }
        let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eigenvalues[i].total_cmp(&eigenvalues[j]));
        let sorted = order.iter().map(|&i| eigenvalues[i]).collect();
        let mut b = CMatrix::zeros(basis.nrows(), basis.ncols());
        for (col, &i) in order.iter().enumerate() {
            b.set_column(col, &basis.column(i));
        }
        Ok(Self { eigenvalues: sorted, basis: b })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    pub fn is_positive(&self) -> bool {
        self.min() > POSITIVITY_TOL * self.max().max(1.0)
    }

    /// Index ranges of degenerate blocks (consecutive eigenvalues whose gap is
    /// at most `rel_tol * max(1, spectral radius)`).
    pub fn blocks(&self, rel_tol: f64) -> Vec<std::ops::Range<usize>> {
        let tol = rel_tol * self.spectral_radius().max(1.0);
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.dim() {
            if i == self.dim() || self.eigenvalues[i] - self.eigenvalues[i - 1] > tol {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    fn reorthonormalize_blocks(&mut self) {
        for block in self.blocks(DEGENERACY_TOL) {
            if block.len() < 2 {
                continue;
            }
            // modified Gram-Schmidt inside the block
            for j in block.clone() {
                for k in block.start..j {
                    let proj: C64 = self.basis.column(k).dotc(&self.basis.column(j));
                    let ck = self.basis.column(k).clone_owned();
                    let mut cj = self.basis.column_mut(j);
                    cj -= ck * proj;
                }
                let nrm = self.basis.column(j).norm();
                if nrm > 0.0 {
                    let mut cj = self.basis.column_mut(j);
                    cj /= C64::new(nrm, 0.0);
                }
            }
        }
    }

    /// `basis * diag(f(eigenvalues)) * basis*`, returned exactly Hermitian when
    /// `f` is real valued.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let vals: Vec<C64> = self.eigenvalues.iter().map(|&l| C64::new(f(l), 0.0)).collect();
        linalg::hermitian_part(&self.apply_complex_raw(&vals))
    }

    /// `basis * diag(values) * basis*` for complex values (e.g. `e^{i t l}`).
    pub fn apply_complex<F: Fn(f64) -> C64>(&self, f: F) -> CMatrix {
        let vals: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.apply_complex_raw(&vals)
    }

    fn apply_complex_raw(&self, vals: &[C64]) -> CMatrix {
        let mut scaled = self.basis.clone();
        for (j, v) in vals.iter().enumerate() {
            let mut c = scaled.column_mut(j);
            c *= *v;
        }
        scaled * self.basis.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|l| l)
    }
}

/// Eigendecomposition of the realization of a Hermitian element.
pub fn spectral(x: &UnitizedOperator) -> Result<SpectralDecomposition> {
    if !x.is_hermitian() {
        return Err(GeoError::NotHermitian {
            deviation: x.hermitian_deviation(),
        });
    }
    SpectralDecomposition::of_matrix(&x.realize())
}

/// Scalar functions that can be lifted to Hermitian elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Exp,
    Log,
    Sqrt,
    Pow(f64),
    Inv,
}

impl MatrixFunction {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exp => "exp",
            Self::Log => "log",
            Self::Sqrt => "sqrt",
            Self::Pow(_) => "pow",
            Self::Inv => "inv",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            Self::Exp => x.exp(),
            Self::Log => x.ln(),
            Self::Sqrt => x.sqrt(),
            Self::Pow(t) => x.powf(t),
            Self::Inv => 1.0 / x,
        }
    }

    fn needs_positive(self) -> bool {
        !matches!(self, Self::Exp)
    }
}

/// Applies `f` to a Hermitian element whose spectral decomposition is known.
/// `scalar' = f(scalar)` and `part' = f(realization) - f(scalar) I`.
pub fn lift_with(
    scalar: f64,
    dec: &SpectralDecomposition,
    f: MatrixFunction,
) -> Result<UnitizedOperator> {
    if f.needs_positive() && !(scalar > 0.0 && dec.is_positive()) {
        return Err(GeoError::DomainViolation {
            function: f.name(),
            min_eigenvalue: dec.min(),
            scalar,
        });
    }
    lift_fn(f.eval(scalar), dec, |l| f.eval(l))
}

/// Builds `(scalar_value, f(realization) - scalar_value I)` with no domain
/// checks; `scalar_value` is normally `f(scalar)`.
pub fn lift_fn<F: Fn(f64) -> f64>(
    scalar_value: f64,
    dec: &SpectralDecomposition,
    f: F,
) -> Result<UnitizedOperator> {
    let mut m = dec.apply(f);
    for i in 0..dec.dim() {
        m[(i, i)] -= C64::new(scalar_value, 0.0);
    }
    UnitizedOperator::hermitian(scalar_value, m)
}

/// `f(x)` for Hermitian `x`. Functions other than `exp` need a positive
/// realization and a positive scalar part.
pub fn matrix_function(x: &UnitizedOperator, f: MatrixFunction) -> Result<UnitizedOperator> {
    let dec = spectral(x)?;
    lift_with(x.scalar().re, &dec, f)
}
