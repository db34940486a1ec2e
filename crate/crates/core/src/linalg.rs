//! Dense complex matrix helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> CMatrix {
    CMatrix::zeros(n, n)
}

/// Builds a complex matrix from a real diagonal.
pub fn diag_real(values: &[f64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO })
}

pub fn from_real_rows(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0))
}

/// Elementary matrix with a one in position (i, j).
pub fn unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = zeros(n);
    m[(i, j)] = ONE;
    m
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The Hilbert-Schmidt norm with the factor two used throughout:
/// `||a||_2 = 2 tr(a* a)^{1/2}`.
pub fn hs_norm(m: &CMatrix) -> f64 {
    2.0 * frobenius(m)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(m + m*) / 2`. The result is Hermitian bit for bit.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

/// Largest entrywise gap between `m` and `m*`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..=i {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn is_exact_hermitian(m: &CMatrix) -> bool {
    m.is_square() && hermitian_deviation(m) == 0.0
}

/// `max |u* u - 1|` entrywise.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    max_abs(&(u.adjoint() * u - identity(u.nrows())))
}

/// Projects onto the block-diagonal and off-block parts relative to the
/// orthogonal projector `proj`: returns `(P m P + Q m Q, P m Q + Q m P)`.
pub fn block_split(proj: &CMatrix, m: &CMatrix) -> (CMatrix, CMatrix) {
    let comp = identity(proj.nrows()) - proj;
    let pm = proj * m;
    let qm = &comp * m;
    let diag = &pm * proj + &qm * &comp;
    let off = &pm * &comp + &qm * proj;
    (diag, off)
}

/// Operator (spectral) norm, via the largest eigenvalue of `m* m`.
pub fn op_norm(m: &CMatrix) -> f64 {
    let gram = hermitian_part(&(m.adjoint() * m));
    match gram.clone().try_symmetric_eigen(f64::EPSILON, 10_000) {
        Some(eig) => eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(0.0).sqrt(),
        None => frobenius(m),
    }
}

/// Smallest singular value, via the eigenvalues of `m* m`.
pub fn min_singular(m: &CMatrix) -> f64 {
    let gram = hermitian_part(&(m.adjoint() * m));
    match gram.try_symmetric_eigen(f64::EPSILON, 10_000) {
        Some(eig) => eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min).max(0.0).sqrt(),
        None => 0.0,
    }
}

/// Orthogonalizes `v` against the orthonormal `basis` (two passes) and
/// appends it when the remainder has norm above `tol`.
pub fn gram_schmidt_push(basis: &mut Vec<CVector>, v: &CVector, tol: f64) -> bool {
    let mut w = v.clone();
    for _ in 0..2 {
        for b in basis.iter() {
            let c = b.dotc(&w);
            w -= b * c;
        }
    }
    let nrm = w.norm();
    if nrm > tol {
        basis.push(w / C64::new(nrm, 0.0));
        true
    } else {
        false
    }
}

/// Appends the standard basis vector with the largest remainder.
pub fn gram_schmidt_complete(basis: &mut Vec<CVector>, n: usize) {
    let best = (0..n)
        .map(|i| {
            let e = CVector::from_fn(n, |j, _| if i == j { ONE } else { ZERO });
            let rem = basis.iter().fold(e.clone(), |w, b| {
                let c = b.dotc(&w);
                w - b * c
            });
            (rem.norm(), e)
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("n >= 1");
    gram_schmidt_push(basis, &best.1, 0.0);
}

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Exponential of an arbitrary square complex matrix by scaling and squaring
/// a truncated Taylor series. Used where the argument is not Hermitian.
pub fn expm(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    let norm = one_norm(m);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m * C64::new(0.5f64.powi(squarings), 0.0);
    let mut sum = identity(n);
    let mut term = identity(n);
    for k in 1..40 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
        if one_norm(&term) <= f64::EPSILON * one_norm(&sum) * 1e-2 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
