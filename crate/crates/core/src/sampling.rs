//! Reproducible random inputs.
//!
//! Every trial owns a ChaCha8 stream keyed by `(seed, stream, trial)`, so
//! results do not depend on the order in which trials run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::UnitizedOperator;
use crate::error::Result;
use crate::linalg::{self, CMatrix, C64};
use crate::manifold::{PositivePoint, TangentVector};
use crate::orbit::FiniteSpectrumHermitian;
use crate::spectral::{matrix_function, MatrixFunction};

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    let words = [
        splitmix(&mut state),
        splitmix(&mut state) ^ stream,
        splitmix(&mut state) ^ trial,
        splitmix(&mut state),
    ];
    let mut mix = words[0] ^ words[1].rotate_left(17) ^ words[2].rotate_left(41);
    for (i, chunk) in key.chunks_mut(8).enumerate() {
        mix ^= words[i];
        chunk.copy_from_slice(&splitmix(&mut mix).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Stable 64-bit key for a suite or check name.
pub fn stream_id(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| C64::new(gaussian(rng), gaussian(rng)))
}

/// Gaussian Hermitian matrix with `|h|_2 = 1`.
pub fn hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let h = linalg::hermitian_part(&complex_gaussian(rng, n, n));
    let norm = linalg::hs_norm(&h);
    linalg::hermitian_part(&(h * C64::new(1.0 / norm, 0.0)))
}

/// Hermitian element with Gaussian scalar and part, scaled to `norm2 = scale`.
pub fn hermitian_op(rng: &mut impl Rng, n: usize, scale: f64) -> UnitizedOperator {
    let s = gaussian(rng);
    let part = linalg::hermitian_part(&complex_gaussian(rng, n, n));
    let x = UnitizedOperator::hermitian(s, part).expect("hermitian by construction");
    let x = x.scale_real(scale / x.norm2());
    x.hermitian_part()
}

/// `e^x` for a Hermitian `x` of unit norm.
pub fn positive_point(rng: &mut impl Rng, n: usize) -> PositivePoint {
    let x = hermitian_op(rng, n, 1.0);
    PositivePoint::new(matrix_function(&x, MatrixFunction::Exp).expect("exp is total")).expect("exp is positive")
}

/// `e^{(0, h)}` with `|h|_2 = 1`; scalar exactly one.
pub fn leaf_point(rng: &mut impl Rng, n: usize) -> PositivePoint {
    let x = UnitizedOperator::hermitian(0.0, hermitian(rng, n)).expect("hermitian by construction");
    PositivePoint::new(matrix_function(&x, MatrixFunction::Exp).expect("exp is total")).expect("exp is positive")
}

pub fn tangent(rng: &mut impl Rng, p: &PositivePoint, scale: f64) -> TangentVector {
    TangentVector::new(p, hermitian_op(rng, p.dim(), scale)).expect("hermitian by construction")
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    let qr = complex_gaussian(rng, n, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { linalg::ONE };
        let mut c = q.column_mut(j);
        c *= phase;
    }
    q
}

/// Invertible `(mu, G)` with `|mu| >= 1/2` and realization well away from
/// singular.
pub fn invertible(rng: &mut impl Rng, n: usize) -> UnitizedOperator {
    loop {
        let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let modulus: f64 = rng.random_range(0.5..2.0);
        let mu = C64::from_polar(modulus, angle);
        let g = complex_gaussian(rng, n, n) * C64::new(0.5 / (n as f64).sqrt(), 0.0);
        let x = UnitizedOperator::new(mu, g).expect("square");
        let m = x.realize();
        let smallest = linalg::min_singular(&m);
        if smallest > 0.05 {
            return x;
        }
    }
}

/// `ln 2` times a Haar-random projector of the given rank.
pub fn projector_base(rng: &mut impl Rng, n: usize, rank: usize) -> FiniteSpectrumHermitian {
    FiniteSpectrumHermitian::projector_base(&unitary(rng, n), rank).expect("valid rank")
}

/// Random co-diagonal Hermitian matrix for `projector`, scaled to `|h|_2 = scale`.
pub fn codiagonal(rng: &mut impl Rng, projector: &CMatrix, scale: f64) -> CMatrix {
    let n = projector.nrows();
    let (_, off) = linalg::block_split(projector, &hermitian(rng, n));
    let norm = linalg::hs_norm(&off);
    if norm == 0.0 {
        return off;
    }
    linalg::hermitian_part(&(off * C64::new(scale / norm, 0.0)))
}

/// `k` distinct eigenvalues spaced at least `min_gap` apart, random
/// multiplicities and a Haar-random eigenbasis.
pub fn finite_spectrum(rng: &mut impl Rng, n: usize, k: usize, min_gap: f64) -> Result<FiniteSpectrumHermitian> {
    let k = k.clamp(1, n);
    let mut values = Vec::with_capacity(k);
    let mut v: f64 = rng.random_range(-1.0..1.0);
    for _ in 0..k {
        values.push(v);
        v += min_gap + rng.random_range(0.0..1.0);
    }
    let mut multiplicities = vec![1usize; k];
    for _ in k..n {
        let i = rng.random_range(0..k);
        multiplicities[i] += 1;
    }
    FiniteSpectrumHermitian::from_spectrum(&values, &multiplicities, unitary(rng, n))
}
