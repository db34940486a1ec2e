#![allow(dead_code)]

use orbitgeo_core::linalg::{self, CMatrix};
use proptest::prelude::*;

pub fn rel_frob(a: &CMatrix, b: &CMatrix) -> f64 {
    linalg::frobenius(&(a - b)) / linalg::frobenius(b).max(1e-300).max(1.0)
}

/// (seed, dim) pairs over the desk-scale dimensions.
pub fn seed_and_dim() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), prop::sample::select(vec![2usize, 3, 4, 6, 8]))
}
