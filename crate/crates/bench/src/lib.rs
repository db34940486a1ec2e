//! Seeded fixtures shared by the benchmarks.

use orbitgeo_core::linalg::{self, CMatrix, C64};
use orbitgeo_core::orbit::{self, FiniteSpectrumHermitian, OrbitPoint};
use orbitgeo_core::sampling::{self, trial_rng};
use orbitgeo_core::PositivePoint;

pub const DIMS: [usize; 3] = [2, 4, 8];

pub fn point_pair(n: usize) -> (PositivePoint, PositivePoint) {
    let mut rng = trial_rng(1, n as u64, 0);
    (sampling::positive_point(&mut rng, n), sampling::positive_point(&mut rng, n))
}

/// Two points on the orbit of a rank-one projector base.
pub fn orbit_pair(n: usize) -> (OrbitPoint, OrbitPoint) {
    let mut rng = trial_rng(2, n as u64, 0);
    let base = sampling::projector_base(&mut rng, n, 1);
    let p = OrbitPoint::new(base.clone(), sampling::unitary(&mut rng, n)).expect("unitary");
    let q = OrbitPoint::new(base, sampling::unitary(&mut rng, n)).expect("unitary");
    (p, q)
}

/// A base with three distinct eigenvalues and a point inside its section
/// neighbourhood.
pub fn section_fixture(n: usize) -> (FiniteSpectrumHermitian, CMatrix) {
    let mut rng = trial_rng(3, n as u64, 0);
    let a = sampling::finite_spectrum(&mut rng, n, 3.min(n), 1.0).expect("valid spectrum");
    let h = sampling::hermitian(&mut rng, n) * C64::new(0.01, 0.0);
    let u = orbit::exp_i(&linalg::hermitian_part(&h)).expect("hermitian");
    let x = orbit::orbit_action(&u, a.matrix()).expect("same dim");
    (a, x)
}
