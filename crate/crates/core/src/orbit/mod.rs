//! Unitary orbits of finite-spectrum Hermitian operators and their images
//! under the exponential in the leaf with scalar one.

mod exp_log;
mod finite_spectrum;
mod residuals;
mod section;
mod split;
mod witness;

pub use exp_log::{
    exp_i, orbit_exp, orbit_generator, orbit_geodesic, orbit_length, orbit_log, orbit_velocity, solve_bracket,
    OrbitLog, OrbitPoint, TANGENCY_TOL, UNITARY_TOL,
};
pub use finite_spectrum::{FiniteSpectrumHermitian, CLUSTER_TOL};
pub use residuals::{ambient_geodesy_residual, flat_residual, sigma_residual};
pub use section::{cross_section, cross_section_on_orbit, orbit_action, ON_ORBIT_TOL};
pub use split::{cartan_split, tangent_normal_split, BlockSplit, PROJECTOR_TOL};
pub use witness::{orbits_coincide_witness, OrbitWitness};
