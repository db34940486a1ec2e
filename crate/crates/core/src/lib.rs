//! Geometry of positive unitized Hilbert-Schmidt operators and unitary
//! orbits, realized on finite matrices.

pub mod algebra;
pub mod curves;
pub mod error;
pub mod io;
pub mod linalg;
pub mod manifold;
pub mod orbit;
pub mod sampling;
pub mod spectral;

pub use algebra::UnitizedOperator;
pub use error::{GeoError, Result};
pub use linalg::{CMatrix, C64};
pub use manifold::{Geodesic, PositivePoint, TangentVector};
pub use orbit::{FiniteSpectrumHermitian, OrbitPoint};
pub use spectral::{MatrixFunction, SpectralDecomposition};
