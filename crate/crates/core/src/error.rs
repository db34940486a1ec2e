use thiserror::Error;

/// Errors raised by the geometry routines.
#[derive(Debug, Error)]
pub enum GeoError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("{function} is undefined on this spectrum (min eigenvalue {min_eigenvalue:e}, scalar {scalar:e})")]
    DomainViolation {
        function: &'static str,
        min_eigenvalue: f64,
        scalar: f64,
    },

    #[error("point is not positive definite (min eigenvalue {min_eigenvalue:e}, scalar {scalar:e})")]
    NotPositive { min_eigenvalue: f64, scalar: f64 },

    #[error("tangent vectors are attached to different base points")]
    BaseMismatch,

    #[error("element is not invertible (smallest singular value {smallest:e})")]
    SingularElement { smallest: f64 },

    #[error("tangent vectors span a degenerate plane (Gram determinant {gram:e})")]
    DegeneratePlane { gram: f64 },

    #[error("t = {t} is outside the differentiable range ({step}, {})", 1.0 - step)]
    OutsideDifferentiableRange { t: f64, step: f64 },

    #[error("point lies outside the section neighborhood (distance {distance:e} >= radius {radius:e})")]
    OutsideNeighborhood { distance: f64, radius: f64 },

    #[error("point is not on the orbit (spectral drift {drift:e})")]
    SpectralMismatch { drift: f64 },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not an idempotent Hermitian projector (deviation {deviation:e})")]
    NotIdempotent { deviation: f64 },

    #[error("orbit base is not of projector type (exp(a) - 1 is not idempotent)")]
    NotProjectorBase,

    #[error("vector is not tangent to the orbit (normal part {normal:e} exceeds {tolerance:e})")]
    NotTangent { normal: f64, tolerance: f64 },

    #[error("points lie on different orbits")]
    DifferentOrbits,

    #[error("projector ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("operator is not co-diagonal (diagonal block norm {deviation:e})")]
    NotCodiagonal { deviation: f64 },

    #[error("Hermitian eigensolver did not converge")]
    EigenSolverFailed,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed matrix file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GeoError> = std::result::Result<T, E>;
