use orbitgeo_core::GeoError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A check failed, or an internal error.
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const NOT_POSITIVE: i32 = 3;
    pub const OFF_ORBIT: i32 = 4;
    pub const NOT_PROJECTOR: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Geo(#[from] GeoError),

    #[error("{failed} of {total} trials failed")]
    ChecksFailed { failed: usize, total: usize },

    #[error("check registry is inconsistent: {0}")]
    Registry(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::PARSE,
            CliError::Geo(e) => geo_exit_code(e),
            CliError::ChecksFailed { .. } | CliError::Registry(_) | CliError::Csv(_) | CliError::Io(_) => exit::FAILURE,
        }
    }
}

pub fn geo_exit_code(e: &GeoError) -> i32 {
    use GeoError::*;
    match e {
        Io(_) | Json(_) | InvalidShape(_) | NotHermitian { .. } | DimensionMismatch { .. } => exit::PARSE,
        NotPositive { .. } | DomainViolation { .. } => exit::NOT_POSITIVE,
        SpectralMismatch { .. }
        | DifferentOrbits
        | RankMismatch { .. }
        | OutsideNeighborhood { .. }
        | NotTangent { .. }
        | NotCodiagonal { .. }
        | NotUnitary { .. } => exit::OFF_ORBIT,
        NotProjectorBase | NotIdempotent { .. } => exit::NOT_PROJECTOR,
        _ => exit::FAILURE,
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_the_contract() {
        let io = GeoError::Io(std::io::Error::other("x"));
        assert_eq!(CliError::from(io).exit_code(), exit::PARSE);
        let np = GeoError::NotPositive { min_eigenvalue: -1.0, scalar: 1.0 };
        assert_eq!(geo_exit_code(&np), exit::NOT_POSITIVE);
        assert_eq!(geo_exit_code(&GeoError::DifferentOrbits), exit::OFF_ORBIT);
        assert_eq!(geo_exit_code(&GeoError::NotProjectorBase), exit::NOT_PROJECTOR);
        assert_eq!(CliError::ChecksFailed { failed: 1, total: 2 }.exit_code(), exit::FAILURE);
    }
}
