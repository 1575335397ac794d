use gradient_boussinesq::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read config file {path}: {source}")]
    ReadConfig { path: String, source: std::io::Error },
    #[error("cannot parse config file {path}: {source}")]
    ParseConfig { path: String, source: toml::de::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("quadrature did not converge at {0} point(s)")]
    Unconverged(usize),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 2 for bad input, 3 for quadrature failure, 4 for failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(e) => match e {
                CoreError::NotConverged { .. }
                | CoreError::SubdivisionLimit { .. }
                | CoreError::NanIntegrand { .. }
                | CoreError::SpectralPole { .. } => 3,
                CoreError::DegenerateDeterminant { .. } => 4,
                _ => 2,
            },
            Self::Unconverged(_) => 3,
            Self::Verification(_) => 4,
            Self::Write { .. } => 1,
            _ => 2,
        }
    }
}
