use std::path::PathBuf;

use kg_floquet::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("numerical failure: {0}")]
    Numerical(CoreError),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for configuration and IO problems, 2 for consistency failures,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Consistency(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            // these mean the requested wave does not exist
            CoreError::InvalidInput(_) | CoreError::NoPeriodicOrbit { .. } | CoreError::NoOrbit { .. } => {
                CliError::Config(e.to_string())
            }
            CoreError::InconsistentWithTheory(_) | CoreError::NotAWaveCoefficient { .. } => {
                CliError::Consistency(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}
