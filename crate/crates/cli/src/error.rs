use thiserror::Error;

/// Failures surfaced to the shell, each mapped to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Invalid(_) => 1,
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<numrad_core::Error> for CliError {
    fn from(e: numrad_core::Error) -> Self {
        match e {
            numrad_core::Error::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            numrad_core::Error::InvalidArgument(msg) => CliError::Usage(msg.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
