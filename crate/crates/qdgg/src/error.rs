use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid arguments; the process exits with status 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qdgg_core::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

impl From<qdgg_core::Overflow> for CliError {
    fn from(e: qdgg_core::Overflow) -> Self {
        CliError::Core(e.into())
    }
}
