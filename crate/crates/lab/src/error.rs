use cslab_core::LabError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] LabError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown repro case `{0}`")]
    UnknownCase(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;
