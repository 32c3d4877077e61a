use std::path::PathBuf;

use mvrho::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}, record {record}: {message}")]
    Csv { path: PathBuf, record: usize, message: String },
    #[error("config {path}, line {line}: {message}")]
    Config { path: PathBuf, line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::TooLarge { .. } => EXIT_RESOURCE,
                CoreError::TiesPresent { .. }
                | CoreError::ThetaTooLarge { .. }
                | CoreError::BadCorrelation(_)
                | CoreError::Unbounded(_)
                | CoreError::DegenerateModel
                | CoreError::DegenerateMeasure
                | CoreError::FisherBoundViolated { .. }
                | CoreError::DivisionByZeroSlope
                | CoreError::SingularIntegrand(_) => EXIT_DOMAIN,
                _ => EXIT_VALIDATION,
            },
            _ => EXIT_VALIDATION,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
