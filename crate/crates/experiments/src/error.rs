use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Numeric(#[from] semantic_g::Error),
}

impl ExperimentError {
    /// Process exit class: 2 for configuration problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) | ExperimentError::Io { .. } => 2,
            ExperimentError::Numeric(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, ExperimentError>;
