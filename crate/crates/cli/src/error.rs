use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid `{field}`: {message}")]
    Field { field: String, message: String },

    #[error(transparent)]
    Core(#[from] tracedist::Error),

    #[error("writing output: {0}")]
    Write(#[from] std::io::Error),

    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 2 for bad input, 3 for numerical failure, 1 when
    /// output cannot be written.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Write(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
