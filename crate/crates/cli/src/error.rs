use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] treecoeff::Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{failed} of {total} checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    /// 1 for I/O and internal errors, 2 for bad arguments, 3 for exceeded
    /// caps, 4 for failed verification.
    pub fn exit_code(&self) -> u8 {
        use treecoeff::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. }) => 3,
            CliError::Core(
                E::Domain(_) | E::Parse(_) | E::WeightMismatch { .. } | E::LengthMismatch { .. },
            ) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::VerifyFailed { .. } => 4,
        }
    }
}
