use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VIOLATION: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] vcx_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Input { path: PathBuf, source: vcx_core::Error },

    #[error("{0}")]
    Usage(String),

    /// A campaign saw invariant failures; artifacts were written.
    #[error("{failed} of {total} instances failed; artifacts in {dir}")]
    Campaign { failed: usize, total: usize, dir: PathBuf },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Input { source: e, .. } if e.is_invariant_violation() => {
                exit::VIOLATION
            }
            CliError::Campaign { .. } => exit::VIOLATION,
            _ => exit::USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
