use std::path::PathBuf;

use reload_core::Error as CoreError;
use thiserror::Error;

/// Failures surfaced by a subcommand, each tied to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{context}: {source}")]
    Core { context: String, source: CoreError },

    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn core(context: impl Into<String>, source: CoreError) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core { source, .. } => match source {
                CoreError::Parse { .. } => 64,
                CoreError::EnumerationBudget { .. } | CoreError::TableCap { .. } => 70,
                CoreError::NotACactus { .. }
                | CoreError::Disconnected
                | CoreError::InvalidDecomposition(_)
                | CoreError::Precondition(_)
                | CoreError::CostOverflow => 65,
                _ => 1,
            },
            CliError::Mismatch(_) => 65,
            CliError::Io { .. } => 1,
        }
    }
}

pub fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
