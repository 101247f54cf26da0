use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Library(#[from] degenac::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {reason}")]
    Input { path: PathBuf, reason: String },
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CENSORED: i32 = 4;
/// `simulate` stopped on its predicate or its step budget rather than at `t_end`.
pub const EXIT_EARLY_STOP: i32 = 5;

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn input(path: &Path, reason: impl Into<String>) -> Self {
        CliError::Input {
            path: path.to_path_buf(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        use degenac::Error as E;
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Input { .. } => EXIT_CONFIG,
            CliError::Library(
                E::InvalidParameter { .. } | E::InvalidJumps(_) | E::NotCompacton { .. } | E::FieldMismatch(_),
            ) => EXIT_CONFIG,
            CliError::Library(_) => EXIT_NUMERICAL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        let blow = CliError::from(degenac::Error::BlowUp { step: 3, time: 0.1 });
        assert_eq!(blow.exit_code(), EXIT_NUMERICAL);
        let quad = CliError::from(degenac::Error::QuadratureFailed {
            value: 1.0,
            error_estimate: 1.0,
            panels: 10,
        });
        assert_eq!(quad.exit_code(), EXIT_NUMERICAL);
        let bad = CliError::from(degenac::Error::InvalidJumps("unsorted".into()));
        assert_eq!(bad.exit_code(), EXIT_CONFIG);
        assert_eq!(CliError::Config("x".into()).exit_code(), EXIT_CONFIG);
    }
}
