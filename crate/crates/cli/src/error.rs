use std::process::ExitCode;

/// CLI failures, bucketed by exit code: 2 for bad input, 3 for a failed
/// validation sweep, 4 for filesystem trouble. Flag parsing errors exit
/// with clap's own code 2 before any of this runs.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Io(_) => 4,
        })
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {err}"))
    }
}

impl From<cograde_core::Error> for CliError {
    fn from(err: cograde_core::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        if err.is_io_error() {
            CliError::Io(err.to_string())
        } else {
            CliError::Input(err.to_string())
        }
    }
}
