use std::path::PathBuf;

/// Failures surfaced by the command-line front end, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("{0} self-test check(s) failed")]
    SelftestFailed(usize),
    #[error(transparent)]
    Core(#[from] phasedeficit_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SelftestFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Undefined(_) => 4,
            CliError::Core(phasedeficit_core::Error::UndefinedPhase(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
