use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] onb_core::Error),

    #[error("{0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// A closed downstream pipe, e.g. `onb sample ... | head`.
    pub fn is_broken_pipe(&self) -> bool {
        match self {
            CliError::Io { source, .. } => source.kind() == std::io::ErrorKind::BrokenPipe,
            CliError::Csv { source, .. } => {
                matches!(source.kind(), csv::ErrorKind::Io(e) if e.kind() == std::io::ErrorKind::BrokenPipe)
            }
            _ => false,
        }
    }

    /// 1 verification failure, 2 configuration, 3 numeric.
    pub fn exit_code(&self) -> i32 {
        use onb_core::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(E::Evaluation { .. } | E::Singular(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
