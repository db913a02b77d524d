use std::path::PathBuf;

/// Problems with the configuration or the command line, reported before any
/// computation starts.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("invalid `{key}`: {reason}")]
    Invalid { key: String, reason: String },

    #[error("missing config block [{0}]")]
    MissingBlock(&'static str),

    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("numerical failure: {0}")]
    Numerical(#[from] qcnr_core::Error),

    #[error("{failed} of {total} sweep points failed")]
    PartialFailure { failed: usize, total: usize },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed input in {}: {reason}", path.display())]
    Input { path: PathBuf, reason: String },
}

impl CliError {
    /// Process exit status: 2 config, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::PartialFailure { .. } => 3,
            CliError::Io { .. } | CliError::Input { .. } => 4,
        }
    }
}
