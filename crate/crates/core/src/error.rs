use thiserror::Error;

/// Errors raised by the AFDM chain and the experiment runner.
#[derive(Debug, Error)]
pub enum AfdmError {
    /// A vector had the wrong length for the configured frame.
    #[error("input shape mismatch: {0}")]
    InputShape(String),

    /// A signal was in the wrong state (for example the prefix is still attached).
    #[error("invalid signal state: {0}")]
    State(String),

    /// A configuration violates one of the frame or guard bounds.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl AfdmError {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        AfdmError::Io { path: path.as_ref().display().to_string(), source }
    }
}

pub type Result<T> = std::result::Result<T, AfdmError>;
