use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("empty document: expected the header `coalg-format 1`")]
    EmptyDocument,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] comono_core::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Every error is an input error as far as the exit status goes.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
