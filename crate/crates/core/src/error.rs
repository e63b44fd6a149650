use thiserror::Error;

/// Errors raised by the arithmetic engines and the CLI layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("module is not free over F_q[G]: {0}")]
    NotFree(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    ConfigSyntax { line: usize, msg: String },
    #[error("{0}")]
    Config(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by user input rather than by a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Invalid(_) | Error::ConfigSyntax { .. } | Error::Config(_) | Error::Unsupported(_)
        )
    }
}
