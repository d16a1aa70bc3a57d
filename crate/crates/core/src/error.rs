use thiserror::Error;

/// Crate-wide error type.  Every fallible public operation returns this.
#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error while parsing an expression; `pos` is a 0-based byte
    /// offset into the input string.
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An identifier that is not a declared variable or generator.
    #[error("unknown identifier at position {pos}: {name}")]
    UnknownIdent { pos: usize, name: String },

    /// Operands built over different variable sets or contexts.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// A degree precondition was violated (wrong exterior degree, form
    /// degree, or grading window).
    #[error("degree error: {0}")]
    Degree(String),

    /// Division that is not exact in the polynomial ring.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// The operation needs a localization denominator or a tangent context
    /// that the supplied context does not provide.
    #[error("unsupported context: {0}")]
    Unsupported(String),

    /// A presentation (algebroid, graded Lie algebra, algebra) failed its
    /// structural validity checks.
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// A truncation window or envelope was exceeded.
    #[error("truncation overflow: {0}")]
    Truncation(String),

    /// Malformed input data (JSON structure, dimensions, labels).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
