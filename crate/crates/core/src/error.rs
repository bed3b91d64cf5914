use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge {index} is invalid: {reason}")]
    InvalidEdge { index: usize, reason: String },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A brute-force routine was asked to go beyond its configured size limit.
    #[error("{what} is {actual}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sequence is not a chain")]
    NotAChain,

    #[error("f-table entry {0} is missing")]
    MissingEntry(usize),

    #[error("window [{start}, {end}) runs past the f-table (length {len})")]
    WindowOutOfTable { start: usize, end: usize, len: usize },

    #[error("colorer produced an improper coloring ({0})")]
    ImproperColoring(&'static str),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
