use thiserror::Error;

/// Errors raised by the algebraic machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A bracket or action left the declared index window.
    #[error("window overflow: {what} lands on index {index} outside the window {window}")]
    WindowOverflow {
        what: String,
        index: i64,
        window: String,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("grading element does not act diagonally: {0}")]
    NonDiagonal(String),
    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),
    /// The zig-zag of a connecting homomorphism produced a value outside the injected submodule.
    #[error("value not in the injected submodule at {tuple}: {value}")]
    NotInSubmodule { tuple: String, value: String },
    #[error("cochain evaluated outside its argument window at {0}")]
    OutsideCochainWindow(String),
    #[error("inconsistent crossed-module data: {0}")]
    Inconsistent(String),
    #[error("argument count {got} does not match bidegree (expected {expected})")]
    Bidegree { expected: String, got: String },
    #[error("unknown object: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn overflow(what: impl Into<String>, index: i64, lo: i64, hi: i64) -> Error {
    Error::WindowOverflow {
        what: what.into(),
        index,
        window: format!("[{lo}, {hi}]"),
    }
}
