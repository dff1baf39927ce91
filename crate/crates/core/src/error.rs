use thiserror::Error;

/// Errors raised by the algebra engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable context mismatch: {left} vs {right} variables")]
    ContextMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("minor size {size} exceeds matrix dimensions {rows}x{cols}")]
    MinorTooLarge { size: usize, rows: usize, cols: usize },

    #[error("matrix block dimensions are incompatible: {0}")]
    BlockShape(String),

    #[error("leading block A has zero determinant")]
    SingularBlock,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("ideal has infinite colength")]
    InfiniteColength,

    #[error("reduction exceeded the degree cap {cap}")]
    DegreeCap { cap: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The configuration sits on a discriminant, a tangency or a degenerate
    /// zero; retrying with perturbed parameters is expected to succeed.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
