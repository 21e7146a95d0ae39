use alloc::string::String;

/// Failure modes of the table engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("entry ({p},{k}) is out of range: {reason}")]
    Support {
        p: i64,
        k: i64,
        reason: &'static str,
    },

    #[error("bounded entry encountered where an exact dimension is required ({context})")]
    BoundedEntry { context: String },

    #[error("Kunneth guard: {detail}")]
    KunnethGuard { detail: String },

    #[error(
        "matrix shape mismatch: expected {expected_rows}x{expected_cols}, found {rows}x{cols}"
    )]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("bigraded maps do not match: {0}")]
    Mismatch(String),

    #[error("projector is not idempotent at ({p},{k})")]
    NotIdempotent { p: i64, k: i64 },

    #[error("group generator is not invertible at ({p},{k})")]
    NotInvertible { p: i64, k: i64 },

    #[error("group action: {0}")]
    Group(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: i64, found: i64 },

    #[error("atom `{name}`: {reason}")]
    Atom { name: String, reason: String },

    #[error("duality is only available for smooth or finite-quotient realizations")]
    DualityUnavailable,

    #[error("negative dimension produced at ({p},{k})")]
    NegativeDimension { p: i64, k: i64 },

    #[error("coefficient overflow")]
    Overflow,

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
