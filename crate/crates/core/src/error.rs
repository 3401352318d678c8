use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive generator")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    NotSquare {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("polytope not full-dimensional")]
    Degenerate,

    #[error("unsupported ambient dimension {0} (only 2 and 3 are supported)")]
    UnsupportedDimension(usize),

    #[error("dual undefined: the origin is not an interior point")]
    DualUndefined,

    #[error("not a Fano polytope")]
    NotFano,

    #[error("weights {0:?} are not well-formed")]
    NotWellFormed(Vec<u64>),

    #[error("trivial quotient: the generator is integral")]
    TrivialQuotient,

    #[error("generator scaled by {k} is not integral")]
    NonIntegralGenerator { k: u64 },

    #[error("generator spans a superlattice of index {index}, expected {k}")]
    WrongIndex { index: String, k: u64 },

    #[error("generated group exceeds {0} elements")]
    GroupTooLarge(usize),

    #[error("group element does not preserve the vertex set")]
    NotASymmetry,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),

    #[error("invalid fixture: {0}")]
    Fixture(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
