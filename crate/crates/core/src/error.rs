use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("refusing to enumerate Σ_{degree}: bound is {bound}")]
    GroupTooLarge { degree: usize, bound: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("element list is not closed under composition: averaging operator is not idempotent")]
    NotASubgroup,

    #[error("infinite coproduct: {0}")]
    InfiniteSum(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("operad mismatch: {0}")]
    OperadMismatch(String),

    #[error("invalid Hopf data: {0}")]
    InvalidHopf(String),

    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid manifest: {0}")]
    Manifest(String),
}
