use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge vertex {vertex} out of range for {n} vertices")]
    EdgeOutOfRange { vertex: i64, n: usize },

    #[error("edge has {found} distinct vertices, expected {expected}")]
    EdgeWrongArity { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires uniformity {expected}, got {found}")]
    UnsupportedUniformity { expected: usize, found: usize },

    #[error("uniformity mismatch: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grid has {points} points, limit is {limit}")]
    GridTooLarge { points: u128, limit: u128 },

    #[error("pair {{{v1},{v2}}} has codegree {codegree}, need at least {needed}")]
    CodegreeTooSmall {
        v1: usize,
        v2: usize,
        codegree: usize,
        needed: usize,
    },

    #[error("pair {{{v1},{v2}}} is not contained in any edge")]
    PairNotPresent { v1: usize, v2: usize },

    #[error("family member {index} is not 2-covered")]
    NotTwoCovered { index: usize },

    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },

    #[error("malformed hypergraph json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
