use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("variety is not projective: nef cone is not full-dimensional")]
    NotProjective,
    #[error("degree matrix rejected: {0}")]
    BadDegreeMatrix(String),
    #[error("nef cone is not simplicial; supply nef generators explicitly")]
    NefGeneratorsUnavailable,
    #[error("not a cone of the fan: {0:?}")]
    NotACone(Vec<usize>),
    #[error("one-dimensional center {0:?}: blowup is an isomorphism")]
    OneDimensionalCenter(Vec<usize>),
    #[error("class must be nonzero")]
    ZeroClass,
    #[error("class is not integral")]
    NotIntegral,
    #[error("unbounded pattern polytope (fan not complete?)")]
    UnboundedPolytope,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unsupported complex: {0}")]
    UnsupportedComplex(String),
    #[error("not a two-generator complete intersection: {0}")]
    NotCompleteIntersection(String),
    #[error("sequence is not monotone at index {0}")]
    NotMonotone(u32),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
