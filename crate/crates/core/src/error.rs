use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DglaError {
    #[error("expected an element of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: i32, found: i32 },
    #[error("element is not homogeneous (degrees {0:?})")]
    MixedDegree(Vec<i32>),
    #[error("twist point not Maurer-Cartan (curvature has a {component}-bracket term)")]
    NotMaurerCartan { component: usize },
    #[error("requested order {requested} exceeds the model's trusted order {max}")]
    OrderExceedsModel { requested: usize, max: usize },
    #[error("μₙ unavailable beyond {cap} brackets (requested {requested}, n = {n})")]
    AverageOrderCap { n: usize, requested: usize, cap: usize },
    #[error(
        "order capped by μₙ: 3-cell symmetry is certified only to {cap} brackets for n = {n} (requested {requested})"
    )]
    SymmetryOrderCap { n: usize, requested: usize, cap: usize },
    #[error("arity mismatch: expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unmapped generator {0:?}")]
    UnmappedGenerator(String),
    #[error("locality violation: {0}")]
    LocalityViolation(String),
    #[error("shelling inconsistency: {0}")]
    Shelling(String),
    #[error("chain endpoint mismatch: {0}")]
    ChainEndpoint(String),
    #[error("orientation mismatch: {0}")]
    Orientation(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, DglaError>;
