use thiserror::Error;

use crate::chain::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(Violation),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("morphisms not composable: {0}")]
    NotComposable(String),
    #[error("target mismatch: {0}")]
    TargetMismatch(String),
    #[error("source mismatch: {0}")]
    SourceMismatch(String),
    #[error("support guard exceeded: degree {degree} outside +/-{limit}")]
    SupportGuard { degree: i64, limit: i64 },
    #[error("lifting problem has no solution: {0}")]
    LiftFailure(String),
    #[error("factorizations are not functorial: {0}")]
    NonFunctorial(String),
    #[error("category exceeds max n = {0}")]
    CatExceeded(usize),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance does not support {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
