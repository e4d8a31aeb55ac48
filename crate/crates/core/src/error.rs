use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GvError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational {0} has a prime factor above the factoring bound")]
    Unfactorable(String),
    #[error("value is not representable: {0}")]
    NotRepresentable(String),
    #[error("cannot parse scalar {0:?}: {1}")]
    Parse(String, String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unknown subspace {0:?}")]
    UnknownSubspace(String),
    #[error("backend mismatch: {0}")]
    Backend(String),
    #[error("missing decomposition: {0}")]
    MissingDecomposition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("form is not expressible in the split basis: {0}")]
    NotSplit(String),
    #[error("no Euler proportionality for this row: {0}")]
    NoEulerProportionality(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, GvError>;
