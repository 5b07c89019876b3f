use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("conductor {0} exceeds the configured bound {1}")]
    ConductorOverflow(u32, u32),
    #[error("{0} is not a multiple of the conductor {1}")]
    NotAMultiple(u32, u32),
    #[error("group not finite within the order bound {0}")]
    OrderBoundExceeded(usize),
    #[error("generator matrix is singular")]
    SingularGenerator,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("subgroup has index {0}, expected 2")]
    BadIndex(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("not a character: inner product with irreducible {0} is {1}")]
    NotACharacter(usize, String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("unknown catalog name {0:?}")]
    UnknownCatalog(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("character table construction failed: {0}")]
    TableFailure(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
