use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotCoprime: {0} and {1} share a common factor")]
    NotCoprime(i64, u64),
    #[error("ZeroValuation: the valuation of zero is undefined")]
    ZeroValuation,
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("InvalidPrimePower: {0}")]
    InvalidPrimePower(String),
    #[error("FrameUndefined: {0}")]
    FrameUndefined(String),
    #[error("MalformedSymbol: {0}")]
    MalformedSymbol(String),
    #[error("MalformedPartition: {0}")]
    MalformedPartition(String),
    #[error("RankTooSmall: rank {rank} is below the minimum {min} for this family")]
    RankTooSmall { rank: usize, min: usize },
    #[error("RankMismatch: symbol has rank {found}, expected {expected}")]
    RankMismatch { found: usize, expected: usize },
    #[error("OutOfScopeParameters: {0}")]
    OutOfScopeParameters(String),
    #[error("ReducedFormRequired: {0}")]
    ReducedFormRequired(String),
    #[error("TemplateDegenerate: {0}")]
    TemplateDegenerate(String),
    #[error("ExpressionOutOfScope: {0}")]
    ExpressionOutOfScope(String),
    #[error("InternalError: {0}")]
    InternalError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
