use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `D` must be at least 1; the walk needs a negative determinant.
    #[error("DNotPositive: D = {0} must be a positive integer")]
    DNotPositive(BigInt),

    /// `D` is a perfect square (including 1), so some total vanishes.
    #[error("DIsSquare: D = {0} is a perfect square; D must be nonsquare")]
    DIsSquare(BigInt),

    #[error("integer square root of negative value {0}")]
    NegativeSqrt(BigInt),

    /// A state the walk can never reach for nonsquare `D`. Seeing this
    /// means a bug, not bad input.
    #[error("internal state error: {0}")]
    InternalState(String),

    #[error("cannot parse step word: {0}")]
    ParseWord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
