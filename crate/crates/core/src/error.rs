use thiserror::Error;

/// Errors raised by the exact algebra and decision routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A zero character was supplied where a nontrivial one is required.
    /// Zero weights correspond to trivial summands, which are excluded.
    #[error("zero weight: the representation would contain a trivial summand")]
    TrivialSummand,

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("ambient rank must be at least 1")]
    ZeroRank,

    #[error("empty lattice basis")]
    EmptyBasis,

    #[error("lattice of rank {rank} in Z^{ambient} has an infinite annihilator")]
    InfiniteSubgroup { rank: usize, ambient: usize },

    #[error("zero representation is not a valid input")]
    ZeroRepresentation,

    #[error("multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid factored class: {0}")]
    InvalidClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;
