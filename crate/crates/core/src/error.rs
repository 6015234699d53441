use thiserror::Error;

use crate::election::CandidateId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scoring vector has {found} entries but the election has {expected} candidates")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs {expected} ballots")]
    BallotKind { expected: &'static str },
    #[error("scoring vector is not non-increasing")]
    NotMonotone,
    #[error("{k}-approval needs at least {k} candidates, got {m}")]
    KExceedsCandidates { k: usize, m: usize },
    #[error("candidate {0} is not in the election")]
    UnknownCandidate(CandidateId),
    #[error("invalid election: {0}")]
    InvalidElection(String),
    #[error("invalid ballot: {0}")]
    InvalidBallot(String),
    #[error("voters must all have weight 1 here")]
    WeightedNotSupported,
    #[error("the candidate cannot be made a Condorcet winner")]
    Unreachable,
    #[error("no winner exists in this election")]
    NoWinnerExists,
    #[error("the two distinguished candidates must differ")]
    SameCandidate,
    #[error("both voter lists must have odd length")]
    ParityViolation,
    #[error("constructed witness failed verification")]
    ConstructionUnverified,
    #[error("search exceeded its budget of {limit} steps")]
    SearchBudgetExceeded { limit: u64 },
    #[error("input exceeds exhaustion bound: {0}")]
    BoundExceeded(String),
    #[error("control instance is missing its {0}")]
    PoolMissing(&'static str),
    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),
    #[error("rule mismatch: {0}")]
    RuleMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
