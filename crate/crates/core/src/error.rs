use thiserror::Error;

/// Errors produced by the library. Each maps to a distinct CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("group closure exceeded the budget of {limit} elements")]
    Budget { limit: usize },
    #[error("vertex {vertex} has valence {valence}, expected 2")]
    Valence { vertex: usize, valence: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
