use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polygon order m = {0} is invalid (need m >= 3)")]
    InvalidOrder(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{n} is represented by P_{m} ({count} ordered triples), not an exception")]
    Represented { m: u64, n: u64, count: u64 },

    #[error("exponent {requested} lies beyond the truncation bound {bound}")]
    BeyondBound { requested: u64, bound: u64 },

    #[error("no {wanted} witnesses for m = {m} below prime ceiling {ceiling} (found {found})")]
    WitnessSearchExhausted {
        m: u64,
        wanted: usize,
        found: usize,
        ceiling: u64,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True when the computation ran but a checked property did not hold.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::Verification(_) | Error::WitnessSearchExhausted { .. }
        )
    }
}
