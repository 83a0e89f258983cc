use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller asked for something the operation's contract does not cover.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// The ideal handed in as a prime turned out not to be prime.
    #[error("inconsistent prime: {0}")]
    InconsistentPrime(String),
    #[error("not dualisable: {0}")]
    NotDualisable(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
