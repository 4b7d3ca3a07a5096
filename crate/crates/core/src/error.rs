use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is a perfect square")]
    PerfectSquare(String),

    #[error("residue period scan exceeded {cap} iterations")]
    CapExceeded { cap: u64 },

    #[error("no case of the movable-cone analysis applies for n = {n}, d = {d}")]
    ExhaustedCases { n: u64, d: u64 },

    #[error("n = {n} is infeasible: n^2 + n < {h2}")]
    InfeasibleN { n: u64, h2: u64 },

    #[error("Enriques surfaces need the Cossec value phi(H)")]
    MissingPhi,

    #[error("r = {r} is below the validity threshold {min}")]
    OutOfRange { r: u64, min: u64 },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
