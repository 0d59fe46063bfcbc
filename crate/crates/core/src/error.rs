use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{n} is outside the table bound {bound}")]
    OutOfRange { n: u64, bound: u64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("{function} has no value at {n}")]
    Undefined { function: String, n: String },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}
