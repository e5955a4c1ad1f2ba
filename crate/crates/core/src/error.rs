use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidType(String),
    #[error("invalid parabolic datum: {0}")]
    InvalidDatum(String),
    #[error("{0} is not a root of the ambient algebra")]
    NotARoot(String),
    #[error("{0} is not a t-root of this system")]
    NotATRoot(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("{what} has {count} elements, above the cap of {cap}")]
    CapExceeded { what: String, count: u128, cap: u128 },
    #[error("negative multiplicity while decomposing: {0}")]
    NotAModuleCharacter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
