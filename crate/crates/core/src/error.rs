use thiserror::Error;

/// Errors raised by constructions, measurements and verification suites.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("merit factor undefined: sidelobe energy is zero")]
    UndefinedMerit,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("size cap exceeded: {what} = {value} > {cap}")]
    SizeCap {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid family: {0}")]
    Family(String),
}

pub type Result<T> = std::result::Result<T, Error>;
