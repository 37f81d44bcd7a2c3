use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::perm::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not of spherical type: {0}")]
    NotSpherical(String),

    #[error("engine bound exceeded: {what} needs {needed} elements, bound is {bound}")]
    BoundExceeded {
        what: String,
        needed: u64,
        bound: u64,
    },

    #[error("search resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("generator s{0} has no assigned image")]
    MissingAssignment(usize),

    #[error("case predicate violated: {0}")]
    CaseViolated(String),

    #[error("corrupt engine cache: {0}")]
    CorruptCache(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
