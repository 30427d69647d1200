use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("generator is not in puncturable form: {0}")]
    Structure(String),

    #[error("scaled generator is not integral: {0}")]
    Integrality(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("size cap exceeded: {what} is {size}, cap {cap}")]
    CapExceeded { what: &'static str, size: String, cap: u64 },

    #[error("no nonzero lattice vector of weight <= {cap}; raise the cap")]
    Inconclusive { cap: u64 },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("hadamard matrix is not symmetric: {0}")]
    Asymmetric(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
