use thiserror::Error;

/// Errors raised by the operad constructions and the homology engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("action is not order-preserving: {0}")]
    NotOrderPreserving(String),

    #[error("boundary matrices have mismatched dimensions at degree {degree}: {detail}")]
    DimensionMismatch { degree: usize, detail: String },

    #[error("boundary of boundary is nonzero at degree {0}")]
    NonzeroBoundarySquare(usize),

    #[error("budget exceeded: {what} would need {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u64,
        budget: u64,
    },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("filtration mismatch: {0}")]
    FiltrationMismatch(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("interiors of cubes {0} and {1} overlap")]
    Overlap(usize, usize),

    #[error("no least cell contains the configuration: {0}")]
    NoLeastCell(String),

    #[error("not a monoid: {0}")]
    NotMonoid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
