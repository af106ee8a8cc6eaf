use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid election: {0}")]
    InvalidElection(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("shift action has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid price function for voter {voter}: {violation}")]
    InvalidPrice { voter: usize, violation: crate::pricing::PriceViolation },
    #[error("rule not supported by this solver: {0}")]
    RuleNotSupported(String),
    #[error("price functions are not {0}")]
    WrongPriceFamily(&'static str),
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),
    #[error("construction precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::EnumerationTooLarge(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
