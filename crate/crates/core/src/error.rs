use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} does not divide target level {target}")]
    IncompatibleLevel { level: u32, target: u32 },
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("group of order {order} exceeds the configured limit {limit}")]
    GroupTooLarge { order: u128, limit: u128 },
    #[error("enumeration of {size} items exceeds the configured limit {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
    #[error("truncation needs {size} terms, over the configured limit {limit}")]
    TruncationTooLarge { size: u128, limit: u128 },
    #[error("unstable triple (g=0, n={n}, beta={beta:?})")]
    UnstableTriple { n: usize, beta: Vec<u32> },
    #[error("built-in theory {theory} supports primary insertions only")]
    UnsupportedDescendant { theory: String },
    #[error("no table entry for {0}")]
    MissingTableEntry(String),
    #[error("unknown base theory {0:?}")]
    UnknownTheory(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("pairing matrix is singular")]
    InconsistentPairing,
    #[error("sector vector is not admissible for the given class")]
    NotAdmissible,
    #[error("invalid boundary index: {0}")]
    InvalidBoundaryIndex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            column: 0,
            message: message.into(),
        }
    }

    /// Whether the error comes from a configured size cap.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::EnumerationTooLarge { .. }
                | Error::TruncationTooLarge { .. }
        )
    }
}
