use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Budget failures are kept apart from plain invalid input because callers
/// treat them differently: a budget error means "shrink the instance or raise
/// the cap", never "the answer is no".
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("cannot extend {measure} by {value}: new element must exceed the top")]
    InvalidExtension { measure: String, value: u32 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{0} is not a prime at most 31")]
    InvalidPrime(u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver is not tame: {0}")]
    NotTame(String),

    #[error("subspace tuple is not closed under the arrow maps (arrow {arrow})")]
    NotClosed { arrow: usize },

    #[error("vertex {vertex} is neither a sink nor a source")]
    NotSinkOrSource { vertex: usize },

    #[error("zero representation is not allowed here")]
    ZeroModule,

    #[error("module is decomposable")]
    Decomposable,

    #[error("module is not a quasi-simple regular module")]
    NotQuasiSimple,

    #[error("{what} exceeds budget: needs {needed}, cap {cap}")]
    Budget { what: String, needed: u64, cap: u64 },

    #[error("undecided within budget: {0}")]
    Undecided(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by an enumeration cap rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Undecided(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
