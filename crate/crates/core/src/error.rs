use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("epsilon entry {0} is not one of -1, 0, 1")]
    InvalidEntry(i64),
    #[error("epsilon period must be nonempty")]
    EmptyPeriod,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("sieve bound {requested} exceeds the configured budget {budget}")]
    Budget { requested: u64, budget: u64 },
    #[error("truncation order {j_max} is too small: need at least {needed}")]
    InsufficientTruncation { j_max: usize, needed: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("critical index exceeds the cap of {0}")]
    CriticalIndexCap(usize),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("integer overflow in exact coefficient arithmetic")]
    Overflow,
    #[error("s = {0} is a pole")]
    Pole(String),
    #[error("s = {s} lies outside the region of convergence Re(s) > {bound}")]
    Convergence { s: String, bound: f64 },
    #[error("tolerance {tol:e} is unachievable: {reason}")]
    Tolerance { tol: f64, reason: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
