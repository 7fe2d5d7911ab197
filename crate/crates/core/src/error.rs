use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `n = 0`).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A search or enumeration ran out of its node budget.
    ///
    /// `best_upper` carries the best feasible value found before giving up,
    /// when the operation has one.
    #[error("node budget of {budget} exhausted (best upper bound so far: {})",
        best_upper.map(|u| u.to_string()).unwrap_or_else(|| "none".into()))]
    BudgetExceeded { budget: u64, best_upper: Option<usize> },

    /// Two objects from incompatible alphabets or colour palettes were combined.
    #[error("palette mismatch: {left} vs {right}")]
    PaletteMismatch { left: usize, right: usize },

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A closed-form bound is undefined for the given parameters.
    #[error("formula degenerate: {0}")]
    Degenerate(String),

    /// An object that is not a valid member of its space.
    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
