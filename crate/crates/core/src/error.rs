use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {what} = {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("variable sets overlap on axis {0}")]
    OverlappingSets(usize),

    /// A probability table row is not a probability vector.
    #[error("invalid probability table {table}: row {row} sums to {sum}")]
    InvalidTable { table: &'static str, row: String, sum: f64 },

    #[error("lattice of {lattice_size} points exceeds the evaluation budget of {budget}")]
    BudgetExceeded { lattice_size: u128, budget: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { what, value, reason }
    }
}
