use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid bounds in dimension {dim}: lower {lower} must be below upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("coordinate {dim} = {value} lies outside [{lower}, {upper}]")]
    Domain {
        dim: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("protocol violation: {0}")]
    Protocol(&'static str),
    #[error("evaluation budget of {0} already exhausted")]
    BudgetExhausted(u64),
    #[error("no records in cell")]
    EmptyCell,
}
