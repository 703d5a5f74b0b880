use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("map is not injective: vertices {first} and {second} both map to {target}")]
    NonInjective {
        first: usize,
        second: usize,
        target: usize,
    },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("map has length {got}, expected {expected}")]
    MapLength { got: usize, expected: usize },

    #[error("weight matrix is not symmetric at ({row}, {col}): {a} vs {b}")]
    Asymmetric {
        row: usize,
        col: usize,
        a: f64,
        b: f64,
    },

    #[error("negative weight {value} at ({row}, {col})")]
    NegativeWeight { row: usize, col: usize, value: f64 },

    #[error("non-finite weight at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("guard exceeded: {what} requires {required}, limit is {limit}")]
    Guard {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error(
        "reduction with N = {cloud} needs {cells} matrix cells, budget is {budget} \
         (raise it with MAXQAP_MEMORY_BUDGET)"
    )]
    MemoryBudget { cloud: u128, cells: u128, budget: u128 },

    #[error("simplex iteration limit {0} exceeded")]
    IterationLimit(usize),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
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
