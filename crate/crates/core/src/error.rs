use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} = {value} is outside the supported range {range}")]
    Range { what: &'static str, value: String, range: String },

    #[error("invalid angular momentum index (2j={twice_j}, 2m'={twice_row}, 2m={twice_col})")]
    InvalidIndex { twice_j: i64, twice_row: i64, twice_col: i64 },

    #[error("invalid resource parameters: {0}")]
    InvalidParams(String),

    #[error("cutoff {cutoff} truncates {tail:e} of the norm (limit {limit:e})")]
    Truncation { cutoff: usize, tail: f64, limit: f64 },

    #[error("outcome q = {q} has zero probability; its conditional state is undefined")]
    UndefinedOutcome { q: usize },

    #[error("oracle problem too large: {what} = {value} exceeds cap {cap}")]
    OracleSize { what: &'static str, value: usize, cap: usize },

    #[error("tridiagonal eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
