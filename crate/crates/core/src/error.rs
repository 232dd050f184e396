use thiserror::Error;

use crate::epim::EpiWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("parse error at offset {position} (token {token:?}): {reason}")]
    Parse {
        token: String,
        position: usize,
        reason: String,
    },

    #[error("division by zero while evaluating continued fraction at entry {index}")]
    ZeroDivision { index: usize },

    #[error("{value} is not a two-bridge knot fraction: {reason}")]
    NotAKnotFraction { value: String, reason: &'static str },

    #[error("word {0} does not represent a knot")]
    NotAKnot(String),

    #[error("crossing number {c} exceeds the enumeration ceiling {ceiling}")]
    ResourceBound { c: u32, ceiling: u32 },

    #[error("closed form {formula} at c = {c} is not an integer")]
    NonIntegralFormula { formula: &'static str, c: u32 },

    #[error("invalid composition parameters: {0}")]
    InvalidParams(String),

    #[error("adjacent block entries cancel when merging at gap {gap}")]
    MergeCancellation { gap: usize },

    #[error("epimorphism search exceeded its budget of {budget} compositions ({} witnesses found so far)", .partial.len())]
    BudgetExceeded {
        budget: u64,
        partial: Vec<EpiWitness>,
    },

    #[error("inequality audit failed: {0}")]
    AuditFailure(String),
}
