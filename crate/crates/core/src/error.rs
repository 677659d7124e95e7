use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{path}: {message}")]
    InvalidGame { path: String, message: String },

    #[error("weights sum to {sum}")]
    WeightSum { sum: Rational },

    #[error("{path}: symbol {symbol:?} is not in the declared alphabet")]
    UnknownSymbol { path: String, symbol: String },

    #[error("query distribution has empty support")]
    EmptySupport,

    #[error("{path}: {message}")]
    AlphabetMismatch { path: String, message: String },

    #[error("{what} needs {required} but the budget is {budget}")]
    BudgetExceeded { what: String, required: String, budget: String },

    #[error("{path}: index {index} out of range (limit {limit})")]
    IndexOutOfRange { path: String, index: usize, limit: usize },

    #[error("event has zero probability")]
    ZeroProbability,

    #[error("{0}")]
    Unsupported(String),

    #[error("game has value 1: {0}")]
    ValueOne(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("{path}: {message}")]
    InvalidArgument { path: String, message: String },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGame { .. } => "invalid_game",
            Error::WeightSum { .. } => "weight_sum",
            Error::UnknownSymbol { .. } => "unknown_symbol",
            Error::EmptySupport => "empty_support",
            Error::AlphabetMismatch { .. } => "alphabet_mismatch",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::ZeroProbability => "zero_probability",
            Error::Unsupported(_) => "unsupported",
            Error::ValueOne(_) => "value_one",
            Error::Infeasible => "lp_infeasible",
            Error::Unbounded => "lp_unbounded",
            Error::InvalidArgument { .. } => "invalid_argument",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
        }
    }

    /// Field path of the offending input, or `""` when not tied to one.
    pub fn path(&self) -> &str {
        match self {
            Error::InvalidGame { path, .. }
            | Error::UnknownSymbol { path, .. }
            | Error::AlphabetMismatch { path, .. }
            | Error::IndexOutOfRange { path, .. }
            | Error::InvalidArgument { path, .. }
            | Error::Parse { path, .. } => path,
            Error::WeightSum { .. } | Error::EmptySupport => "support",
            _ => "",
        }
    }

    pub(crate) fn budget(what: impl Into<String>, required: impl ToString, budget: impl ToString) -> Self {
        Error::BudgetExceeded { what: what.into(), required: required.to_string(), budget: budget.to_string() }
    }

    pub(crate) fn argument(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidArgument { path: path.into(), message: message.into() }
    }

    pub(crate) fn mismatch(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::AlphabetMismatch { path: path.into(), message: message.into() }
    }
}
