use std::fmt;

use thiserror::Error;

/// Which evaluation budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Bits,
    Nodes,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Bits => f.write_str("max_bits"),
            Resource::Nodes => f.write_str("max_nodes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("budget exceeded: {resource} limit of {limit} exhausted")]
    BudgetExceeded { resource: Resource, limit: u64 },

    #[error("arity mismatch: expected {expected} argument(s), got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("malformed expression: {0}")]
    MalformedExpr(String),

    /// `0^0` was reached under [`ZeroPow::Indeterminate`](crate::ZeroPow).
    #[error("indeterminate value: 0^0 is undefined under the active convention")]
    Indeterminate,

    #[error("digit {digit} still ambiguous after {max_terms} ternary terms")]
    AmbiguousAtBudget { digit: usize, max_terms: usize },

    #[error("no convergence: successive grids still differ by >= tolerance at max_n = {max_n}")]
    NoConvergenceAtBudget { max_n: u64 },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("{context}: {message}")]
    Format { context: String, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for the failures a caller can retry with larger limits.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::AmbiguousAtBudget { .. }
                | Error::NoConvergenceAtBudget { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
