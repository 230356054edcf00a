use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An exhaustive operation was requested beyond its hard enumeration limit.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Exact checking was requested on an instance too large for the exact mode.
    #[error("exact mode infeasible: {0}")]
    ModeInfeasible(String),

    /// A set-pair system does not satisfy its declared kind; `i`/`j` are the
    /// 0-based indices of the offending pair of pairs.
    #[error("pair system violates the {kind} condition at pair indices ({i}, {j})")]
    KindViolation { kind: String, i: usize, j: usize },

    /// Raised when a transversal target is contained in the excluded set,
    /// i.e. F_j \ F_i is empty.
    #[error("no transversal: set {j} is contained in set {i}")]
    NoTransversal { i: usize, j: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// The closed-form value disagreed with the brute-force oracle. This is an
    /// implementation bug by definition, never a mathematical discovery.
    #[error("crosscheck mismatch: {0}")]
    CrosscheckMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
