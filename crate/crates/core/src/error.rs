use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain the operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The closed forms only cover `sum(parts) <= n`.
    #[error("out of scope: sum of parts m = {m} exceeds n = {n}; use the oracle instead")]
    OutOfScope { m: usize, n: usize },

    /// An exact search ran past its node budget before deciding.
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    /// The exact oracle works on graphs of at most 64 vertices.
    #[error("graph has {vertices} vertices; the oracle supports at most {max}")]
    GraphTooLarge { vertices: usize, max: usize },

    /// Malformed input file.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
