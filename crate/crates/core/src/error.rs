use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p and q must be coprime with q != 0 (got p={p}, q={q})")]
    NotCoprime { p: i64, q: i64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy error: {what} (achieved {achieved:e}, target {target:e})")]
    Accuracy { what: String, achieved: f64, target: f64 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotCoprime { .. } | Error::Domain(_) | Error::Branch(_) => 2,
            Error::Accuracy { .. } | Error::Convergence(_) | Error::Internal(_) => 3,
            Error::Infeasible(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
