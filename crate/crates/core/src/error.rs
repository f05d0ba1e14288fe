use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Shape or length mismatch.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// An iterative scheme failed to reach its tolerance within budget.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// A combinatorial or cost cap was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Operation not available for the requested ensemble/parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code per the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence(_) => 3,
            Error::Config(_) | Error::Io(_) => 2,
            _ => 2,
        }
    }
}
