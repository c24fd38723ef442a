use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site index {index} out of range for period {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("period {n} exceeds the enumeration limit n_max = {n_max} (cost grows like 2^n)")]
    ResourceLimit { n: usize, n_max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error(
        "eigensolver did not converge for a {dim}x{dim} matrix within {max_iterations} iterations"
    )]
    Solver { dim: usize, max_iterations: usize },

    #[error("spectrum not converged at N = {n_cap}: top eigenvalues still moved by {movement:e}")]
    Convergence { n_cap: usize, movement: f64 },

    #[error("invalid configuration: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
