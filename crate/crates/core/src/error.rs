use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A formula was evaluated outside the set where it is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid of {grid} points cannot resolve {count} eigenvalues (need grid >= {required})")]
    Resolution {
        grid: usize,
        count: usize,
        required: usize,
    },

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    Quadrature { estimate: f64, error_bound: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Eigensolver { sweeps: usize, off_norm: f64 },

    /// Two independent routes to the same quantity disagree.
    #[error("internal consistency check failed for {what}: {first} vs {second}")]
    Consistency {
        what: String,
        first: f64,
        second: f64,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
