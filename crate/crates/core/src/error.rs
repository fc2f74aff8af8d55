use thiserror::Error;

/// Failure modes shared by every evaluation routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments lie outside the set where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration or quadrature did not reach the requested tolerance.
    #[error("no convergence after {iterations} iterations: {what}")]
    Convergence {
        what: &'static str,
        iterations: usize,
    },

    /// The point is valid but outside the region where an expansion's
    /// remainder bound is proven.
    #[error("region error: requires {inequality} (got {detail})")]
    Region {
        inequality: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
