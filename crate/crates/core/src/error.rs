use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// A jet or series whose leading value is zero was divided by.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// `u(x)` is too close to zero for `u'/u` to be meaningful.
    #[error("pole: |u(x)| = {magnitude:e} below threshold {threshold:e} at x = {x}")]
    Pole {
        x: f64,
        magnitude: f64,
        threshold: f64,
    },

    /// The truncated series cannot certify the requested tolerance at this point.
    #[error("range: {0}")]
    Range(String),

    /// Quadrature or acceleration failed to converge.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
