//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by evaluation, classification and fitting routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative evaluation failed to reach the requested tolerance.
    #[error("series for {context} did not converge after {terms} terms (last term {last_term:e})")]
    Convergence {
        context: &'static str,
        terms: usize,
        last_term: f64,
    },

    /// A least-squares problem was too ill-conditioned to trust.
    #[error("ill-conditioned fit: condition number {cond:e} exceeds cap {cap:e}")]
    IllConditioned { cond: f64, cap: f64 },

    /// Adaptive quadrature could not meet its tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
