use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Quadrature failures carry the best estimate so callers that can live
/// with a flagged result still get a number.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at x = {0}")]
    Pole(f64),

    #[error("result exceeds the floating-point range")]
    Overflow,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("no convergence: estimate {estimate:e} with error estimate {abs_error:e} after {evaluations} evaluations")]
    NoConvergence {
        estimate: f64,
        abs_error: f64,
        evaluations: usize,
    },

    #[error("Monte Carlo standard error {std_error:e} exceeds tolerance after {samples} samples (estimate {estimate:e})")]
    MonteCarloVariance {
        estimate: f64,
        std_error: f64,
        samples: usize,
    },

    #[error("unknown kernel `{0}`")]
    UnknownKernel(String),

    #[error("no closed form for {kernel} with n = {n}")]
    NoClosedForm { kernel: String, n: usize },

    #[error("modulation destroys integrability: {0}")]
    Decay(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
