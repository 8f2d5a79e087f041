use thiserror::Error;

/// Failure modes shared by every numerical route in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = 1")]
    PoleAtOne,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tolerance not met in {what}: achieved {achieved:e}, target {target:e}")]
    ToleranceNotMet {
        what: &'static str,
        achieved: f64,
        target: f64,
    },
    #[error("Bateman expansion invalid: {0}")]
    BatemanInvalid(String),
    #[error("Euler-Maclaurin remainder bound could not be evaluated: {0}")]
    RemainderUnbounded(String),
    #[error("branch cut crossed: {0}")]
    Branch(String),
    #[error("Monte Carlo horizon too small: {0}")]
    HorizonTooSmall(String),
    #[error("root finder did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("result overflows the floating-point range: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn tolerance<T: crate::Real>(what: &'static str, achieved: T, target: T) -> Self {
        Error::ToleranceNotMet {
            what,
            achieved: achieved.to_f64_lossy(),
            target: target.to_f64_lossy(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
