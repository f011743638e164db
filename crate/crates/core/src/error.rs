use thiserror::Error;

/// Errors raised by the kernel, the closed-form solutions and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FddeError {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested evaluation is outside the envelope the algorithm can
    /// deliver at the advertised accuracy.
    #[error("capability error: {0}")]
    Capability(String),

    /// The operation was called with an incompatible problem or variant.
    #[error("usage error: {0}")]
    Usage(String),

    /// A time-stepping scheme failed at a given step.
    #[error("solver failure at step {step} (t = {t}): {reason}")]
    Solver { step: usize, t: f64, reason: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, FddeError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(FddeError::Domain(msg.into()))
}
