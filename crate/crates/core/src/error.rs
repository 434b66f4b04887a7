use thiserror::Error;

/// Errors raised while building or evaluating test procedures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate problem: {0}")]
    DegenerateProblem(String),

    #[error("indistinguishable hypotheses: Q(theta0) = Q(theta1) = {0}")]
    Indistinguishable(f64),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("observation {value} lies outside the support of {family}")]
    OutOfSupport { family: &'static str, value: f64 },

    #[error("procedure was built for n = {expected} but the sample has {got} observations")]
    SampleSizeMismatch { expected: usize, got: usize },

    #[error("capacity exceeded: {requested} points requested, limit is {limit}")]
    Capacity { requested: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
