use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("transition frequencies differ: {a} vs {b} (relative tolerance 1e-9)")]
    FrequencyMismatch { a: f64, b: f64 },

    /// Evaluation exactly at (or numerically on top of) a simple pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A quadrature or acceleration step did not reach its target accuracy.
    /// `partial` is the best estimate obtained before giving up.
    #[error("accuracy target missed: {what} (partial {partial:e}, error estimate {estimate:e})")]
    Accuracy {
        what: String,
        partial: f64,
        estimate: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
