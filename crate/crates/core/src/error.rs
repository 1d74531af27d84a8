use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Coefficient rounding failed at the maximum allowed working precision.
    #[error("precision exhausted at {digits} digits (worst residual {residual:.3e})")]
    PrecisionExhausted { digits: u32, residual: f64 },

    /// A coefficient landed half-way between integers; the expansion is unusable.
    #[error("integrality failure: rounding residual {residual:.3e} >= 0.5")]
    Integrality { residual: f64 },

    /// A budgeted computation exceeded its deadline.
    #[error("computation timed out after {seconds:.3}s ({what})")]
    Timeout { what: &'static str, seconds: f64 },

    /// A method name, flag, or config entry was not understood.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
