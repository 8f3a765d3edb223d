use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature failed to reach the requested tolerance.
    /// `partial` is the best available estimate, `bound` the achieved
    /// absolute error bound.
    #[error("numerical error: {message} (partial estimate {partial:e}, error bound {bound:e})")]
    Numerical {
        message: String,
        partial: f64,
        bound: f64,
    },

    /// Malformed or insufficient input data.
    #[error("data error: {0}")]
    Data(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
