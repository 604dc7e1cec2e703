use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge within {terms} terms (tail estimate {tail:e})")]
    NonConvergence {
        what: &'static str,
        terms: usize,
        tail: f64,
    },

    #[error("extrapolation residual {residual:e} exceeds limit {limit:e}")]
    Extrapolation { residual: f64, limit: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("constants file: {0}")]
    Constants(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
