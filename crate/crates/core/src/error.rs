use thiserror::Error;

use crate::numerics::QuadratureResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument or parameter was violated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge within its evaluation budget (best estimate {:.15e}, error estimate {:.3e})", best.value, best.abs_error)]
    NotConverged { best: QuadratureResult },

    #[error("integrand returned NaN at abscissa {abscissa:e}")]
    NanIntegrand { abscissa: f64 },

    #[error("integral diverges (estimate {last:.6e} still growing past the evaluation budget)")]
    Divergent { last: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Failure to parse a marginal or GOS specification string.
///
/// `column` is the 1-based character position of `token` within the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{input}:{column}: invalid {field} `{token}`: {message}")]
pub struct ParseError {
    pub input: String,
    pub field: String,
    pub token: String,
    pub column: usize,
    pub message: String,
}
