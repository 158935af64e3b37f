use thiserror::Error;

/// Errors raised by the numerical kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of a function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature did not converge: estimate {estimate} with error {abs_error} after {subdivisions} subdivisions"
    )]
    Convergence {
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    /// The integrand returned a non-finite value.
    #[error("integrand is not finite at x = {at}")]
    Integrand { at: f64 },

    /// A regime-specific formula was requested outside its regime.
    #[error("regime error: {0}")]
    Regime(String),

    /// Missing or inconsistent configuration (for example an unset ω_E).
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
