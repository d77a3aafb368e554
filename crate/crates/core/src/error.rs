use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures surfaced by the workbench.
///
/// Values are carried as decimal strings so the error stays `Clone` and can be
/// cached alongside successful results.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("integrand is not finite at x = {at} (value {value})")]
    Integrand { at: String, value: String },
    #[error("quadrature did not converge: error estimate {estimate} above tolerance {tol}")]
    NotConverged { estimate: String, tol: String },
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("outside the index budget: {0}")]
    Budget(String),
    #[error("routes {first} and {second} disagree by {diff}")]
    CrossRoute {
        first: String,
        second: String,
        diff: String,
    },
    #[error("unknown id `{0}`")]
    UnknownId(String),
}
