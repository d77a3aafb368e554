//! Extended-precision workbench for the higher derivatives of the Riemann
//! zeta function, the Stieltjes constants and their integral representations.
//!
//! Every real quantity is an MPFR float ([`ExtReal`]) whose precision comes
//! from a [`PrecisionConfig`]. The modules build on each other:
//!
//! - [`bell`]: exact complete and partial Bell polynomials and their inversion.
//! - [`specfun`]: digamma, polygamma, Euler–Maclaurin zeta and Stieltjes
//!   oracles, Hermite and Binet integrals.
//! - [`quadrature`]: double-exponential quadrature for the integral classes
//!   that appear here.
//! - [`identities`]: the integrand kernels, the J/K/H/I functions and the
//!   catalog of checkable identities.
//! - [`constants`]: the γ, η, σ, b and d sequences and the several routes to
//!   ζ⁽ⁿ⁾(0), plus sign and inequality checks.
//!
//! [`Workbench`] ties a precision to the caches of expensive shared values.

pub mod bell;
pub mod constants;
mod error;
mod numdiff;
pub mod identities;
mod precision;
pub mod quadrature;
pub mod specfun;
mod workbench;

pub use error::{Error, Result};
pub use precision::{ExtReal, PrecisionConfig};
pub use workbench::Workbench;
