//! Special functions at working precision.
//!
//! `gamma` holds the digamma family and Stirling's series, `zeta` the
//! Euler–Maclaurin oracles for ζ, ζ(s, a), their derivatives and the
//! Stieltjes constants, and `hermite` the Bose-weight integrals.

mod bernoulli;
mod gamma;
mod hermite;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_even};
pub use gamma::{digamma, digamma_remainder, ln_gamma, polygamma, trigamma_remainder};
pub(crate) use hermite::bose_integral;
pub use hermite::{binet_integral, hurwitz_deriv0, hurwitz_hermite, log_gamma_binet};
pub(crate) use zeta::power_log_sum;
pub use zeta::{
    generalized_stieltjes, hurwitz_em, hurwitz_em_deriv, stieltjes_oracle, stieltjes_table, zeta_deriv_em, zeta_em,
    zeta_minus_one, zeta_times_pole, STIELTJES_MAX,
};
