//! The three integrand kernels
//!
//! - A(u) = log u − ψ(1+u) + 1/(2(1+u)),
//! - B(u) = ψ′(1+u) − 1/(1+u),
//! - DB(u) = log(1+u) − ψ(1+u),
//!
//! and their log-moments over (0, ∞).
//!
//! Past the asymptotic switch each kernel is rebuilt from the digamma and
//! trigamma remainders, whose series never subtract nearly equal numbers.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::quadrature::{integrate_log_moment_with_tail, AsymptoticTail};
use crate::specfun::{bernoulli, digamma, digamma_remainder, polygamma, trigamma_remainder};
use crate::{Error, PrecisionConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kernel {
    A,
    B,
    DB,
}

impl Kernel {
    pub const ALL: [Kernel; 3] = [Kernel::A, Kernel::B, Kernel::DB];

    pub fn id(self) -> &'static str {
        match self {
            Kernel::A => "A",
            Kernel::B => "B",
            Kernel::DB => "DB",
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kernel::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

pub fn kernel_eval(cfg: &PrecisionConfig, k: Kernel, u: &Float) -> Result<Float> {
    if !u.is_finite() || *u <= 0 {
        return Err(Error::Domain(format!("kernel {k} needs u > 0, got {u}")));
    }
    let bits = cfg.bits();
    let one_plus = Float::with_val(bits, u + 1u32);
    let large = u.to_f64() >= cfg.asymptotic_switch;
    match (k, large) {
        (Kernel::A, false) => {
            let half = Float::with_val(bits, &one_plus * 2u32).recip();
            Ok(Float::with_val(bits, u.ln_ref()) - digamma(cfg, &one_plus)? + half)
        }
        // ψ(1+u) = ψ(u) + 1/u turns A into −R(u) − 1/(2u(1+u)).
        (Kernel::A, true) => {
            let r = digamma_remainder(cfg, u)?;
            let tail = Float::with_val(bits, u * &one_plus) * 2u32;
            Ok(-r - tail.recip())
        }
        (Kernel::B, false) => Ok(polygamma(cfg, 1, &one_plus)? - Float::with_val(bits, one_plus.recip_ref())),
        // ψ′(1+u) = ψ′(u) − 1/u² turns B into R₁(u) + (u−1)/(2u²(1+u)).
        (Kernel::B, true) => {
            let r1 = trigamma_remainder(cfg, u)?;
            let u2 = Float::with_val(bits, u.square_ref());
            let num = Float::with_val(bits, u - 1u32);
            Ok(r1 + num / (u2 * &one_plus * 2u32))
        }
        (Kernel::DB, false) => Ok(Float::with_val(bits, u.ln_1p_ref()) - digamma(cfg, &one_plus)?),
        (Kernel::DB, true) => {
            let r = digamma_remainder(cfg, &one_plus)?;
            Ok(Float::with_val(bits, &one_plus * 2u32).recip() - r)
        }
    }
}

/// Number of terms kept in the large-u expansions; at u = 10⁶ the next term
/// is far below any working precision we support up to a few hundred digits.
const TAIL_TERMS: u32 = 40;

/// Large-u expansion Σ cₙ u⁻ⁿ of kernel A or B.
///
/// A: cₙ = (−1)ⁿ⁻¹/2, plus Bₙ/n for even n (so c₂ = −5/12).
/// B: c₂ = 1/2 and cₙ = (−1)ⁿ for n ≥ 3, plus Bₙ₋₁ for odd n.
pub fn asymptotic_tail(cfg: &PrecisionConfig, k: Kernel) -> Result<AsymptoticTail> {
    let bits = cfg.bits();
    let mut terms = Vec::new();
    for n in 2..=TAIL_TERMS {
        let c = match k {
            Kernel::A => {
                let mut c = Float::with_val(bits, if n % 2 == 0 { -0.5 } else { 0.5 });
                if n % 2 == 0 {
                    c += Float::with_val(bits, bernoulli(n as usize)) / n;
                }
                c
            }
            Kernel::B if n == 2 => Float::with_val(bits, 0.5),
            Kernel::B => {
                let mut c = Float::with_val(bits, if n % 2 == 0 { 1 } else { -1 });
                if n % 2 == 1 {
                    c += Float::with_val(bits, bernoulli(n as usize - 1));
                }
                c
            }
            Kernel::DB => {
                return Err(Error::Argument(
                    "kernel DB decays like 1/u and has no integrable log-moments".into(),
                ))
            }
        };
        terms.push((n, c));
    }
    Ok(AsymptoticTail { terms })
}

/// Σ cₙ u⁻ⁿ from [`asymptotic_tail`].
pub fn asymptotic_value(cfg: &PrecisionConfig, k: Kernel, u: &Float) -> Result<Float> {
    let tail = asymptotic_tail(cfg, k)?;
    let inv = Float::with_val(cfg.bits(), u.recip_ref());
    let mut acc = cfg.zero();
    for (_, c) in tail.terms.iter().rev() {
        acc += c;
        acc *= &inv;
    }
    Ok(acc * inv)
}

/// ∫₀^∞ K(u) logᵏu du for K = A or B, k ≤ 9, at the configured quadrature
/// tolerance. Uncached; [`crate::Workbench::kernel_moment`] memoizes it.
pub fn kernel_log_moment(cfg: &PrecisionConfig, k: Kernel, power: u32) -> Result<Float> {
    let tail = asymptotic_tail(cfg, k)?;
    let tol = cfg.quad_tol();
    integrate_log_moment_with_tail(cfg, |u: &Float| kernel_eval(cfg, k, u), power, tol, &tail)?.into_value(tol)
}
