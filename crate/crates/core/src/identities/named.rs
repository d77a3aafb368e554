//! The auxiliary functions J, K, H and I.
//!
//! J, K and H are arctan integrals against Bose or Fermi weights; I is the
//! integral of the digamma remainder, which also has a closed form through
//! log Γ.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::quadrature::{integrate, Decay, Domain};
use crate::specfun::{binet_integral, bose_integral, digamma_remainder, ln_gamma};
use crate::{Error, PrecisionConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFunction {
    J,
    K,
    H,
    I,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 4] = [NamedFunction::J, NamedFunction::K, NamedFunction::H, NamedFunction::I];

    pub fn id(self) -> &'static str {
        match self {
            NamedFunction::J => "J",
            NamedFunction::K => "K",
            NamedFunction::H => "H",
            NamedFunction::I => "I",
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NamedFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedFunction::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

pub(crate) fn check_positive(u: &Float) -> Result<()> {
    if !u.is_finite() || *u <= 0 {
        return Err(Error::Domain(format!("need u > 0, got {u}")));
    }
    Ok(())
}

/// ∫₀^∞ g(x)/(e^{πx} + 1) dx.
pub(crate) fn fermi_integral<G>(cfg: &PrecisionConfig, g: G) -> Result<Float>
where
    G: Fn(&Float) -> Result<Float>,
{
    let bits = cfg.bits();
    let pi = cfg.pi();
    let tol = cfg.quad_tol();
    let d = Domain::half_line(Decay::Exponential)?;
    integrate(
        cfg,
        |x: &Float| {
            let denom = Float::with_val(bits, x * &pi).exp() + 1u32;
            Ok(g(x)? / denom)
        },
        &d,
        tol,
    )?
    .into_value(tol)
}

/// log(u² + x²)·arctan(x/u), the common numerator of J and H.
fn log_arctan(bits: u32, u: &Float, x: &Float) -> Float {
    let r2 = Float::with_val(bits, u.square_ref()) + Float::with_val(bits, x.square_ref());
    let angle = Float::with_val(bits, x / u).atan();
    r2.ln() * angle
}

pub fn named_function_eval(cfg: &PrecisionConfig, f: NamedFunction, u: &Float) -> Result<Float> {
    check_positive(u)?;
    let bits = cfg.bits();
    match f {
        NamedFunction::K => binet_integral(cfg, u),
        NamedFunction::J => bose_integral(cfg, |x: &Float| Ok(log_arctan(bits, u, x))),
        NamedFunction::H => fermi_integral(cfg, |x: &Float| Ok(log_arctan(bits, u, x))),
        NamedFunction::I => {
            let tol = cfg.quad_tol();
            let d = Domain::half_line(Decay::Algebraic(2.0))?;
            integrate(
                cfg,
                |t: &Float| digamma_remainder(cfg, &Float::with_val(bits, t + u)),
                &d,
                tol,
            )?
            .into_value(tol)
        }
    }
}

/// I(u) = ½log 2π − log Γ(u) + u log u − u − ½log u, the antiderivative of
/// the digamma remainder taken to infinity with Stirling's limit.
pub fn i_closed_form(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    check_positive(u)?;
    let bits = cfg.bits();
    let lu = Float::with_val(bits, u.ln_ref());
    let u_lu = Float::with_val(bits, u * &lu);
    Ok(cfg.ln_2pi() / 2u32 - ln_gamma(cfg, u)? + u_lu - u - lu / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn values_at_one() {
        let c = cfg();
        let one = c.num(1);
        let k = named_function_eval(&c, NamedFunction::K, &one).unwrap();
        let k_expect = c.ratio(1, 2) - c.ln_2pi() / 4u32;
        assert!(close(&k, &k_expect, 1e-26), "{k}");
        let i = named_function_eval(&c, NamedFunction::I, &one).unwrap();
        let i_expect = c.ln_2pi() / 2u32 - 1u32;
        assert!(close(&i, &i_expect, 1e-26), "{i}");
        assert!(close(&i_closed_form(&c, &one).unwrap(), &i_expect, 1e-44));
        let j = named_function_eval(&c, NamedFunction::J, &one).unwrap();
        assert!((j.to_f64() - 0.003178227954292425).abs() < 1e-15, "{j}");
    }

    #[test]
    fn i_is_minus_twice_k() {
        let c = cfg();
        for u in [0.5, 2.0, 7.0] {
            let u = c.num(u);
            let i = named_function_eval(&c, NamedFunction::I, &u).unwrap();
            let k = named_function_eval(&c, NamedFunction::K, &u).unwrap();
            assert!(close(&i, &(-k * 2u32), 1e-26));
        }
    }

    #[test]
    fn rejects_non_positive() {
        let c = cfg();
        for f in NamedFunction::ALL {
            assert!(matches!(named_function_eval(&c, f, &c.num(-1)), Err(Error::Domain(_))));
        }
        assert_eq!("h".parse::<NamedFunction>().unwrap(), NamedFunction::H);
    }
}
