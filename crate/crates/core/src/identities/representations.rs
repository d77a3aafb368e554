//! ζ(s) as Mellin-type integrals of the kernels.
//!
//! The B, DB and log u − ψ(1+u) integrands decay only like 1/(2u) or
//! 1/(2u²) times u^{1−s} or u^{−s}. On [1, ∞) that leading term is
//! subtracted and integrated in closed form, and the quadrature sees a
//! remainder decaying one power faster.

use rug::ops::Pow;
use rug::Float;

use super::kernels::{kernel_eval, Kernel};
use crate::quadrature::{integrate, Decay, Domain};
use crate::specfun::{digamma, digamma_remainder, trigamma_remainder};
use crate::{Error, PrecisionConfig, Result};

/// u^{−s}.
fn power(bits: u32, u: &Float, s: &Float) -> Float {
    (Float::with_val(bits, -s) * Float::with_val(bits, u.ln_ref())).exp()
}

/// ∫₀¹ f + ∫₁^∞ g, where g decays like u^{−decay}.
fn split_integral<F, G>(cfg: &PrecisionConfig, head: F, tail: G, decay: f64) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
    G: Fn(&Float) -> Result<Float>,
{
    let tol = cfg.quad_tol() / 2.0;
    let near = integrate(cfg, head, &Domain::finite(cfg.zero(), cfg.num(1))?, tol)?.into_value(tol)?;
    let far = integrate(cfg, tail, &Domain::semi_infinite(cfg.num(1), Decay::Algebraic(decay))?, tol)?;
    Ok(near + far.into_value(tol)?)
}

fn sin_pi(cfg: &PrecisionConfig, s: &Float) -> Float {
    (cfg.pi() * s).sin()
}

/// ζ(s) = 1/(s−1) − sin(πs)/(π(s−1)) ∫₀^∞ B(u)u^{1−s} du for 0 < s < 2, s ≠ 1.
pub fn zeta_debruijn(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    if !s.is_finite() || *s <= 0 || *s >= 2 {
        return Err(Error::Domain(format!("need 0 < s < 2, got {s}")));
    }
    if *s == 1 {
        return Err(Error::Pole("s = 1".into()));
    }
    let bits = cfg.bits();
    let one_minus = Float::with_val(bits, 1u32 - s);
    let neg = Float::with_val(bits, -&one_minus);
    // B(u) − 1/(2u²) = R₁(u) − 1/(u²(1+u)) ~ u⁻³, whose u^{1−s} moment on
    // [1, ∞) converges for s > 0; the subtracted piece integrates to 1/(2s).
    let integral = split_integral(
        cfg,
        |u: &Float| Ok(kernel_eval(cfg, Kernel::B, u)? * power(bits, u, &neg)),
        |u: &Float| {
            let u2 = Float::with_val(bits, u.square_ref());
            let rest = trigamma_remainder(cfg, u)? - (u2 * Float::with_val(bits, u + 1u32)).recip();
            Ok(rest * power(bits, u, &neg))
        },
        2.0 + s.to_f64(),
    )? + Float::with_val(bits, s * 2u32).recip();
    let sm1 = Float::with_val(bits, s - 1u32);
    let factor = sin_pi(cfg, s) / (cfg.pi() * &sm1);
    Ok(Float::with_val(bits, sm1.recip_ref()) - factor * integral)
}

/// ζ(s) = sin(πs)/π ∫₀^∞ [log u − ψ(1+u)] u^{−s} du for 0 < s < 1.
pub fn zeta_kloosterman(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    if !s.is_finite() || *s <= 0 || *s >= 1 {
        return Err(Error::Pole(format!("the integral needs 0 < s < 1, got {s}")));
    }
    let bits = cfg.bits();
    // log u − ψ(1+u) = −R(u) − 1/(2u); the 1/(2u) part integrates to 1/(2s).
    let integral = split_integral(
        cfg,
        |u: &Float| {
            let v = Float::with_val(bits, u.ln_ref()) - digamma(cfg, &Float::with_val(bits, u + 1u32))?;
            Ok(v * power(bits, u, s))
        },
        |u: &Float| Ok(-digamma_remainder(cfg, u)? * power(bits, u, s)),
        2.0 + s.to_f64(),
    )? - Float::with_val(bits, s * 2u32).recip();
    Ok(sin_pi(cfg, s) / cfg.pi() * integral)
}

/// ζ(s) = 1/(s−1) + sin(πs)/π ∫₀^∞ DB(u) u^{−s} du for 0 < s < 1.
pub fn zeta_db_kernel(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    if !s.is_finite() || *s <= 0 || *s >= 1 {
        return Err(Error::Domain(format!("need 0 < s < 1, got {s}")));
    }
    let bits = cfg.bits();
    // DB(u) − 1/(2u) = −R(1+u) − 1/(2u(1+u)).
    let integral = split_integral(
        cfg,
        |u: &Float| Ok(kernel_eval(cfg, Kernel::DB, u)? * power(bits, u, s)),
        |u: &Float| {
            let up = Float::with_val(bits, u + 1u32);
            let rest = -digamma_remainder(cfg, &up)? - (Float::with_val(bits, u * &up) * 2u32).recip();
            Ok(rest * power(bits, u, s))
        },
        2.0 + s.to_f64(),
    )? + Float::with_val(bits, s * 2u32).recip();
    let sm1 = Float::with_val(bits, s - 1u32);
    Ok(sm1.recip() + sin_pi(cfg, s) / cfg.pi() * integral)
}

/// ∫₀^∞ K(u)·u^{−s}·logʲu du for kernel A or B and −1 < s < 1.
pub fn kernel_mellin_log(cfg: &PrecisionConfig, k: Kernel, s: &Float, j: u32) -> Result<Float> {
    if k == Kernel::DB {
        return Err(Error::Argument("kernel DB is not integrable against u^{−s} for s ≤ 0".into()));
    }
    if !s.is_finite() || *s <= -1 || *s >= 1 {
        return Err(Error::Domain(format!("need −1 < s < 1, got {s}")));
    }
    let bits = cfg.bits();
    let tol = cfg.quad_tol();
    let d = Domain::half_line(Decay::Algebraic(2.0 + s.to_f64()))?;
    integrate(
        cfg,
        |u: &Float| {
            let mut v = kernel_eval(cfg, k, u)? * power(bits, u, s);
            if j > 0 {
                v *= Float::with_val(bits, u.ln_ref()).pow(j);
            }
            Ok(v)
        },
        &d,
        tol,
    )?
    .into_value(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta_em;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn assert_close(a: &Float, b: &Float, tol: f64) {
        let d = Float::with_val(a.prec(), a - b).abs();
        assert!(d < tol, "{a} vs {b}: {d}");
    }

    #[test]
    fn debruijn_matches_oracle() {
        let c = cfg();
        for s in [0.25, 0.5, 0.75, 1.5] {
            let s = c.num(s);
            assert_close(&zeta_debruijn(&c, &s).unwrap(), &zeta_em(&c, &s).unwrap(), 1e-25);
        }
    }

    #[test]
    fn kloosterman_and_db_forms_match_oracle() {
        let c = cfg();
        for s in [0.25, 0.5, 0.75] {
            let s = c.num(s);
            let z = zeta_em(&c, &s).unwrap();
            assert_close(&zeta_kloosterman(&c, &s).unwrap(), &z, 1e-25);
            assert_close(&zeta_db_kernel(&c, &s).unwrap(), &z, 1e-25);
        }
    }

    #[test]
    fn poles_and_domains() {
        let c = cfg();
        assert!(matches!(zeta_debruijn(&c, &c.num(1)), Err(Error::Pole(_))));
        assert!(matches!(zeta_debruijn(&c, &c.num(2.5)), Err(Error::Domain(_))));
        assert!(matches!(zeta_kloosterman(&c, &c.num(1)), Err(Error::Pole(_))));
        assert!(matches!(zeta_kloosterman(&c, &c.num(0)), Err(Error::Pole(_))));
    }
}
