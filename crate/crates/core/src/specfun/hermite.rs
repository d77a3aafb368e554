//! Integrals against the Bose weight 1/(e^{2πx} − 1): Hermite's formula for
//! ζ(s, u) and Binet's second formula for log Γ(u).

use rug::Float;

use crate::quadrature::{integrate, Decay, Domain};
use crate::{Error, PrecisionConfig, Result};

fn check_shift(u: &Float) -> Result<()> {
    if !u.is_finite() || *u <= 0 {
        return Err(Error::Domain(format!("need u > 0, got {u}")));
    }
    Ok(())
}

/// ∫₀^∞ g(x)/(e^{2πx} − 1) dx at the configured quadrature tolerance.
pub(crate) fn bose_integral<G>(cfg: &PrecisionConfig, g: G) -> Result<Float>
where
    G: Fn(&Float) -> Result<Float>,
{
    let bits = cfg.bits();
    let two_pi = cfg.pi() * 2u32;
    let tol = cfg.quad_tol();
    let d = Domain::half_line(Decay::Exponential)?;
    integrate(
        cfg,
        |x: &Float| {
            let denom = Float::with_val(bits, x * &two_pi).exp_m1();
            Ok(g(x)? / denom)
        },
        &d,
        tol,
    )?
    .into_value(tol)
}

/// K(u) = ∫₀^∞ arctan(x/u)/(e^{2πx} − 1) dx.
pub fn binet_integral(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    check_shift(u)?;
    let bits = cfg.bits();
    bose_integral(cfg, |x| Ok(Float::with_val(bits, x / u).atan()))
}

/// ζ(s, u) = u^{−s}/2 + u^{1−s}/(s−1) + 2∫₀^∞ sin(s·arctan(x/u)) / ((u²+x²)^{s/2}(e^{2πx}−1)) dx.
pub fn hurwitz_hermite(cfg: &PrecisionConfig, s: &Float, u: &Float) -> Result<Float> {
    check_shift(u)?;
    if *s == 1 {
        return Err(Error::Pole("ζ(s, u) has a pole at s = 1".into()));
    }
    let bits = cfg.bits();
    let u2 = Float::with_val(bits, u.square_ref());
    let half_s = Float::with_val(bits, s / 2u32);
    let integral = bose_integral(cfg, |x| {
        let angle = Float::with_val(bits, x / u).atan() * s;
        let r2 = Float::with_val(bits, x.square_ref()) + &u2;
        let scale = (Float::with_val(bits, r2.ln()) * &half_s).exp();
        Ok(angle.sin() / scale)
    })?;
    let ln_u = Float::with_val(bits, u.ln_ref());
    let u_neg_s = (Float::with_val(bits, -s) * &ln_u).exp();
    let s_minus_1 = Float::with_val(bits, s - 1u32);
    let pole_part = Float::with_val(bits, &u_neg_s * u) / &s_minus_1;
    Ok(u_neg_s / 2u32 + pole_part + integral * 2u32)
}

/// ζ′(0, u) = (u − ½)log u − u + 2K(u).
pub fn hurwitz_deriv0(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    let k = binet_integral(cfg, u)?;
    let bits = cfg.bits();
    let ln_u = Float::with_val(bits, u.ln_ref());
    Ok(Float::with_val(bits, u - 0.5f64) * ln_u - u + k * 2u32)
}

/// log Γ(u) by Binet's second formula.
pub fn log_gamma_binet(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    Ok(hurwitz_deriv0(cfg, u)? + cfg.ln_2pi() / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta_em;

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn hermite_matches_known_values() {
        let c = PrecisionConfig::default();
        let z2 = c.pi().square() / 6u32;
        assert!(close(&hurwitz_hermite(&c, &c.num(2), &c.num(1)).unwrap(), &z2, 1e-25));
        let half = hurwitz_hermite(&c, &c.num(2), &c.num(0.5)).unwrap();
        assert!(close(&half, &(z2 * 3u32), 1e-25));
        let z3 = zeta_em(&c, &c.num(3)).unwrap();
        let shifted = hurwitz_hermite(&c, &c.num(3), &c.num(2)).unwrap();
        assert!(close(&shifted, &(z3 - 1u32), 1e-25));
        // continuation below s = 1
        let z = zeta_em(&c, &c.num(0.5)).unwrap();
        assert!(close(&hurwitz_hermite(&c, &c.num(0.5), &c.num(1)).unwrap(), &z, 1e-25));
    }

    #[test]
    fn binet_small_cases() {
        let c = PrecisionConfig::default();
        assert!(log_gamma_binet(&c, &c.num(1)).unwrap().abs() < 1e-26);
        assert!(log_gamma_binet(&c, &c.num(2)).unwrap().abs() < 1e-26);
        let half = log_gamma_binet(&c, &c.num(0.5)).unwrap();
        assert!(close(&half, &(c.pi().ln() / 2u32), 1e-26));
        let k1 = binet_integral(&c, &c.num(1)).unwrap();
        assert!(close(&k1, &(c.num(0.5) - c.ln_2pi() / 4u32), 1e-26));
    }

    #[test]
    fn binet_agrees_with_mpfr_log_gamma() {
        let c = PrecisionConfig::default();
        for u in [0.05, 0.3, 3.7, 25.0, 400.0] {
            let x = c.num(u);
            let ours = log_gamma_binet(&c, &x).unwrap();
            let mpfr = Float::with_val(c.bits(), x.ln_gamma_ref());
            assert!(close(&ours, &mpfr, 1e-26), "u = {u}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = PrecisionConfig::default();
        assert!(matches!(hurwitz_hermite(&c, &c.num(1), &c.num(1)), Err(Error::Pole(_))));
        assert!(hurwitz_hermite(&c, &c.num(2), &c.num(0)).is_err());
        assert!(log_gamma_binet(&c, &c.num(-1)).is_err());
    }
}
