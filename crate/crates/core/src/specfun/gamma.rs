//! Digamma, polygamma and log-gamma on the positive axis.
//!
//! Arguments below the switch point are pushed upward by recurrence; above it
//! the Bernoulli asymptotic series is summed. The remainders [`digamma_remainder`]
//! and [`trigamma_remainder`] are the series themselves, so differences such as
//! ψ(u) − log u never cancel for large u.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::bernoulli::even_table;
use crate::{Error, PrecisionConfig, Result};

/// Argument above which asymptotic series are used.
///
/// The configured switch is raised when the precision is so high that the
/// series' smallest term at the switch would not reach the unit roundoff
/// (that term is about e^{−2πx}).
pub(crate) fn effective_switch(cfg: &PrecisionConfig) -> f64 {
    let needed = f64::from(cfg.bits()) * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 4.0;
    cfg.asymptotic_switch.max(needed.ceil())
}

fn check_positive(name: &str, u: &Float) -> Result<()> {
    if !u.is_finite() || *u <= 0 {
        return Err(Error::Domain(format!("{name} needs a positive argument, got {u}")));
    }
    Ok(())
}

/// Σ_{k≥1} c_k · B₂ₖ · x^{−(2k+offset)}, stopping once a term is negligible
/// relative to the first one. `coef(k)` supplies c_k.
fn bernoulli_tail(
    cfg: &PrecisionConfig,
    x: &Float,
    offset: i32,
    coef: impl Fn(u32) -> Float,
) -> Result<Float> {
    let bits = cfg.bits();
    let eps = cfg.epsilon();
    let x2inv = Float::with_val(bits, x.square_ref()).recip();
    let mut pw = Float::with_val(bits, x.pow(-offset)) * &x2inv;
    let mut sum = Float::new(bits);
    let mut first: Option<Float> = None;
    let mut last_abs: Option<Float> = None;
    let mut growth = 0;
    let mut table = even_table(bits, 96);
    let mut k = 1usize;
    loop {
        if k >= table.len() {
            table = even_table(bits, 2 * table.len());
        }
        let term = coef(k as u32) * &table[k] * &pw;
        let mag = Float::with_val(bits, term.abs_ref());
        sum += &term;
        let reference = first.get_or_insert_with(|| mag.clone()).clone();
        if mag <= Float::with_val(bits, &reference * &eps) {
            return Ok(sum);
        }
        if let Some(prev) = &last_abs {
            if mag > *prev {
                growth += 1;
                if growth >= 2 {
                    return Err(Error::Divergent(format!(
                        "asymptotic series at x = {} grew for two terms at k = {k}",
                        x.to_f64()
                    )));
                }
            } else {
                growth = 0;
            }
        }
        last_abs = Some(mag);
        pw *= &x2inv;
        k += 1;
    }
}

/// R(v) = ψ(v) − log v + 1/(2v), computed without cancellation.
///
/// For large v this is −Σ B₂ₖ/(2k v²ᵏ) ~ −1/(12v²).
pub fn digamma_remainder(cfg: &PrecisionConfig, v: &Float) -> Result<Float> {
    check_positive("digamma_remainder", v)?;
    let bits = cfg.bits();
    let switch = effective_switch(cfg);
    if v.to_f64() >= switch {
        let s = bernoulli_tail(cfg, v, 0, |k| Float::with_val(bits, 2 * k).recip())?;
        return Ok(-s);
    }
    let psi = digamma(cfg, v)?;
    let half_inv = Float::with_val(bits, v * 2u32).recip();
    Ok(psi - Float::with_val(bits, v.ln_ref()) + half_inv)
}

/// R₁(v) = ψ′(v) − 1/v − 1/(2v²), computed without cancellation.
///
/// For large v this is Σ B₂ₖ/v^{2k+1} ~ 1/(6v³).
pub fn trigamma_remainder(cfg: &PrecisionConfig, v: &Float) -> Result<Float> {
    check_positive("trigamma_remainder", v)?;
    let bits = cfg.bits();
    let switch = effective_switch(cfg);
    if v.to_f64() >= switch {
        return bernoulli_tail(cfg, v, 1, |_| Float::with_val(bits, 1));
    }
    let tri = polygamma(cfg, 1, v)?;
    let inv = Float::with_val(bits, v.recip_ref());
    let half_inv2 = Float::with_val(bits, inv.square_ref()) / 2u32;
    Ok(tri - inv - half_inv2)
}

/// ψ(u) for u > 0.
pub fn digamma(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    check_positive("digamma", u)?;
    let bits = cfg.bits();
    let switch = effective_switch(cfg);
    let mut x = Float::with_val(bits, u);
    let mut shift = Float::new(bits);
    while x.to_f64() < switch {
        shift += Float::with_val(bits, x.recip_ref());
        x += 1u32;
    }
    let rem = -bernoulli_tail(cfg, &x, 0, |k| Float::with_val(bits, 2 * k).recip())?;
    let half_inv = Float::with_val(bits, &x * 2u32).recip();
    Ok(Float::with_val(bits, x.ln_ref()) - half_inv + rem - shift)
}

/// ψ⁽ʳ⁾(u) for r ≥ 1, u > 0.
pub fn polygamma(cfg: &PrecisionConfig, r: u32, u: &Float) -> Result<Float> {
    if r == 0 {
        return digamma(cfg, u);
    }
    check_positive("polygamma", u)?;
    let bits = cfg.bits();
    // The smallest series term grows like (πx)^r, so move further out.
    let switch = effective_switch(cfg) + 2.0 * f64::from(r);
    let r_fact = Float::with_val(bits, Integer::from(Integer::factorial(r)));
    let rm1_fact = Float::with_val(bits, Integer::from(Integer::factorial(r - 1)));
    let mut x = Float::with_val(bits, u);
    let mut shift = Float::new(bits);
    while x.to_f64() < switch {
        shift += Float::with_val(bits, (&x).pow(-(r as i32 + 1)));
        x += 1u32;
    }
    // (r−1)!/x^r + r!/(2x^{r+1}) + Σ B₂ₖ (2k+r−1)!/(2k)! / x^{2k+r}
    let lead = Float::with_val(bits, (&x).pow(-(r as i32))) * &rm1_fact;
    let second = Float::with_val(bits, (&x).pow(-(r as i32 + 1))) * &r_fact / 2u32;
    let tail = bernoulli_tail(cfg, &x, r as i32, |k| {
        let mut c = Integer::from(1);
        for i in 1..r {
            c *= 2 * k + i;
        }
        Float::with_val(bits, c)
    })?;
    let mut value = lead + second + tail;
    if r % 2 == 0 {
        value = -value;
    }
    // ψ⁽ʳ⁾(u) = ψ⁽ʳ⁾(u + m) − (−1)^r r! Σ (u + j)^{−r−1}
    let correction = shift * &r_fact;
    if r % 2 == 0 {
        Ok(value - correction)
    } else {
        Ok(value + correction)
    }
}

/// log Γ(u) for u > 0 by recurrence and Stirling's series.
///
/// Serves as the oracle against which the Binet integral is judged.
pub fn ln_gamma(cfg: &PrecisionConfig, u: &Float) -> Result<Float> {
    check_positive("ln_gamma", u)?;
    let bits = cfg.bits();
    let switch = effective_switch(cfg);
    let mut x = Float::with_val(bits, u);
    let mut product = Float::with_val(bits, 1);
    while x.to_f64() < switch {
        product *= &x;
        x += 1u32;
    }
    let tail = bernoulli_tail(cfg, &x, -1, |k| {
        Float::with_val(bits, u64::from(2 * k) * u64::from(2 * k - 1)).recip()
    })?;
    let half = Float::with_val(bits, 0.5);
    let main = Float::with_val(bits, &x - &half) * Float::with_val(bits, x.ln_ref()) - &x
        + cfg.ln_2pi() / 2u32;
    Ok(main + tail - product.ln())
}

#[cfg(test)]
mod tests {
    use rug::float::Constant;

    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        let d = Float::with_val(a.prec(), a - b).abs();
        d < tol
    }

    #[test]
    fn digamma_matches_mpfr() {
        let c = cfg();
        for v in [0.1, 0.5, 1.0, 2.5, 7.0, 19.9, 20.0, 20.1, 55.5, 1e6] {
            let x = c.num(v);
            let ours = digamma(&c, &x).unwrap();
            let mpfr = Float::with_val(c.bits(), x.digamma_ref());
            let scale = mpfr.to_f64().abs().max(1.0);
            assert!(close(&ours, &mpfr, 1e-43 * scale), "ψ({v}): {ours} vs {mpfr}");
        }
    }

    #[test]
    fn digamma_special_values() {
        let c = cfg();
        let euler = c.num(Constant::Euler);
        let psi1 = digamma(&c, &c.num(1)).unwrap();
        assert!(close(&psi1, &(-euler.clone()), 1e-44));
        let psi_half = digamma(&c, &c.num(0.5)).unwrap();
        let expect = -euler - c.ln2() * 2u32;
        assert!(close(&psi_half, &expect, 1e-44));
        assert!((psi_half.to_f64() + 1.96351002602142).abs() < 1e-13);
    }

    #[test]
    fn recurrence_consistency() {
        let c = cfg();
        for v in [0.1, 0.5, 1.0, 3.0, 17.0] {
            let x = c.num(v);
            let a = digamma(&c, &Float::with_val(c.bits(), &x + 1u32)).unwrap();
            let b = digamma(&c, &x).unwrap();
            let diff = a - b - Float::with_val(c.bits(), x.recip_ref());
            assert!(diff.abs() < 1e-35);
        }
    }

    #[test]
    fn seam_is_continuous() {
        let c = cfg();
        let s = effective_switch(&c);
        let below = c.num(s) - c.num(1e-30);
        let above = c.num(s);
        let d = digamma(&c, &above).unwrap() - digamma(&c, &below).unwrap();
        // ψ′(20) ≈ 0.05, so the true difference is about 5e-32.
        assert!(d.abs() < 1e-31);
    }

    #[test]
    fn polygamma_closed_forms() {
        let c = cfg();
        let zeta2 = c.pi().square() / 6u32;
        let t1 = polygamma(&c, 1, &c.num(1)).unwrap();
        assert!(close(&t1, &zeta2, 1e-44));
        let t2 = polygamma(&c, 1, &c.num(2)).unwrap();
        assert!(close(&t2, &(zeta2.clone() - 1u32), 1e-44));
        let zeta3 = c.num(3).zeta();
        let p2 = polygamma(&c, 2, &c.num(1)).unwrap();
        assert!(close(&p2, &(zeta3 * -2i32), 1e-43));
        assert!((p2.to_f64() + 2.40411380631919).abs() < 1e-13);
    }

    #[test]
    fn polygamma_reflects_recurrence_at_high_order() {
        let c = cfg();
        for r in 1..=5u32 {
            let x = c.num(0.3);
            let lhs = polygamma(&c, r, &Float::with_val(c.bits(), &x + 1u32)).unwrap()
                - polygamma(&c, r, &x).unwrap();
            let mut rhs = Float::with_val(c.bits(), Integer::from(Integer::factorial(r))) * x.clone().pow(-(r as i32 + 1));
            if r % 2 == 1 {
                rhs = -rhs;
            }
            let rel = Float::with_val(c.bits(), &lhs - &rhs).abs() / rhs.abs();
            assert!(rel < 1e-40, "r = {r}");
        }
    }

    #[test]
    fn remainders_are_cancellation_free() {
        let c = cfg();
        let big = c.num(1e6);
        let r = digamma_remainder(&c, &big).unwrap();
        // −1/(12v²) + 1/(120 v⁴)
        let expect = c.num(-1) / 12u32 / big.clone().square() + c.num(1) / 120u32 / big.clone().pow(4);
        assert!(close(&r, &expect, 1e-35));
        let r1 = trigamma_remainder(&c, &big).unwrap();
        let expect1 = c.num(1) / 6u32 / big.clone().pow(3);
        let rel: Float = (r1 - &expect1) / expect1;
        assert!(rel.abs() < 1e-11);
    }

    #[test]
    fn remainders_agree_across_the_switch() {
        let c = cfg();
        let s = effective_switch(&c);
        // At 80 digits the switch is further out, so both points go through
        // the recurrence path there.
        let fine = PrecisionConfig::with_digits(80).unwrap();
        assert!(effective_switch(&fine) > s + 1.0);
        for f in [digamma_remainder, trigamma_remainder] {
            for v in [s - 1e-9, s] {
                let x = c.num(v);
                let ours = f(&c, &x).unwrap();
                let reference = f(&fine, &fine.num(&x)).unwrap();
                assert!(close(&ours, &reference, 1e-45), "v = {v}");
            }
        }
    }

    #[test]
    fn ln_gamma_matches_mpfr() {
        let c = cfg();
        for v in [0.01, 0.5, 1.0, 2.0, 5.0, 33.3] {
            let x = c.num(v);
            let ours = ln_gamma(&c, &x).unwrap();
            let mpfr = Float::with_val(c.bits(), x.ln_gamma_ref());
            assert!(close(&ours, &mpfr, 1e-43), "lnΓ({v})");
        }
    }

    #[test]
    fn non_positive_arguments_are_domain_errors() {
        let c = cfg();
        assert!(matches!(digamma(&c, &c.num(0)), Err(Error::Domain(_))));
        assert!(matches!(polygamma(&c, 2, &c.num(-1)), Err(Error::Domain(_))));
    }
}
