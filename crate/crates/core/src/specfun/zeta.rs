//! Euler–Maclaurin evaluation of zeta-type sums.
//!
//! Everything here reduces to sums of f(x) = x^{−p}·logᵐx over x = a, a+1, …:
//! the first N terms are added directly and the rest is the tail integral plus
//! Bernoulli corrections built from the exact derivative polynomials of f.
//! Because the tail integral is analytic in p, the same formula continues the
//! sums to p ≤ 1, which gives ζ(s), ζ(s, a) and all their s-derivatives.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::bernoulli::even_table;
use crate::quadrature::power_log_tail as tail_integral;
use crate::{Error, PrecisionConfig, Result};

/// Extra bits carried through the long direct sums.
const SUM_GUARD: u32 = 32;

/// Largest N we are willing to sum directly.
const MAX_CUTOFF: usize = 2_000_000;

/// Largest index served by the Stieltjes oracle.
pub const STIELTJES_MAX: usize = 12;

/// f(M)/2 − Σ_{j=1}^{J} B₂ⱼ/(2j)! · f^{(2j−1)}(M) for f(x) = x^{−p}·logᵐx.
///
/// With f^{(r)}(x) = x^{−p−r}·Q_r(log x), Q₀ = Lᵐ and
/// Q_{r+1} = Q_r′ − (p + r)·Q_r. Stops after `em_terms` terms or once a term
/// drops below 10^-(digits+5) of f(M).
pub(crate) fn em_correction(cfg: &PrecisionConfig, bits: u32, p: &Float, m: usize, at: &Float) -> Result<Float> {
    let terms = cfg.em_terms as usize;
    let l = Float::with_val(bits, at.ln_ref());
    let inv_m = Float::with_val(bits, at.recip_ref());
    let base = (Float::with_val(bits, -p) * &l).exp();
    let eval = |q: &[Float]| -> Float {
        let mut acc = Float::new(bits);
        for c in q.iter().rev() {
            acc *= &l;
            acc += c;
        }
        acc
    };
    let mut q: Vec<Float> = vec![Float::new(bits); m + 1];
    q[m] = Float::with_val(bits, 1);
    let f_at = Float::with_val(bits, &base * &eval(&q));
    let mut result = Float::with_val(bits, &f_at / 2u32);
    // Relative to f(M), but never looser than absolute when f(M) is large.
    let mut scale = Float::with_val(bits, f_at.abs_ref());
    if scale > 1 {
        scale = Float::with_val(bits, 1);
    }
    let cutoff = Float::with_val(bits, cfg.series_cutoff()) * scale;
    let table = even_table(bits, terms + 2);
    let mut x_pow = base; // M^{−p−r}
    let mut fact = Integer::from(1); // (2j)!
    let mut last: Option<Float> = None;
    let mut growth = 0;
    let mut r = 0usize;
    for j in 1..=terms {
        // advance Q to order 2j − 1
        while r < 2 * j - 1 {
            let shift = Float::with_val(bits, p + r as u32);
            let mut next = vec![Float::new(bits); m + 1];
            for i in 0..=m {
                let mut c = -Float::with_val(bits, &shift * &q[i]);
                if i < m {
                    c += Float::with_val(bits, &q[i + 1] * (i + 1) as u32);
                }
                next[i] = c;
            }
            q = next;
            x_pow *= &inv_m;
            r += 1;
        }
        fact *= (2 * j - 1) as u32;
        fact *= (2 * j) as u32;
        let deriv = Float::with_val(bits, &x_pow * &eval(&q));
        let term = Float::with_val(bits, &table[j] * &deriv) / Float::with_val(bits, &fact);
        let mag = Float::with_val(bits, term.abs_ref());
        result -= &term;
        if mag <= cutoff {
            break;
        }
        if let Some(prev) = &last {
            if mag > *prev {
                growth += 1;
                if growth >= 2 {
                    return Err(Error::Divergent(format!(
                        "Euler–Maclaurin corrections grow at M = {}, p = {}, m = {m}",
                        at.to_f64(),
                        p.to_f64()
                    )));
                }
            } else {
                growth = 0;
            }
        }
        last = Some(mag);
    }
    Ok(result)
}

/// Smallest direct-sum length N (starting at a) for which the first omitted
/// Euler–Maclaurin term is below 10^-(digits+6) in absolute size.
pub(crate) fn em_cutoff(cfg: &PrecisionConfig, p: f64, m: usize, a: f64) -> Result<usize> {
    let j = f64::from(cfg.em_terms);
    // Absolute, tightened to relative when the leading term is small.
    let target = -(f64::from(cfg.working_digits) + 6.0) + (-p * a.log10()).min(0.0);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut growth = 0.0;
    for i in 0..=(2 * cfg.em_terms) {
        growth += (p.abs() + f64::from(i) + m as f64).log10();
    }
    let bound = |n: f64| {
        let big_m = n + a;
        let lm = big_m.ln().max(1.0);
        -p * big_m.log10() + m as f64 * lm.log10() + (2.0f64).log10() - (2.0 * j + 2.0) * two_pi.log10()
            + growth
            - (2.0 * j + 1.0) * big_m.log10()
    };
    // Corrections only shrink once 2πM exceeds the derivative growth.
    let start = ((p.abs() + 2.0 * j + 2.0 + m as f64) / std::f64::consts::PI - a).ceil();
    let mut n = start.max(8.0) as usize;
    while bound(n as f64) > target {
        n = n + n / 4 + 1;
        if n > MAX_CUTOFF {
            return Err(Error::Budget(format!(
                "Euler–Maclaurin cut-off above {MAX_CUTOFF} for p = {p}, m = {m}"
            )));
        }
    }
    Ok(n)
}

/// Guard bits for a direct sum up to M: the partial sums reach about
/// M^{1−p}·logᵐM when p < 1, and rounding accumulates over M terms.
fn sum_guard(p: f64, m: usize, big_m: f64) -> u32 {
    let lm = big_m.ln().max(1.0);
    let growth = (1.0 - p).max(0.0) * big_m.log2() + m as f64 * lm.log2();
    SUM_GUARD + (growth + big_m.log2()).ceil() as u32
}

/// The first `n` terms of Σ (k + a)^{−p}·logᵐ(k + a), carried at `bits`,
/// and the next abscissa a + n.
fn direct_sum(p: &Float, m: usize, a: &Float, n: usize, bits: u32) -> (Float, Float) {
    let mut sum = Float::new(bits);
    let mut x = Float::with_val(bits, a);
    for _ in 0..n {
        let l = Float::with_val(bits, x.ln_ref());
        let mut t = (Float::with_val(bits, -p) * &l).exp();
        if m > 0 {
            t *= l.pow(m as u32);
        }
        sum += t;
        x += 1u32;
    }
    (sum, x)
}

/// Σ_{k≥0} (k + a)^{−p}·logᵐ(k + a), analytically continued in p (p ≠ 1).
pub(crate) fn power_log_sum(cfg: &PrecisionConfig, p: &Float, m: usize, a: &Float) -> Result<Float> {
    if *a <= 0 {
        return Err(Error::Domain(format!("shift must be positive, got {a}")));
    }
    if *p == 1 {
        return Err(Error::Pole("s = 1".into()));
    }
    let n = em_cutoff(cfg, p.to_f64(), m, a.to_f64())?;
    let bits = cfg.bits() + sum_guard(p.to_f64(), m, n as f64 + a.to_f64());
    let p = Float::with_val(bits, p);
    let (sum, x) = direct_sum(&p, m, a, n, bits);
    let tail = tail_integral(bits, &p, m, &x)?;
    let corr = em_correction(cfg, bits, &p, m, &x)?;
    Ok(Float::with_val(cfg.bits(), sum + tail + corr))
}

/// (s − 1)ζ(s), which is entire: the tail integral M^{1−s}/(s − 1) times
/// (s − 1) is just M^{1−s}, so s = 1 needs no special case.
pub fn zeta_times_pole(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    let one = cfg.num(1);
    let n = em_cutoff(cfg, s.to_f64(), 0, 1.0)?;
    let bits = cfg.bits() + sum_guard(s.to_f64(), 0, n as f64 + 1.0);
    let s = Float::with_val(bits, s);
    let (sum, x) = direct_sum(&s, 0, &one, n, bits);
    let corr = em_correction(cfg, bits, &s, 0, &x)?;
    let q = Float::with_val(bits, &s - 1u32);
    let tail = (Float::with_val(bits, -&q) * Float::with_val(bits, x.ln_ref())).exp();
    Ok(Float::with_val(cfg.bits(), (sum + corr) * q + tail))
}

/// ζ(s) for real s ≠ 1 by Euler–Maclaurin; the independent zeta oracle.
pub fn zeta_em(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    hurwitz_em(cfg, s, &cfg.num(1))
}

/// ζ(s) − 1 for s > 1 without the cancellation of subtracting 1.
pub fn zeta_minus_one(cfg: &PrecisionConfig, s: &Float) -> Result<Float> {
    if *s <= 1 {
        return Err(Error::Domain(format!("zeta_minus_one needs s > 1, got {s}")));
    }
    power_log_sum(cfg, s, 0, &cfg.num(2))
}

/// ζ(s, a) by Euler–Maclaurin; oracle for the Hermite integral.
pub fn hurwitz_em(cfg: &PrecisionConfig, s: &Float, a: &Float) -> Result<Float> {
    power_log_sum(cfg, s, 0, a)
}

/// ∂ʳ/∂sʳ ζ(s, a) = (−1)ʳ Σ (k + a)^{−s} logʳ(k + a), continued to all s ≠ 1.
pub fn hurwitz_em_deriv(cfg: &PrecisionConfig, s: &Float, a: &Float, r: usize) -> Result<Float> {
    let v = power_log_sum(cfg, s, r, a)?;
    Ok(if r % 2 == 1 { -v } else { v })
}

/// ζ⁽ʳ⁾(s).
pub fn zeta_deriv_em(cfg: &PrecisionConfig, s: &Float, r: usize) -> Result<Float> {
    hurwitz_em_deriv(cfg, s, &cfg.num(1), r)
}

/// Generalized Stieltjes constants γ₀(a), …, γ_max(a) from
/// γₙ(a) = Σ_{k<N} logⁿ(k+a)/(k+a) − log^{n+1}(N+a)/(n+1) + EM corrections.
///
/// `cutoff` fixes N; by default it is chosen from the precision.
pub fn stieltjes_table(cfg: &PrecisionConfig, max_n: usize, a: &Float, cutoff: Option<usize>) -> Result<Vec<Float>> {
    if max_n > STIELTJES_MAX {
        return Err(Error::Budget(format!(
            "Stieltjes oracle serves n ≤ {STIELTJES_MAX}, asked for {max_n}"
        )));
    }
    if *a <= 0 {
        return Err(Error::Domain(format!("shift must be positive, got {a}")));
    }
    let n_terms = match cutoff {
        Some(n) => n,
        None => em_cutoff(cfg, 1.0, max_n, a.to_f64())?,
    };
    let bits = cfg.bits() + sum_guard(1.0, max_n, n_terms as f64 + a.to_f64());
    let mut sums = vec![Float::new(bits); max_n + 1];
    let mut x = Float::with_val(bits, a);
    for _ in 0..n_terms {
        let l = Float::with_val(bits, x.ln_ref());
        let mut t = Float::with_val(bits, x.recip_ref());
        for s in sums.iter_mut() {
            *s += &t;
            t *= &l;
        }
        x += 1u32;
    }
    let l_end = Float::with_val(bits, x.ln_ref());
    let one = Float::with_val(bits, 1);
    let mut out = Vec::with_capacity(max_n + 1);
    for (n, s) in sums.into_iter().enumerate() {
        let integral = Float::with_val(bits, (&l_end).pow((n + 1) as u32)) / (n + 1) as u32;
        let corr = em_correction(cfg, bits, &one, n, &x)?;
        out.push(Float::with_val(cfg.bits(), s - integral + corr));
    }
    Ok(out)
}

/// γₙ, the Stieltjes constants, for n ≤ 12.
pub fn stieltjes_oracle(cfg: &PrecisionConfig, n: usize) -> Result<Float> {
    let table = stieltjes_table(cfg, n, &cfg.num(1), None)?;
    Ok(table[n].clone())
}

/// γₙ(a), the generalized Stieltjes constants.
pub fn generalized_stieltjes(cfg: &PrecisionConfig, n: usize, a: &Float) -> Result<Float> {
    let table = stieltjes_table(cfg, n, a, None)?;
    Ok(table[n].clone())
}
