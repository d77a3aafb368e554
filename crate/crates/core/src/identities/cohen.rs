//! S = Σ_{n≥1} log(n+1)/(n(n+1)) by four series that share nothing but
//! the zeta oracle:
//!
//! - `direct`: the defining sum to N, then Σ_{m>N+1} log m/(m(m−1)) expanded
//!   as Σ_{k≥2} Σ_m log m/mᵏ, each inner sum by Euler–Maclaurin;
//! - `zeta_alternating`: Σ (−1)ⁿ⁺¹ ζ(n+1)/n, written as log 2 plus the
//!   rapidly decaying Σ (−1)ⁿ⁺¹ (ζ(n+1) − 1)/n;
//! - `zeta_derivative`: −Σ_{n≥2} ζ′(n), with ζ′ from central differences;
//! - `log_ratio`: Σ (1/n) log((n+1)/n), tail through Hurwitz zeta values.

use rug::Float;

use crate::numdiff::derivative;
use crate::specfun::{hurwitz_em, power_log_sum, zeta_minus_one};
use crate::{Error, PrecisionConfig, Result, Workbench};

/// Terms summed directly before the tails take over.
const DIRECT_TERMS: u32 = 100;

/// Step of the central differences for ζ′(n).
const FD_STEP: f64 = 1e-10;

/// Largest allowed move of Σ ζ′(n) when the step is halved.
const FD_HALVING_LIMIT: f64 = 1e-12;

/// Smallest tolerance accepted by [`cohen_series`].
pub const MIN_COHEN_TOL: f64 = 1e-25;

const MAX_SERIES_TERMS: u32 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CohenRoutes {
    pub direct: Float,
    pub zeta_alternating: Float,
    pub zeta_derivative: Float,
    pub log_ratio: Float,
    /// Total move of the ζ′ sum when the difference step is halved.
    pub fd_halving_shift: Float,
}

impl CohenRoutes {
    pub fn named(&self) -> [(&'static str, &Float); 4] {
        [
            ("direct", &self.direct),
            ("zeta_alternating", &self.zeta_alternating),
            ("zeta_derivative", &self.zeta_derivative),
            ("log_ratio", &self.log_ratio),
        ]
    }
}

/// Σ_{n=1}^{N} log(n+1)/(n(n+1)).
pub fn cohen_partial_sum(cfg: &PrecisionConfig, terms: u32) -> Float {
    let bits = cfg.bits();
    let mut sum = cfg.zero();
    for n in 1..=terms {
        let ln = cfg.num(n + 1).ln();
        sum += ln / (u64::from(n) * u64::from(n + 1));
    }
    Float::with_val(bits, sum)
}

/// Adds terms from `term(k)` for k = first.. until one drops below the
/// series cut-off relative to the running total.
fn sum_until_small<F>(cfg: &PrecisionConfig, first: u32, mut term: F) -> Result<Float>
where
    F: FnMut(u32) -> Result<Float>,
{
    let cutoff = cfg.series_cutoff();
    let mut acc = cfg.zero();
    let mut small = 0;
    for k in first..first + MAX_SERIES_TERMS {
        let t = term(k)?;
        let negligible = t.clone().abs() < cutoff;
        acc += t;
        small = if negligible { small + 1 } else { 0 };
        if small >= 2 {
            return Ok(acc);
        }
    }
    Err(Error::Divergent(format!("series not settled after {MAX_SERIES_TERMS} terms")))
}

fn direct(cfg: &PrecisionConfig) -> Result<Float> {
    let head = cohen_partial_sum(cfg, DIRECT_TERMS);
    let start = cfg.num(DIRECT_TERMS + 2);
    let tail = sum_until_small(cfg, 2, |k| power_log_sum(cfg, &cfg.num(k), 1, &start))?;
    Ok(head + tail)
}

fn zeta_alternating(cfg: &PrecisionConfig) -> Result<Float> {
    let rest = sum_until_small(cfg, 1, |n| {
        let t = zeta_minus_one(cfg, &cfg.num(n + 1))? / n;
        Ok(if n % 2 == 1 { t } else { -t })
    })?;
    Ok(cfg.ln2() + rest)
}

fn zeta_derivative(cfg: &PrecisionConfig) -> Result<(Float, Float)> {
    let h = cfg.num(FD_STEP);
    let f = |s: &Float| zeta_minus_one(cfg, s);
    let mut shift = cfg.zero();
    let sum = sum_until_small(cfg, 2, |n| {
        let d = derivative(&f, &cfg.num(n), 1, &h)?;
        shift += &d.halving_shift;
        Ok(-d.value)
    })?;
    Ok((sum, shift))
}

fn log_ratio(cfg: &PrecisionConfig) -> Result<Float> {
    let bits = cfg.bits();
    let mut head = cfg.zero();
    for n in 1..=DIRECT_TERMS {
        let inv = cfg.ratio(1, i64::from(n));
        head += Float::with_val(bits, inv.ln_1p_ref()) * &inv;
    }
    // (1/n)log(1 + 1/n) = Σ_k (−1)^{k+1} n^{−(k+1)}/k.
    let start = cfg.num(DIRECT_TERMS + 1);
    let tail = sum_until_small(cfg, 1, |k| {
        let t = hurwitz_em(cfg, &cfg.num(k + 1), &start)? / k;
        Ok(if k % 2 == 1 { t } else { -t })
    })?;
    Ok(head + tail)
}

pub(crate) fn compute_routes(wb: &Workbench) -> Result<CohenRoutes> {
    let cfg = wb.config();
    let (zeta_derivative, fd_halving_shift) = zeta_derivative(cfg)?;
    Ok(CohenRoutes {
        direct: direct(cfg)?,
        zeta_alternating: zeta_alternating(cfg)?,
        zeta_derivative,
        log_ratio: log_ratio(cfg)?,
        fd_halving_shift,
    })
}

/// S, returned from the direct route after all four routes agree pairwise
/// within `tol` (≥ 10⁻²⁵).
pub fn cohen_series(wb: &Workbench, tol: f64) -> Result<Float> {
    if !(tol >= MIN_COHEN_TOL) {
        return Err(Error::Argument(format!("tolerance must be at least {MIN_COHEN_TOL:e}, got {tol:e}")));
    }
    let routes = wb.cohen_routes()?;
    if routes.fd_halving_shift > FD_HALVING_LIMIT {
        return Err(Error::Divergent(format!(
            "ζ′(n) differences moved by {} when the step was halved",
            wb.config().decimal(&routes.fd_halving_shift)
        )));
    }
    let named = routes.named();
    for (i, (first, a)) in named.iter().enumerate() {
        for (second, b) in &named[i + 1..] {
            let diff = Float::with_val(a.prec(), *a - *b).abs();
            if diff > tol {
                return Err(Error::CrossRoute {
                    first: first.to_string(),
                    second: second.to_string(),
                    diff: wb.config().decimal(&diff),
                });
            }
        }
    }
    Ok(routes.direct)
}
