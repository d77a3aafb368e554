//! Sign patterns, inequalities and finite-range trends of the sequences.
//!
//! Each check runs over every applicable index up to `max_n` and reports
//! the tightest instance: for equalities the largest residual, for
//! inequalities the smallest margin. Failing indices are listed in
//! `violations`.

use rug::Float;

use super::{bell_values, budget, eta, factorial, lehmer_b, sigma, SEQUENCE_MAX};
use crate::numdiff::derivative;
use crate::quadrature::evaluation_count;
use crate::specfun::zeta_times_pole;
use crate::{Error, Result, Workbench};

/// Ids of the checks, in report order.
pub const STRUCTURE_CHECKS: [&str; 8] = [
    "STRUCT_ETA_SIGN",
    "STRUCT_B_SIGN",
    "STRUCT_4_22",
    "STRUCT_4_23",
    "STRUCT_B_EVEN",
    "STRUCT_4_16",
    "STRUCT_1_12_1",
    "STRUCT_APOSTOL",
];

const BELL_TOL: f64 = 1e-6;
const POLE_TOL: f64 = 1e-8;
const POLE_STEP: f64 = 1e-8;
const POLE_HALVING_LIMIT: f64 = 1e-10;
/// Highest derivative of (s−1)ζ(s) checked by differences.
const POLE_MAX: usize = 4;
const APOSTOL_START: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct StructureCheck {
    pub id: &'static str,
    pub description: &'static str,
    /// The tightest instance: both sides of the relation.
    pub lhs: Float,
    pub rhs: Float,
    /// |lhs − rhs| for equalities, lhs − rhs (the margin) for inequalities.
    pub abs_err: Float,
    /// Residual bound for equalities; 0 for strict inequalities.
    pub tol: f64,
    pub pass: bool,
    pub violations: Vec<String>,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub max_n: usize,
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Collects instances and keeps the tightest one.
struct Tally {
    equality: bool,
    tol: f64,
    worst: Option<(Float, Float, Float)>,
    violations: Vec<String>,
}

impl Tally {
    fn equality(tol: f64) -> Self {
        Tally { equality: true, tol, worst: None, violations: Vec::new() }
    }

    fn inequality() -> Self {
        Tally { equality: false, tol: 0.0, worst: None, violations: Vec::new() }
    }

    /// Records lhs = rhs or lhs > rhs at index n.
    fn add(&mut self, n: usize, lhs: Float, rhs: Float) {
        let diff = Float::with_val(lhs.prec(), &lhs - &rhs);
        let (measure, ok) = if self.equality {
            let d = diff.abs();
            let ok = d <= self.tol;
            (d, ok)
        } else {
            let ok = diff > 0;
            (diff, ok)
        };
        if !ok {
            self.violations.push(format!("n = {n}: {} vs {}", lhs.to_f64(), rhs.to_f64()));
        }
        let tighter = match &self.worst {
            None => true,
            Some((_, _, m)) if self.equality => measure > *m,
            Some((_, _, m)) => measure < *m,
        };
        if tighter {
            self.worst = Some((lhs, rhs, measure));
        }
    }

    fn note(&mut self, message: String) {
        self.violations.push(message);
    }

    fn finish(self, wb: &Workbench, id: &'static str, description: &'static str, evaluations: u64) -> StructureCheck {
        let bits = wb.config().bits();
        let (lhs, rhs, abs_err) = self
            .worst
            .unwrap_or_else(|| (Float::new(bits), Float::new(bits), Float::new(bits)));
        StructureCheck {
            id,
            description,
            lhs,
            rhs,
            abs_err,
            tol: self.tol,
            pass: self.violations.is_empty(),
            violations: self.violations,
            evaluations,
        }
    }
}

/// The relation a structure check tests.
pub fn structure_description(id: &str) -> Result<&'static str> {
    Ok(match id {
        "STRUCT_ETA_SIGN" => "(−1)ⁿ⁺¹ηₙ > 0",
        "STRUCT_B_SIGN" => "(−1)ⁿbₙ > 0",
        "STRUCT_4_22" => "σₙ₊₁ > 1 − (1 − 2^{−(n+1)})ζ(n+1)",
        "STRUCT_4_23" => "ζ(n+1) − 1 − [1 + (−1)ⁿ⁺¹]2^{−(n+1)}ζ(n+1) > bₙ",
        "STRUCT_B_EVEN" => "1 > b₂ₙ",
        "STRUCT_4_16" => "2[mζ⁽ᵐ⁻¹⁾(0) − ζ⁽ᵐ⁾(0)] = Yₘ(0!b₀, 1!b₁, …)",
        "STRUCT_1_12_1" => "dⁿ/dsⁿ[(s−1)ζ(s)] at 1 = (−1)ⁿ⁻¹nγₙ₋₁",
        "STRUCT_APOSTOL" => "|ζ⁽ⁿ⁾(0)/n! + 1| decreases for n ≥ 4",
        _ => return Err(Error::UnknownId(id.to_string())),
    })
}

fn signed(v: Float, n: usize) -> Float {
    if n % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Runs one check over n ≤ `max_n`.
pub fn run_structure_check(wb: &Workbench, id: &str, max_n: usize) -> Result<StructureCheck> {
    let description = structure_description(id)?;
    let id = STRUCTURE_CHECKS.into_iter().find(|c| *c == id).expect("listed");
    if max_n == 0 {
        return Err(Error::Argument("max_n must be positive".into()));
    }
    budget("structure checks", max_n, SEQUENCE_MAX)?;
    let cfg = wb.config();
    let bits = cfg.bits();
    let zero = || Float::new(bits);
    let before = evaluation_count();
    let mut t;
    match id {
        "STRUCT_ETA_SIGN" => {
            t = Tally::inequality();
            for n in 1..=max_n {
                t.add(n, signed(eta(wb, n)?, n + 1), zero());
            }
        }
        "STRUCT_B_SIGN" => {
            t = Tally::inequality();
            for n in 0..=max_n {
                t.add(n, signed(lehmer_b(wb, n)?, n), zero());
            }
        }
        "STRUCT_4_22" => {
            t = Tally::inequality();
            for n in 1..=max_n {
                let weight = cfg.num(1) - (cfg.num(1) >> (n as u32 + 1));
                let bound = cfg.num(1) - weight * wb.zeta_int(n as u32 + 1)?;
                t.add(n, sigma(wb, n + 1)?, bound);
            }
        }
        "STRUCT_4_23" => {
            t = Tally::inequality();
            for n in 1..=max_n {
                let z = wb.zeta_int(n as u32 + 1)?;
                let mut lhs = Float::with_val(bits, &z - 1u32);
                if (n + 1) % 2 == 0 {
                    lhs -= z >> n as u32;
                }
                t.add(n, lhs, lehmer_b(wb, n)?);
            }
        }
        "STRUCT_B_EVEN" => {
            t = Tally::inequality();
            for n in (0..=max_n).step_by(2) {
                t.add(n, cfg.num(1), lehmer_b(wb, n)?);
            }
        }
        "STRUCT_4_16" => {
            t = Tally::equality(BELL_TOL);
            let args = (0..max_n)
                .map(|k| Ok(lehmer_b(wb, k)? * factorial(bits, k)))
                .collect::<Result<Vec<_>>>()?;
            let y = bell_values(wb, args)?;
            for m in 1..=max_n {
                let lhs = (wb.zeta_deriv0_oracle(m - 1)? * m as u32 - wb.zeta_deriv0_oracle(m)?) * 2u32;
                t.add(m, lhs, y[m].clone());
            }
        }
        "STRUCT_1_12_1" => {
            t = Tally::equality(POLE_TOL);
            let f = |s: &Float| zeta_times_pole(cfg, s);
            let one = cfg.num(1);
            let h = cfg.num(POLE_STEP);
            for n in 1..=max_n.min(POLE_MAX) {
                let d = derivative(&f, &one, n as u32, &h)?;
                if d.halving_shift > POLE_HALVING_LIMIT {
                    t.note(format!("n = {n}: step halving moved the difference by {}", d.halving_shift.to_f64()));
                }
                let rhs = signed(wb.stieltjes_oracle(n - 1)? * n as u32, n - 1);
                t.add(n, d.value, rhs);
            }
        }
        "STRUCT_APOSTOL" => {
            // Each gap must be smaller than the one before: lhs is the
            // previous gap, rhs the current one.
            t = Tally::inequality();
            let gap = |n: usize| -> Result<Float> {
                Ok((wb.zeta_deriv0_oracle(n)? / factorial(bits, n) + 1u32).abs())
            };
            if max_n > APOSTOL_START {
                let mut prev = gap(APOSTOL_START)?;
                for n in APOSTOL_START + 1..=max_n {
                    let cur = gap(n)?;
                    t.add(n, prev, cur.clone());
                    prev = cur;
                }
            }
        }
        _ => unreachable!("structure_description() rejects unknown ids"),
    }
    Ok(t.finish(wb, id, description, evaluation_count() - before))
}

/// Every check at `max_n` (1 ≤ max_n ≤ 10).
pub fn check_structure(wb: &Workbench, max_n: usize) -> Result<StructureReport> {
    let checks = STRUCTURE_CHECKS
        .iter()
        .map(|id| run_structure_check(wb, id, max_n))
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureReport { max_n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PrecisionConfig;

    #[test]
    fn all_checks_pass_to_ten() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        let report = check_structure(&wb, SEQUENCE_MAX).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{}: {:?}", c.id, c.violations);
        }
        assert!(report.all_pass());
    }

    #[test]
    fn first_bell_instance_is_b0() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        let c = run_structure_check(&wb, "STRUCT_4_16", 1).unwrap();
        let b0 = wb.config().ln_2pi() - 1u32;
        assert!(Float::with_val(b0.prec(), &c.rhs - &b0).abs() < 1e-40);
        assert!(c.abs_err < 1e-30);
    }

    #[test]
    fn apostol_trend_window() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        let r8 = wb.zeta_deriv0_oracle(8).unwrap() / factorial(wb.config().bits(), 8);
        let r4 = wb.zeta_deriv0_oracle(4).unwrap() / factorial(wb.config().bits(), 4);
        assert!(r8 > -1.1 && r8 < -0.6);
        assert!((r8.to_f64() + 1.0).abs() < (r4.to_f64() + 1.0).abs());
    }

    #[test]
    fn rejects_bad_input() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        assert!(matches!(run_structure_check(&wb, "STRUCT_NOPE", 3), Err(Error::UnknownId(_))));
        assert!(matches!(check_structure(&wb, 11), Err(Error::Budget(_))));
        assert!(matches!(check_structure(&wb, 0), Err(Error::Argument(_))));
    }
}
