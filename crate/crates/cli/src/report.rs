//! The verification report and its three renderings.

use std::io::{self, Write};

use serde::Serialize;
use zeta_workbench::PrecisionConfig;

use crate::runner::{Evaluated, Status};

/// Shown for the numeric fields of a check that produced no values.
pub const MISSING: &str = "NaN";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub id: String,
    pub description: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tol: String,
    pub pass: bool,
    pub evaluations: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub tolerance: String,
    pub precision_digits: u32,
    pub results: Vec<ResultRow>,
    pub summary: Summary,
}

/// A failed check's reason, kept out of the document body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub id: String,
    pub reason: String,
}

fn tol_string(tol: f64) -> String {
    format!("{tol:e}")
}

impl VerificationReport {
    /// Builds the report from results already sorted by id. Errors become
    /// failed rows whose numeric fields are [`MISSING`]; their reasons are
    /// returned separately.
    pub fn assemble(
        suite: &str,
        tol: f64,
        cfg: &PrecisionConfig,
        evaluated: Vec<Evaluated>,
        timing: bool,
    ) -> (VerificationReport, Vec<Failure>) {
        let mut failures = Vec::new();
        let results: Vec<ResultRow> = evaluated
            .into_iter()
            .map(|e| {
                let elapsed_ms = if timing { e.elapsed.as_millis() as u64 } else { 0 };
                match e.status {
                    Status::Done(o) => ResultRow {
                        id: e.id,
                        description: e.description,
                        lhs: cfg.decimal(&o.lhs),
                        rhs: cfg.decimal(&o.rhs),
                        abs_err: cfg.decimal(&o.abs_err),
                        rel_err: cfg.decimal(&o.rel_err),
                        tol: tol_string(o.tol),
                        pass: o.pass,
                        evaluations: e.evaluations,
                        elapsed_ms,
                    },
                    Status::Failed(reason) => {
                        failures.push(Failure {
                            id: e.id.clone(),
                            reason,
                        });
                        ResultRow {
                            id: e.id,
                            description: e.description,
                            lhs: MISSING.into(),
                            rhs: MISSING.into(),
                            abs_err: MISSING.into(),
                            rel_err: MISSING.into(),
                            tol: tol_string(tol),
                            pass: false,
                            evaluations: e.evaluations,
                            elapsed_ms,
                        }
                    }
                }
            })
            .collect();
        let passed = results.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: results.len(),
            passed,
            failed: results.len() - passed,
        };
        let report = VerificationReport {
            suite: suite.to_string(),
            tolerance: tol_string(tol),
            precision_digits: cfg.working_digits,
            results,
            summary,
        };
        (report, failures)
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// One row per result; columns in the JSON field order.
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.results {
            w.serialize(r)?;
        }
        w.flush()
    }

    pub fn write_human(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(
            out,
            "suite {}  tol {}  {} digits",
            self.suite, self.tolerance, self.precision_digits
        )?;
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &self.results {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{mark}  {:width$}  abs_err {:>10}  tol {:>7}  {:>6} ms  {}",
                r.id,
                short(&r.abs_err),
                r.tol,
                r.elapsed_ms,
                r.description,
            )?;
        }
        writeln!(
            out,
            "{} checks: {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        )
    }
}

/// A full-precision decimal cut to three significant digits for display.
fn short(decimal: &str) -> String {
    match decimal.parse::<f64>() {
        Ok(v) if v != 0.0 => format!("{v:.2e}"),
        Ok(_) => "0".into(),
        Err(_) => decimal.to_string(),
    }
}
