//! Command-line front end of the workbench.
//!
//! `compute` tabulates a constant sequence, `verify` runs identity and
//! structure checks and exits 1 if any fails, and `report` writes the same
//! verification report but exits 0 once it has been produced. Usage errors
//! exit 2.

pub mod checks;
pub mod config;
pub mod report;
pub mod runner;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use serde::Serialize;
use zeta_workbench::constants::constant_sequence;
use zeta_workbench::{Error, Workbench};

pub use checks::{check_for, Check, Evaluator, Outcome};
pub use config::{parse_args, Command, ComputeRequest, OutputFormat, Parsed, RouteChoice, RunConfig, Suite};
pub use report::{ResultRow, Summary, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(Parsed::Run(cfg)) => run(&cfg, out, err),
        Ok(Parsed::Print(text)) => {
            let _ = write!(out, "{text}");
            EXIT_PASS
        }
        Err(msg) => {
            let _ = write!(err, "{msg}");
            if !msg.ends_with('\n') {
                let _ = writeln!(err);
            }
            EXIT_USAGE
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_with_checks(cfg, Vec::new(), out, err)
}

/// Like [`run`], with `extra` checks appended to a verify or report suite.
pub fn run_with_checks(cfg: &RunConfig, extra: Vec<Check>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let usage = |err: &mut dyn Write, msg: &str| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_USAGE
    };
    if let Err(msg) = cfg.validate() {
        return usage(err, &msg);
    }
    let wb = match Workbench::new(cfg.precision) {
        Ok(wb) => Arc::new(wb),
        Err(e) => return usage(err, &e.to_string()),
    };
    match &cfg.command {
        Command::Compute(req) => compute(cfg, &wb, req, out, err),
        Command::Verify(suite) | Command::Report(suite) => {
            let mut checks = Vec::with_capacity(suite.ids.len() + extra.len());
            for id in &suite.ids {
                match check_for(id) {
                    Ok(c) => checks.push(c),
                    Err(e) => return usage(err, &e.to_string()),
                }
            }
            for c in extra {
                if checks.iter().any(|k| k.id == c.id) {
                    return usage(err, &format!("duplicate check id `{}`", c.id));
                }
                checks.push(c);
            }
            let report = verify(cfg, &wb, &suite.name, &checks, err);
            let written = match cfg.output {
                OutputFormat::Human => report.write_human(out),
                OutputFormat::Json => report.write_json(out),
                OutputFormat::Csv => report.write_csv(out),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: writing the report: {e}");
                return EXIT_FAIL;
            }
            match (&cfg.command, report.all_pass()) {
                (Command::Report(_), _) | (_, true) => EXIT_PASS,
                _ => EXIT_FAIL,
            }
        }
    }
}

/// Runs `checks` on the pool and assembles the report. Reasons for rows
/// that produced no values go to `err`.
pub fn verify(
    cfg: &RunConfig,
    wb: &Arc<Workbench>,
    suite: &str,
    checks: &[Check],
    err: &mut dyn Write,
) -> VerificationReport {
    let evaluated = runner::run_checks(wb, checks, cfg.tol, cfg.parallelism, cfg.timeout);
    let (report, failures) = VerificationReport::assemble(suite, cfg.tol, &cfg.precision, evaluated, cfg.timing);
    for f in failures {
        let _ = writeln!(err, "{}: {}", f.id, f.reason);
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComputeRow {
    pub index: usize,
    pub route: String,
    pub value: String,
    pub err_estimate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComputeTable {
    pub sequence: String,
    pub precision_digits: u32,
    pub rows: Vec<ComputeRow>,
}

/// The table for a compute request, rows ordered by index then route.
pub fn compute_table(wb: &Workbench, req: &ComputeRequest) -> zeta_workbench::Result<ComputeTable> {
    let cfg = wb.config();
    let mut rows = Vec::new();
    for route in req.routes() {
        let seq = constant_sequence(wb, req.tag, req.indices.clone(), route.as_deref())?;
        rows.extend(seq.entries.into_iter().map(|e| ComputeRow {
            index: e.index,
            route: e.route,
            value: cfg.decimal(&e.value),
            err_estimate: cfg.decimal(&e.err_estimate),
        }));
    }
    // Stable: routes keep their listed order within an index.
    rows.sort_by_key(|r| r.index);
    Ok(ComputeTable {
        sequence: req.tag.id().to_string(),
        precision_digits: cfg.working_digits,
        rows,
    })
}

fn compute(cfg: &RunConfig, wb: &Workbench, req: &ComputeRequest, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let table = match compute_table(wb, req) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::Argument(_) | Error::Budget(_) | Error::UnknownId(_) | Error::Domain(_) | Error::Pole(_) => {
                    EXIT_USAGE
                }
                _ => EXIT_FAIL,
            };
        }
    };
    let written = match cfg.output {
        OutputFormat::Json => serde_json::to_writer_pretty(&mut *out, &table)
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(out)),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            table
                .rows
                .iter()
                .try_for_each(|r| w.serialize(r))
                .map_err(std::io::Error::from)
                .and_then(|_| w.flush())
        }
        OutputFormat::Human => {
            let width = table.rows.iter().map(|r| r.route.len()).max().unwrap_or(5).max(5);
            let mut text = format!("{:>3}  {:width$}  {:<48}  err_estimate\n", "n", "route", "value");
            for r in &table.rows {
                text += &format!("{:>3}  {:width$}  {:<48}  {}\n", r.index, r.route, r.value, r.err_estimate);
            }
            out.write_all(text.as_bytes())
        }
    };
    match written {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: writing the table: {e}");
            EXIT_FAIL
        }
    }
}
