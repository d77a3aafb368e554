//! Bounded worker pool with a per-check time limit.
//!
//! Each check runs on its own thread so that a runaway one can be abandoned
//! when its time is up; the worker records a failed row and moves on while
//! the abandoned thread finishes in the background.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use zeta_workbench::quadrature::evaluation_count;
use zeta_workbench::Workbench;

use crate::checks::{Check, Outcome};

/// MPFR temporaries live on the heap, but the quadrature and Bell recursions
/// still like more than the default 2 MiB.
const CHECK_STACK: usize = 32 << 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Done(Outcome),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub evaluations: u64,
    pub elapsed: Duration,
}

fn run_one(wb: &Arc<Workbench>, check: &Check, tol: f64, timeout: Duration) -> Evaluated {
    let (tx, rx) = mpsc::channel();
    let eval = check.eval.clone();
    let shared = wb.clone();
    let start = Instant::now();
    let spawned = thread::Builder::new()
        .name(check.id.clone())
        .stack_size(CHECK_STACK)
        .spawn(move || {
            let before = evaluation_count();
            let r = eval(&shared, tol);
            let _ = tx.send((r, evaluation_count() - before));
        });
    let (status, evaluations) = match spawned {
        Err(e) => (Status::Failed(format!("could not start: {e}")), 0),
        Ok(_) => match rx.recv_timeout(timeout) {
            Ok((Ok(o), n)) => (Status::Done(o), n),
            Ok((Err(e), n)) => (Status::Failed(e.to_string()), n),
            Err(mpsc::RecvTimeoutError::Timeout) => {
                (Status::Failed(format!("timed out after {} s", timeout.as_secs_f64())), 0)
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => (Status::Failed("panicked".into()), 0),
        },
    };
    Evaluated {
        id: check.id.clone(),
        description: check.description.clone(),
        status,
        evaluations,
        elapsed: start.elapsed(),
    }
}

/// Evaluates every check with at most `parallelism` running at once and
/// returns the results sorted by id.
pub fn run_checks(
    wb: &Arc<Workbench>,
    checks: &[Check],
    tol: f64,
    parallelism: usize,
    timeout: Duration,
) -> Vec<Evaluated> {
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(checks.len()));
    thread::scope(|s| {
        for _ in 0..parallelism.clamp(1, checks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(check) = checks.get(i) else { break };
                let r = run_one(wb, check, tol, timeout);
                results.lock().unwrap_or_else(|e| e.into_inner()).push(r);
            });
        }
    });
    let mut out = results.into_inner().unwrap_or_else(|e| e.into_inner());
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
