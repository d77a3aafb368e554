//! A precision plus the caches of values that many checks share.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::identities::cohen::{self, CohenRoutes};
use crate::identities::{kernel_log_moment, Kernel};
use crate::quadrature::{attribute_evaluations, evaluation_count};
use crate::specfun::{stieltjes_table, zeta_deriv_em, zeta_em, STIELTJES_MAX};
use crate::{Error, PrecisionConfig, Result};

/// Highest derivative order served by [`Workbench::zeta_deriv0_oracle`].
pub const ZETA_DERIV0_MAX: usize = 12;

/// Highest log power of the cached kernel moments.
pub const MOMENT_MAX: u32 = 9;

struct Cached<T> {
    value: Result<T>,
    evaluations: u64,
}

type Cell<T> = Arc<OnceLock<Cached<T>>>;

/// Returns the cached value, computing it on first use. A hit charges the
/// evaluations of the original computation to the calling thread, so the
/// count reported for a check is the same whichever thread filled the cache.
fn cached<T: Clone>(cell: &OnceLock<Cached<T>>, compute: impl FnOnce() -> Result<T>) -> Result<T> {
    let mut fresh = false;
    let entry = cell.get_or_init(|| {
        fresh = true;
        let before = evaluation_count();
        let value = compute();
        Cached {
            value,
            evaluations: evaluation_count() - before,
        }
    });
    if !fresh {
        attribute_evaluations(entry.evaluations);
    }
    entry.value.clone()
}

fn keyed<K, T>(map: &Mutex<HashMap<K, Cell<T>>>, key: K) -> Cell<T>
where
    K: std::hash::Hash + Eq,
{
    let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(key).or_default().clone()
}

/// Entry point for everything that needs a precision: holds the
/// configuration and memoizes the oracle tables, the kernel log-moments and
/// the Cohen-series routes. Safe to share between threads.
pub struct Workbench {
    cfg: PrecisionConfig,
    stieltjes: OnceLock<Cached<Vec<Float>>>,
    zeta_deriv0: OnceLock<Cached<Vec<Float>>>,
    zeta_int: Mutex<HashMap<u32, Cell<Float>>>,
    moments: Mutex<HashMap<(Kernel, u32), Cell<Float>>>,
    cohen: OnceLock<Cached<CohenRoutes>>,
}

impl std::fmt::Debug for Workbench {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workbench").field("cfg", &self.cfg).finish_non_exhaustive()
    }
}

impl Workbench {
    pub fn new(cfg: PrecisionConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Workbench {
            cfg,
            stieltjes: OnceLock::new(),
            zeta_deriv0: OnceLock::new(),
            zeta_int: Mutex::new(HashMap::new()),
            moments: Mutex::new(HashMap::new()),
            cohen: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    /// γₙ from the Euler–Maclaurin oracle, n ≤ 12.
    pub fn stieltjes_oracle(&self, n: usize) -> Result<Float> {
        if n > STIELTJES_MAX {
            return Err(Error::Budget(format!(
                "Stieltjes oracle serves n ≤ {STIELTJES_MAX}, asked for {n}"
            )));
        }
        let table = cached(&self.stieltjes, || {
            stieltjes_table(&self.cfg, STIELTJES_MAX, &self.cfg.num(1), None)
        })?;
        Ok(table[n].clone())
    }

    /// ζ⁽ⁿ⁾(0) from the Euler–Maclaurin oracle, n ≤ 12.
    pub fn zeta_deriv0_oracle(&self, n: usize) -> Result<Float> {
        if n > ZETA_DERIV0_MAX {
            return Err(Error::Budget(format!(
                "ζ⁽ⁿ⁾(0) oracle serves n ≤ {ZETA_DERIV0_MAX}, asked for {n}"
            )));
        }
        let table = cached(&self.zeta_deriv0, || {
            let zero = self.cfg.zero();
            (0..=ZETA_DERIV0_MAX).map(|r| zeta_deriv_em(&self.cfg, &zero, r)).collect()
        })?;
        Ok(table[n].clone())
    }

    /// ζ(n) for an integer n ≥ 2.
    pub fn zeta_int(&self, n: u32) -> Result<Float> {
        if n < 2 {
            return Err(Error::Domain(format!("integer zeta needs n ≥ 2, got {n}")));
        }
        let cell = keyed(&self.zeta_int, n);
        cached(&cell, || zeta_em(&self.cfg, &self.cfg.num(n)))
    }

    /// ∫₀^∞ K(u) logᵏu du for kernel A or B and k ≤ 9.
    pub fn kernel_moment(&self, kernel: Kernel, k: u32) -> Result<Float> {
        if k > MOMENT_MAX {
            return Err(Error::Budget(format!("log moments serve k ≤ {MOMENT_MAX}, asked for {k}")));
        }
        let cell = keyed(&self.moments, (kernel, k));
        cached(&cell, || kernel_log_moment(&self.cfg, kernel, k))
    }

    /// The four evaluations of the Cohen series.
    pub fn cohen_routes(&self) -> Result<CohenRoutes> {
        cached(&self.cohen, || cohen::compute_routes(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_hits_charge_the_original_evaluations() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        let before = evaluation_count();
        let first = wb.kernel_moment(Kernel::B, 0).unwrap();
        let spent = evaluation_count() - before;
        assert!(spent > 0);
        let again = evaluation_count();
        let second = wb.kernel_moment(Kernel::B, 0).unwrap();
        assert_eq!(evaluation_count() - again, spent);
        assert_eq!(first, second);
    }

    #[test]
    fn rejects_out_of_budget_requests() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        assert!(matches!(wb.stieltjes_oracle(13), Err(Error::Budget(_))));
        assert!(matches!(wb.zeta_deriv0_oracle(13), Err(Error::Budget(_))));
        assert!(matches!(wb.kernel_moment(Kernel::A, 10), Err(Error::Budget(_))));
        assert!(matches!(wb.zeta_int(1), Err(Error::Domain(_))));
    }
}
