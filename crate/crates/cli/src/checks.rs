//! A uniform view of catalog identities and structure checks.

use std::sync::Arc;

use rug::Float;
use zeta_workbench::constants::{run_structure_check, structure_description, SEQUENCE_MAX, STRUCTURE_CHECKS};
use zeta_workbench::identities::{evaluate_identity, find_identity, Params};
use zeta_workbench::{Result, Workbench};

/// The result of one check, before rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub lhs: Float,
    pub rhs: Float,
    pub abs_err: Float,
    pub rel_err: Float,
    pub tol: f64,
    pub pass: bool,
}

/// Evaluates a check at the run tolerance.
pub type Evaluator = Arc<dyn Fn(&Workbench, f64) -> Result<Outcome> + Send + Sync>;

#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub eval: Evaluator,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).finish_non_exhaustive()
    }
}

fn catalog_check(id: &str) -> Result<Check> {
    let rec = find_identity(id)?;
    let id = rec.id;
    Ok(Check {
        id: id.to_string(),
        description: rec.description.to_string(),
        eval: Arc::new(move |wb, tol| {
            let r = evaluate_identity(wb, id, &Params::new(), tol)?;
            Ok(Outcome {
                lhs: r.lhs_value,
                rhs: r.rhs_value,
                abs_err: r.abs_err,
                rel_err: r.rel_err,
                tol: r.tol,
                pass: r.pass,
            })
        }),
    })
}

/// Structure checks keep their own thresholds; the run tolerance does not
/// apply to them.
fn structure_check(id: &'static str) -> Result<Check> {
    let description = structure_description(id)?;
    Ok(Check {
        id: id.to_string(),
        description: format!("{description}, n ≤ {SEQUENCE_MAX}"),
        eval: Arc::new(move |wb, _tol| {
            let c = run_structure_check(wb, id, SEQUENCE_MAX)?;
            let bits = wb.config().bits();
            let rel_err = if c.rhs.is_zero() {
                c.abs_err.clone()
            } else {
                Float::with_val(bits, &c.abs_err / Float::with_val(bits, c.rhs.abs_ref()))
            };
            Ok(Outcome {
                lhs: c.lhs,
                rhs: c.rhs,
                abs_err: c.abs_err,
                rel_err,
                tol: c.tol,
                pass: c.pass,
            })
        }),
    })
}

/// The check for a catalog or structure id.
pub fn check_for(id: &str) -> Result<Check> {
    match STRUCTURE_CHECKS.iter().find(|s| **s == id) {
        Some(s) => structure_check(s),
        None => catalog_check(id),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeta_workbench::Error;

    #[test]
    fn every_structure_id_has_a_check() {
        for id in STRUCTURE_CHECKS {
            assert_eq!(check_for(id).unwrap().id, id);
        }
        assert!(matches!(check_for("EQ_0_0"), Err(Error::UnknownId(_))));
    }
}
