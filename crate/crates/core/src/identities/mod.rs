//! Kernels, the auxiliary functions J/K/H/I, and a catalog of identities
//! that can each be evaluated to a residual.
//!
//! A catalog record evaluates its two sides separately. Parameters are
//! plain `f64` values (s, u, n, …) converted to working precision; a record
//! with discrete parameters lists its default points, and evaluating with no
//! parameters runs all of them and reports the worst one.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rug::Float;

use crate::quadrature::evaluation_count;
use crate::{Error, Result, Workbench};

mod catalog;
pub mod cohen;
pub mod kernels;
pub mod named;
pub mod representations;

pub use cohen::{cohen_partial_sum, cohen_series, CohenRoutes, MIN_COHEN_TOL};
pub use kernels::{asymptotic_tail, asymptotic_value, kernel_eval, kernel_log_moment, Kernel};
pub use named::{i_closed_form, named_function_eval, NamedFunction};
pub use representations::{kernel_mellin_log, zeta_db_kernel, zeta_debruijn, zeta_kloosterman};

/// Parameter values by name.
pub type Params = BTreeMap<&'static str, f64>;

/// One side of an identity.
pub type Side = Box<dyn Fn(&Workbench, &Params) -> Result<Float> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDomain {
    /// A real in the open interval (min, max), avoiding the listed points.
    Real { min: f64, max: f64, exclude: &'static [f64] },
    /// An integer in min..=max.
    Integer { min: i64, max: i64 },
}

impl ParamDomain {
    fn check(&self, name: &str, v: f64) -> Result<()> {
        let ok = match *self {
            ParamDomain::Real { min, max, exclude } => v > min && v < max && !exclude.contains(&v),
            ParamDomain::Integer { min, max } => v.fract() == 0.0 && v >= min as f64 && v <= max as f64,
        };
        if v.is_finite() && ok {
            return Ok(());
        }
        if let ParamDomain::Real { exclude, .. } = self {
            if exclude.contains(&v) {
                return Err(Error::Pole(format!("{name} = {v}")));
            }
        }
        Err(Error::Domain(format!("{name} = {v} is outside {self}")))
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamDomain::Real { min, max, exclude: [] } => write!(f, "({min}, {max})"),
            ParamDomain::Real { min, max, exclude } => write!(f, "({min}, {max}) without {exclude:?}"),
            ParamDomain::Integer { min, max } => write!(f, "{{{min}, …, {max}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
    /// Values tried when the caller gives none.
    pub defaults: Vec<f64>,
}

/// How the caller's tolerance applies to a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TolRule {
    Global,
    /// The tolerance is multiplied by `factor` at points where `param` ≥ `from`.
    RelaxedFrom { param: &'static str, from: f64, factor: f64 },
    /// The tolerance is never looser than the bound.
    AtMost(f64),
}

impl TolRule {
    fn apply(&self, tol: f64, p: &Params) -> f64 {
        match *self {
            TolRule::Global => tol,
            TolRule::RelaxedFrom { param, from, factor } => match p.get(param) {
                Some(v) if *v >= from => tol * factor,
                _ => tol,
            },
            TolRule::AtMost(bound) => tol.min(bound),
        }
    }
}

pub struct IdentityRecord {
    pub id: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
    pub tol_rule: TolRule,
    pub lhs: Side,
    pub rhs: Side,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("tol_rule", &self.tol_rule)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    /// Cartesian product of the default values.
    pub fn default_points(&self) -> Vec<Params> {
        let mut points = vec![Params::new()];
        for spec in &self.params {
            points = points
                .into_iter()
                .flat_map(|p| {
                    spec.defaults.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(spec.name, *v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn check_params(&self, p: &Params) -> Result<()> {
        for name in p.keys() {
            if !self.params.iter().any(|s| s.name == *name) {
                return Err(Error::Argument(format!("{} takes no parameter `{name}`", self.id)));
            }
        }
        for spec in &self.params {
            let v = p
                .get(spec.name)
                .ok_or_else(|| Error::Argument(format!("{} needs parameter `{}`", self.id, spec.name)))?;
            spec.domain.check(spec.name, *v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub lhs_value: Float,
    pub rhs_value: Float,
    pub abs_err: Float,
    /// abs_err/|rhs|, or abs_err when rhs is 0.
    pub rel_err: Float,
    pub evaluations: u64,
    pub pass: bool,
    /// The tolerance the point was judged against.
    pub tol: f64,
    /// The point reported: the given one, or the worst default.
    pub params: Params,
}

/// All records, built once.
pub fn catalog() -> &'static [IdentityRecord] {
    static CATALOG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    CATALOG.get_or_init(catalog::records)
}

pub fn catalog_ids() -> Vec<&'static str> {
    catalog().iter().map(|r| r.id).collect()
}

pub fn find_identity(id: &str) -> Result<&'static IdentityRecord> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn residual_at(wb: &Workbench, rec: &IdentityRecord, p: Params, tol: f64) -> Result<Residual> {
    let lhs = (rec.lhs)(wb, &p)?;
    let rhs = (rec.rhs)(wb, &p)?;
    let bits = wb.config().bits();
    let abs_err = Float::with_val(bits, &lhs - &rhs).abs();
    let rel_err = if rhs.is_zero() {
        abs_err.clone()
    } else {
        Float::with_val(bits, &abs_err / Float::with_val(bits, rhs.abs_ref()))
    };
    let tol = rec.tol_rule.apply(tol, &p);
    Ok(Residual {
        pass: abs_err <= tol,
        lhs_value: lhs,
        rhs_value: rhs,
        abs_err,
        rel_err,
        evaluations: 0,
        tol,
        params: p,
    })
}

/// Evaluates both sides of `id` and compares them against `tol`.
///
/// With empty `params` every default point is run and the one with the
/// largest abs_err/tol is returned; evaluations cover all points.
pub fn evaluate_identity(wb: &Workbench, id: &str, params: &Params, tol: f64) -> Result<Residual> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    let rec = find_identity(id)?;
    let points = if params.is_empty() { rec.default_points() } else { vec![params.clone()] };
    let before = evaluation_count();
    let mut worst: Option<(f64, Residual)> = None;
    for p in points {
        rec.check_params(&p)?;
        let r = residual_at(wb, rec, p, tol)?;
        let score = r.abs_err.to_f64() / r.tol;
        if worst.as_ref().map_or(true, |(s, _)| score > *s || score.is_nan()) {
            worst = Some((score, r));
        }
    }
    let (_, mut r) = worst.expect("at least one point");
    r.evaluations = evaluation_count() - before;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_rules() {
        let mut p = Params::new();
        p.insert("k", 5.0);
        let relaxed = TolRule::RelaxedFrom { param: "k", from: 5.0, factor: 100.0 };
        assert_eq!(relaxed.apply(1e-8, &p), 1e-6);
        p.insert("k", 4.0);
        assert_eq!(relaxed.apply(1e-8, &p), 1e-8);
        assert_eq!(TolRule::AtMost(1e-20).apply(1e-8, &p), 1e-20);
    }

    #[test]
    fn domains() {
        let d = ParamDomain::Real { min: 0.0, max: 2.0, exclude: &[1.0] };
        assert!(d.check("s", 0.5).is_ok());
        assert!(matches!(d.check("s", 1.0), Err(Error::Pole(_))));
        assert!(matches!(d.check("s", 2.0), Err(Error::Domain(_))));
        let n = ParamDomain::Integer { min: 1, max: 3 };
        assert!(n.check("n", 2.0).is_ok());
        assert!(n.check("n", 2.5).is_err());
    }
}
