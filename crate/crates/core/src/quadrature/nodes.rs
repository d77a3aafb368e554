//! Abscissas and weights of the double-exponential rules, cached per
//! (precision, level, map).
//!
//! Level 0 uses step 1 and nodes at every integer t; level L ≥ 1 adds the odd
//! multiples of 2^-L. Summing all levels up to L gives the full rule with
//! step 2^-L.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::Float;

/// |t| limit for the tanh-sinh map; 1 − tanh is about e^{−2000} there.
pub(crate) const TANH_SINH_T_MAX: f64 = 6.5;
/// Limits of t for the exp-sinh map x = a + exp(π/2 · sinh t).
pub(crate) const EXP_SINH_T_MIN: f64 = -6.5;
pub(crate) const EXP_SINH_T_MAX: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Map {
    /// Nodes for t ≥ 0: `offset` is 1/(e^{2s}+1) with s = π/2 · sinh t, the
    /// distance from the nearer endpoint as a fraction of the interval.
    TanhSinh,
    /// Nodes for t ≥ 0: `offset` is exp(π/2 · sinh t).
    ExpSinhUpper,
    /// Nodes for t < 0: `offset` is exp(π/2 · sinh t).
    ExpSinhLower,
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub t: f64,
    pub offset: Float,
    /// dx/dt per unit interval length (tanh-sinh) or absolute (exp-sinh).
    pub weight: Float,
}

type Key = (u32, u32, Map);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Vec<Node>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<Node>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// New nodes contributed by `level`, ordered outward from t = 0.
pub(crate) fn level_nodes(bits: u32, level: u32, map: Map) -> Arc<Vec<Node>> {
    let key = (bits, level, map);
    if let Some(found) = cache().lock().expect("node cache poisoned").get(&key) {
        return Arc::clone(found);
    }
    let nodes = Arc::new(build(bits, level, map));
    cache()
        .lock()
        .expect("node cache poisoned")
        .entry(key)
        .or_insert(nodes)
        .clone()
}

fn ts_for(level: u32, map: Map) -> Vec<f64> {
    let h = (0.5f64).powi(level as i32);
    let (lo, hi) = match map {
        Map::TanhSinh => (0.0, TANH_SINH_T_MAX),
        Map::ExpSinhUpper => (0.0, EXP_SINH_T_MAX),
        Map::ExpSinhLower => (0.0, -EXP_SINH_T_MIN),
    };
    let mut out = Vec::new();
    if level == 0 {
        let mut j = if map == Map::ExpSinhLower { 1 } else { 0 };
        while f64::from(j) <= hi {
            out.push(f64::from(j));
            j += 1;
        }
    } else {
        let mut j = 1u32;
        loop {
            let t = f64::from(2 * j - 1) * h;
            if t > hi {
                break;
            }
            if t >= lo {
                out.push(t);
            }
            j += 1;
        }
    }
    if map == Map::ExpSinhLower {
        out.iter_mut().for_each(|t| *t = -*t);
    }
    out
}

fn build(bits: u32, level: u32, map: Map) -> Vec<Node> {
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    ts_for(level, map)
        .into_iter()
        .map(|t| {
            // t is a dyadic rational, exactly representable.
            let tf = Float::with_val(bits, t);
            let (sinh, cosh) = tf.sinh_cosh(Float::new(bits));
            let s = Float::with_val(bits, &half_pi * &sinh);
            let ds = Float::with_val(bits, &half_pi * &cosh);
            match map {
                Map::TanhSinh => {
                    // 1 − tanh s = 2/(e^{2s}+1); distance fraction is half that.
                    let e2s = Float::with_val(bits, &s * 2u32).exp();
                    let offset = Float::with_val(bits, &e2s + 1u32).recip();
                    // dx/dt = (b−a)/2 · sech²s · ds; sech²s = 4e^{2s}/(e^{2s}+1)².
                    let sech2 = Float::with_val(bits, &offset * &offset) * &e2s * 4u32;
                    let weight = sech2 * ds / 2u32;
                    Node { t, offset, weight }
                }
                Map::ExpSinhUpper | Map::ExpSinhLower => {
                    let offset = s.exp();
                    let weight = Float::with_val(bits, &offset * &ds);
                    Node { t, offset, weight }
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_interleave_without_duplicates() {
        let mut all: Vec<f64> = Vec::new();
        for level in 0..=4 {
            all.extend(level_nodes(100, level, Map::TanhSinh).iter().map(|n| n.t));
        }
        let count = all.len();
        all.sort_by(f64::total_cmp);
        all.dedup();
        assert_eq!(all.len(), count);
        assert_eq!(all[1] - all[0], 1.0 / 16.0);
    }

    #[test]
    fn tanh_sinh_offset_is_accurate_far_out() {
        let nodes = level_nodes(200, 0, Map::TanhSinh);
        let last = nodes.last().unwrap();
        assert!(last.offset > 0);
        // t = 6 gives 1/(e^{π sinh 6} + 1) ≈ 1e-275
        assert!(last.offset < 1e-270);
    }

    #[test]
    fn exp_sinh_lower_nodes_are_negative() {
        let nodes = level_nodes(100, 1, Map::ExpSinhLower);
        assert!(nodes.iter().all(|n| n.t < 0.0));
        assert!(nodes.iter().all(|n| n.offset < 1));
    }
}
