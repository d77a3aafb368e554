//! Bernoulli numbers, exact and rounded.
//!
//! The exact table grows on demand under a lock; rounded copies are kept per
//! binary precision so the series loops never touch rationals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

/// Even-index Bernoulli numbers: entry `k` holds B₂ₖ.
static EXACT_EVEN: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

type RoundedTables = Mutex<HashMap<u32, Arc<Vec<Float>>>>;

fn rounded_tables() -> &'static RoundedTables {
    static TABLES: OnceLock<RoundedTables> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// B₂ₖ as an exact rational.
pub fn bernoulli_even(k: usize) -> Rational {
    {
        let table = EXACT_EVEN.read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(k) {
            return b.clone();
        }
    }
    let mut table = EXACT_EVEN.write().expect("bernoulli table poisoned");
    extend_exact(&mut table, k + 1);
    table[k].clone()
}

/// Bₙ for any n, with B₁ = −1/2.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        1 => Rational::from((-1, 2)),
        n if n % 2 == 1 => Rational::new(),
        n => bernoulli_even(n / 2),
    }
}

/// Extends the even table to `len` entries with
/// B₂ₖ = −(1 + C(2k+1, 1)·B₁ + Σ_{i<k} C(2k+1, 2i)·B₂ᵢ) / (2k+1).
fn extend_exact(table: &mut Vec<Rational>, len: usize) {
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() < len {
        let k = table.len() as u32;
        let n1 = 2 * k + 1;
        let mut acc = Rational::from(1) - Rational::from((n1, 2));
        for (i, b) in table.iter().enumerate().skip(1) {
            let binom = Integer::from(Integer::binomial_u(n1, 2 * i as u32));
            acc += Rational::from(b * binom);
        }
        table.push(-acc / n1);
    }
}

/// B₀, B₂, …, B₂₍ₙ₋₁₎ rounded to `bits`, shared across callers.
pub(crate) fn even_table(bits: u32, count: usize) -> Arc<Vec<Float>> {
    let mut tables = rounded_tables().lock().expect("bernoulli cache poisoned");
    if let Some(t) = tables.get(&bits) {
        if t.len() >= count {
            return Arc::clone(t);
        }
    }
    let target = count.max(64);
    let values: Vec<Float> = (0..target)
        .map(|k| Float::with_val(bits, &bernoulli_even(k)))
        .collect();
    let arc = Arc::new(values);
    tables.insert(bits, Arc::clone(&arc));
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(20), Rational::from((-174611, 330)));
    }

    #[test]
    fn sum_rule_holds_exactly() {
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0 for n ≥ 1.
        for n in 1..40u32 {
            let mut s = Rational::new();
            for j in 0..=n {
                s += bernoulli(j as usize) * Integer::from(Integer::binomial_u(n + 1, j));
            }
            assert_eq!(s, 0, "n = {n}");
        }
    }

    #[test]
    fn rounded_table_matches_exact() {
        let t = even_table(200, 30);
        assert!(t.len() >= 30);
        let exact = Float::with_val(200, &bernoulli_even(29));
        assert_eq!(t[29], exact);
    }
}
