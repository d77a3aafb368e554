//! Complete and partial exponential Bell polynomials evaluated at given
//! arguments, and the inversion that recovers x from y = (Y₁(x), Y₂(x), …).
//!
//! Arguments are 1-based: `entries[0]` is x₁. Evaluation is generic over
//! [`BellScalar`], implemented for exact [`Rational`]s and for [`Float`]s; the
//! exact path never rounds.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::{Error, Result};

/// Ring operations needed to evaluate Bell polynomials.
pub trait BellScalar: Clone + std::fmt::Debug {
    /// The integer `n` in the same representation (and precision) as `self`.
    fn lift(&self, n: &Integer) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl BellScalar for Rational {
    fn lift(&self, n: &Integer) -> Self {
        Rational::from(n)
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
}

impl BellScalar for Float {
    fn lift(&self, n: &Integer) -> Self {
        Float::with_val(self.prec(), n)
    }
    fn add(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self + other)
    }
    fn mul(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self * other)
    }
    fn neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
}

/// Arguments x₁..xₙ plus a unit that fixes the representation when the
/// sequence is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct BellInput<T> {
    pub entries: Vec<T>,
    pub one: T,
}

impl BellInput<Rational> {
    pub fn exact(entries: Vec<Rational>) -> Self {
        BellInput {
            entries,
            one: Rational::from(1),
        }
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        BellInput::exact(entries.iter().map(|&v| Rational::from(v)).collect())
    }
}

impl BellInput<Float> {
    pub fn real(bits: u32, entries: Vec<Float>) -> Self {
        BellInput {
            entries,
            one: Float::with_val(bits, 1),
        }
    }
}

impl<T: BellScalar> BellInput<T> {
    fn zero(&self) -> T {
        self.one.lift(&Integer::new())
    }

    fn require(&self, len: usize) -> Result<()> {
        if self.entries.len() < len {
            return Err(Error::Argument(format!(
                "Bell evaluation needs {len} arguments, got {}",
                self.entries.len()
            )));
        }
        Ok(())
    }

    /// The sequence with xⱼ replaced by (−1)ʲxⱼ.
    pub fn alternated(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v.neg() } else { v.clone() })
            .collect();
        BellInput {
            entries,
            one: self.one.clone(),
        }
    }
}

fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

fn binomial(n: usize, k: usize) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// Calls `visit` with every (k₁, …, kₙ) satisfying Σ j·kⱼ = n, in
/// lexicographic order.
fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(j: usize, remaining: usize, ks: &mut Vec<usize>, n: usize, visit: &mut dyn FnMut(&[usize])) {
        if j > n {
            if remaining == 0 {
                visit(ks);
            }
            return;
        }
        for k in 0..=remaining / j {
            ks[j - 1] = k;
            rec(j + 1, remaining - k * j, ks, n, visit);
        }
        ks[j - 1] = 0;
    }
    let mut ks = vec![0; n];
    rec(1, n, &mut ks, n, &mut visit);
}

fn power<T: BellScalar>(x: &T, k: usize, one: &T) -> T {
    let mut acc = one.clone();
    for _ in 0..k {
        acc = acc.mul(x);
    }
    acc
}

/// Yₙ(x) as the sum over all partitions of n of
/// n!/(k₁!⋯kₙ!) · Π (xⱼ/j!)^{kⱼ}.
pub fn bell_complete_partition<T: BellScalar>(x: &BellInput<T>, n: usize) -> Result<T> {
    x.require(n)?;
    let mut total = x.zero();
    let n_fact = factorial(n);
    for_each_partition(n, |ks| {
        let mut denom = Integer::from(1);
        let mut term = x.one.clone();
        for (idx, &k) in ks.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let j = idx + 1;
            denom *= factorial(k);
            denom *= factorial(j).pow(k as u32);
            term = term.mul(&power(&x.entries[idx], k, &x.one));
        }
        let coef = Integer::from(&n_fact / &denom);
        total = total.add(&term.mul(&x.one.lift(&coef)));
    });
    Ok(total)
}

/// Y₀..Yₙ by Y_{m+1} = Σᵢ C(m, i)·Y_{m−i}·x_{i+1}.
pub fn bell_complete_sequence<T: BellScalar>(x: &BellInput<T>, n: usize) -> Result<Vec<T>> {
    x.require(n)?;
    let mut ys = vec![x.one.clone()];
    for m in 0..n {
        let mut next = x.zero();
        for i in 0..=m {
            let c = x.one.lift(&binomial(m, i));
            next = next.add(&c.mul(&ys[m - i]).mul(&x.entries[i]));
        }
        ys.push(next);
    }
    Ok(ys)
}

/// Yₙ(x) by the binomial recurrence.
pub fn bell_complete_recurrence<T: BellScalar>(x: &BellInput<T>, n: usize) -> Result<T> {
    Ok(bell_complete_sequence(x, n)?.pop().expect("sequence holds Y₀"))
}

/// Table `t[n][k]` = B_{n,k}(x) for 0 ≤ k ≤ n ≤ `max_n`, from
/// B_{n,k} = Σᵢ C(n−1, i−1)·xᵢ·B_{n−i,k−1}.
pub fn bell_partial_table<T: BellScalar>(x: &BellInput<T>, max_n: usize) -> Result<Vec<Vec<T>>> {
    x.require(max_n)?;
    let zero = x.zero();
    let mut table: Vec<Vec<T>> = Vec::with_capacity(max_n + 1);
    table.push(vec![x.one.clone()]);
    for n in 1..=max_n {
        let mut row = vec![zero.clone(); n + 1];
        for k in 1..=n {
            let mut acc = zero.clone();
            for i in 1..=(n - k + 1) {
                let c = x.one.lift(&binomial(n - 1, i - 1));
                acc = acc.add(&c.mul(&x.entries[i - 1]).mul(&table[n - i][k - 1]));
            }
            row[k] = acc;
        }
        table.push(row);
    }
    Ok(table)
}

/// B_{n,k}(x₁, …, x_{n−k+1}).
pub fn bell_partial<T: BellScalar>(n: usize, k: usize, x: &BellInput<T>) -> Result<T> {
    if k > n {
        return Err(Error::Argument(format!("partial Bell polynomial needs k ≤ n, got B_{{{n},{k}}}")));
    }
    if n == 0 {
        return Ok(x.one.clone());
    }
    if k == 0 {
        return Ok(x.zero());
    }
    x.require(n - k + 1)?;
    // Only x₁..x_{n−k+1} enter; pad the rest so the table can be built.
    let mut padded = x.clone();
    padded.entries.truncate(n - k + 1);
    padded.entries.resize(n, x.zero());
    Ok(bell_partial_table(&padded, n)?[n][k].clone())
}

/// yₙ = Σₖ B_{n,k}(x) = Yₙ(x) for n = 1..len.
pub fn bell_forward<T: BellScalar>(x: &BellInput<T>) -> Result<Vec<T>> {
    let n = x.entries.len();
    let mut ys = bell_complete_sequence(x, n)?;
    ys.remove(0);
    Ok(ys)
}

/// The x with Yₙ(x) = yₙ for all n:
/// xₙ = Σₖ (−1)^{k−1}(k−1)!·B_{n,k}(y₁, …, y_{n−k+1}).
pub fn bell_invert<T: BellScalar>(y: &BellInput<T>) -> Result<Vec<T>> {
    let n = y.entries.len();
    if n == 0 {
        return Err(Error::Argument("Bell inversion needs at least one value".into()));
    }
    let table = bell_partial_table(y, n)?;
    let mut xs = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = y.zero();
        for k in 1..=m {
            let mut c = y.one.lift(&factorial(k - 1));
            if k % 2 == 0 {
                c = c.neg();
            }
            acc = acc.add(&c.mul(&table[m][k]));
        }
        xs.push(acc);
    }
    Ok(xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> BellInput<Rational> {
        BellInput::from_integers(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(bell_complete_partition(&ints(&[]), 0).unwrap(), 1);
        assert_eq!(bell_complete_partition(&ints(&[3, 4]), 2).unwrap(), 13);
        assert_eq!(bell_complete_partition(&ints(&[1; 6]), 6).unwrap(), 203);
        assert_eq!(bell_complete_recurrence(&ints(&[1, 1, 1]), 3).unwrap(), 5);
        assert_eq!(bell_complete_recurrence(&ints(&[1; 4]), 4).unwrap(), 15);
        assert_eq!(bell_complete_recurrence(&ints(&[2, 0, 0, 0, 0]), 5).unwrap(), 32);
    }

    #[test]
    fn partition_order_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_partition(4, |ks| seen.push(ks.to_vec()));
        assert_eq!(seen.len(), 5);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
    }

    #[test]
    fn partial_values() {
        assert_eq!(bell_partial(0, 0, &ints(&[])).unwrap(), 1);
        assert_eq!(bell_partial(3, 2, &ints(&[1, 1])).unwrap(), 3);
        let x = ints(&[1; 4]);
        let total = (1..=4).fold(Rational::new(), |acc, k| acc + bell_partial(4, k, &x).unwrap());
        assert_eq!(total, 15);
        assert!(bell_partial(2, 3, &x).is_err());
    }

    #[test]
    fn short_input_is_an_argument_error() {
        assert!(matches!(bell_complete_partition(&ints(&[1]), 2), Err(Error::Argument(_))));
        assert!(matches!(bell_complete_recurrence(&ints(&[1]), 2), Err(Error::Argument(_))));
        assert!(bell_invert(&ints(&[])).is_err());
    }

    #[test]
    fn inversion_round_trips() {
        let y = ints(&[1, 2, 3]);
        let x = bell_invert(&y).unwrap();
        assert_eq!(bell_forward(&BellInput::exact(x)).unwrap(), y.entries);
        let x = ints(&[5, -1, 7]);
        let y = bell_forward(&x).unwrap();
        assert_eq!(bell_invert(&BellInput::exact(y)).unwrap(), x.entries);
        assert_eq!(bell_invert(&ints(&[9])).unwrap(), vec![Rational::from(9)]);
    }

    #[test]
    fn float_path_matches_exact_path() {
        let exact = BellInput::exact(vec![
            Rational::from((1, 3)),
            Rational::from((-2, 7)),
            Rational::from(5),
            Rational::from((1, 11)),
        ]);
        let real = BellInput::real(200, exact.entries.iter().map(|r| Float::with_val(200, r)).collect());
        let a = bell_complete_recurrence(&exact, 4).unwrap();
        let b = bell_complete_partition(&real, 4).unwrap();
        assert!(Float::with_val(200, &b - &a).abs() < 1e-55);
    }
}
