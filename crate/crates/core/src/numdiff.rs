//! Central finite differences at extended precision.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::Result;

/// n-th central difference Σᵢ (−1)ⁱ C(n, i) f(x + (n/2 − i)h) / hⁿ.
pub(crate) fn central_difference<F>(f: &F, x: &Float, n: u32, h: &Float) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let bits = x.prec().max(h.prec());
    let mut acc = Float::new(bits);
    for i in 0..=n {
        let offset = Float::with_val(bits, f64::from(n) / 2.0 - f64::from(i)) * h;
        let v = f(&Float::with_val(bits, x + offset))?;
        let c = Float::with_val(bits, Integer::from(Integer::binomial_u(n, i)));
        if i % 2 == 0 {
            acc += c * v;
        } else {
            acc -= c * v;
        }
    }
    Ok(acc / Float::with_val(bits, h.pow(n)))
}

/// A derivative from steps h and h/2.
#[derive(Debug, Clone)]
pub(crate) struct Derivative {
    /// Richardson combination (4·D(h/2) − D(h))/3.
    pub value: Float,
    /// |D(h/2) − D(h)|, how far halving the step moved the raw difference.
    pub halving_shift: Float,
}

pub(crate) fn derivative<F>(f: &F, x: &Float, n: u32, h: &Float) -> Result<Derivative>
where
    F: Fn(&Float) -> Result<Float>,
{
    let bits = x.prec().max(h.prec());
    let coarse = central_difference(f, x, n, h)?;
    let half = Float::with_val(bits, h / 2u32);
    let fine = central_difference(f, x, n, &half)?;
    let halving_shift = Float::with_val(bits, &fine - &coarse).abs();
    let value = (fine * 4u32 - coarse) / 3u32;
    Ok(Derivative { value, halving_shift })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_exp() {
        let bits = 200;
        let f = |x: &Float| Ok(Float::with_val(bits, x.exp_ref()));
        let x = Float::with_val(bits, 0.5);
        let h = Float::with_val(bits, 1e-8);
        let e = Float::with_val(bits, x.exp_ref());
        for n in 0..=4 {
            let d = derivative(&f, &x, n, &h).unwrap();
            let err = Float::with_val(bits, &d.value - &e).abs();
            assert!(err < 1e-25, "n = {n}: {err}");
            assert!(d.halving_shift < 1e-14);
        }
    }
}
