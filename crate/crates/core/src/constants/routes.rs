//! Independent routes to γₙ and ζ⁽ⁿ⁾(0).
//!
//! The integral routes combine log-moments of kernels A and B with Bell
//! polynomials of zeta values; the sequence routes go through the Lehmer
//! constants or the functional equation. Each route is a different formula,
//! so agreement between them is a genuine check.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Float;

use super::{
    bell_values, binomial, budget, even_zeta_args, factorial, g_deriv0, lehmer_b, sign, SEQUENCE_MAX,
};
use crate::identities::Kernel;
use crate::specfun::STIELTJES_MAX;
use crate::workbench::ZETA_DERIV0_MAX;
use crate::{Error, Result, Workbench};

/// Largest index for routes built on kernel log-moments.
pub const INTEGRAL_ROUTE_MAX: usize = 8;
/// Largest index for the routes through the constant sequences.
pub const SEQUENCE_ROUTE_MAX: usize = SEQUENCE_MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StieltjesRoute {
    Oracle,
    /// Σ C(n,k)(−1)ᵏ Yₖ(−even zeta args)·∫B logⁿ⁻ᵏ.
    BellSum,
    /// The sine-weighted sum of B log-moments, solved for γₙ.
    LeibnizSine,
    /// Triangular solve of the B log-moment expansion in γ.
    TriangularInversion,
}

impl StieltjesRoute {
    pub const ALL: [StieltjesRoute; 4] = [
        StieltjesRoute::Oracle,
        StieltjesRoute::BellSum,
        StieltjesRoute::LeibnizSine,
        StieltjesRoute::TriangularInversion,
    ];

    pub fn id(self) -> &'static str {
        match self {
            StieltjesRoute::Oracle => "oracle",
            StieltjesRoute::BellSum => "bell_2_3",
            StieltjesRoute::LeibnizSine => "leibniz_2_13",
            StieltjesRoute::TriangularInversion => "inversion_2_5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZetaDerivRoute {
    Oracle,
    /// Sine-weighted sum of A log-moments.
    KernelIntegral,
    /// Bell polynomials of even zeta values times A log-moments.
    BellKernel,
    /// The same expansion solved recursively for the derivatives.
    LeibnizKernel,
    /// Functional equation with the Stieltjes constants.
    Functional,
    /// Bell polynomial of the Lehmer constants.
    Lehmer,
    /// Recurrence in the Lehmer constants seeded with ζ(0) = −½.
    Recurrence,
}

impl ZetaDerivRoute {
    pub const ALL: [ZetaDerivRoute; 7] = [
        ZetaDerivRoute::Oracle,
        ZetaDerivRoute::KernelIntegral,
        ZetaDerivRoute::BellKernel,
        ZetaDerivRoute::LeibnizKernel,
        ZetaDerivRoute::Functional,
        ZetaDerivRoute::Lehmer,
        ZetaDerivRoute::Recurrence,
    ];

    /// The six formula routes, without the oracle.
    pub const FORMULAS: [ZetaDerivRoute; 6] = [
        ZetaDerivRoute::KernelIntegral,
        ZetaDerivRoute::BellKernel,
        ZetaDerivRoute::LeibnizKernel,
        ZetaDerivRoute::Functional,
        ZetaDerivRoute::Lehmer,
        ZetaDerivRoute::Recurrence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ZetaDerivRoute::Oracle => "oracle",
            ZetaDerivRoute::KernelIntegral => "integral_1_8",
            ZetaDerivRoute::BellKernel => "bell_1_16",
            ZetaDerivRoute::LeibnizKernel => "leibniz_1_16_1",
            ZetaDerivRoute::Functional => "functional_4_1",
            ZetaDerivRoute::Lehmer => "lehmer_4_19",
            ZetaDerivRoute::Recurrence => "recurrence_4_24",
        }
    }

    pub fn uses_integrals(self) -> bool {
        matches!(
            self,
            ZetaDerivRoute::KernelIntegral | ZetaDerivRoute::BellKernel | ZetaDerivRoute::LeibnizKernel
        )
    }
}

impl fmt::Display for StieltjesRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl fmt::Display for ZetaDerivRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for StieltjesRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StieltjesRoute::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

impl FromStr for ZetaDerivRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZetaDerivRoute::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// sin(kπ/2) as an exact integer.
fn sin_quarter(k: usize) -> i32 {
    match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn moment(wb: &Workbench, k: Kernel, power: usize) -> Result<Float> {
    wb.kernel_moment(k, power as u32)
}

/// γₙ by the requested route.
pub fn stieltjes(wb: &Workbench, n: usize, route: StieltjesRoute) -> Result<Float> {
    let bits = wb.config().bits();
    match route {
        StieltjesRoute::Oracle => {
            budget("the Stieltjes oracle", n, STIELTJES_MAX)?;
            wb.stieltjes_oracle(n)
        }
        StieltjesRoute::BellSum => {
            budget(route.id(), n, INTEGRAL_ROUTE_MAX)?;
            let args = even_zeta_args(wb, n)?.into_iter().map(|x| -x).collect();
            let y = bell_values(wb, args)?;
            let mut acc = Float::new(bits);
            for (k, yk) in y.iter().enumerate() {
                let term = binomial(bits, n, k) * yk * moment(wb, Kernel::B, n - k)?;
                acc += term * sign(k);
            }
            Ok(acc)
        }
        StieltjesRoute::LeibnizSine => {
            budget(route.id(), n, INTEGRAL_ROUTE_MAX)?;
            // (−1)ⁿ(n+1)γₙ = Σⱼ C(n+1,j) π^{n−j} sin((n+1−j)π/2) (−1)ʲ ∫B logʲ.
            let pi = wb.config().pi();
            let mut acc = Float::new(bits);
            for j in 0..=n {
                let s = sin_quarter(n + 1 - j);
                if s == 0 {
                    continue;
                }
                let pw = Float::with_val(bits, (&pi).pow((n - j) as u32));
                acc += binomial(bits, n + 1, j) * pw * moment(wb, Kernel::B, j)? * (s * sign(j));
            }
            Ok(acc * sign(n) / (n as u32 + 1))
        }
        StieltjesRoute::TriangularInversion => {
            budget(route.id(), n, INTEGRAL_ROUTE_MAX)?;
            // ∫B logᵐ = Σₖ C(m,k) Fₖ (−1)ᵏ γₘ₋ₖ with F₀ = 1, F₁ = 0.
            let f = bell_values(wb, even_zeta_args(wb, n)?)?;
            let mut gammas: Vec<Float> = Vec::with_capacity(n + 1);
            for m in 0..=n {
                let mut g = moment(wb, Kernel::B, m)?;
                for k in 1..=m {
                    g -= binomial(bits, m, k) * &f[k] * &gammas[m - k] * sign(k);
                }
                gammas.push(g);
            }
            Ok(gammas.swap_remove(n))
        }
    }
}

/// ζ⁽ⁿ⁾(0) by the requested route.
pub fn zeta_deriv0(wb: &Workbench, n: usize, route: ZetaDerivRoute) -> Result<Float> {
    let cfg = wb.config();
    let bits = cfg.bits();
    if route.uses_integrals() {
        budget(route.id(), n, INTEGRAL_ROUTE_MAX)?;
    } else if route == ZetaDerivRoute::Oracle {
        budget("the ζ⁽ⁿ⁾(0) oracle", n, ZETA_DERIV0_MAX)?;
    } else {
        budget(route.id(), n, SEQUENCE_ROUTE_MAX)?;
    }
    if n == 0 && route != ZetaDerivRoute::Oracle {
        return Ok(cfg.ratio(-1, 2));
    }
    match route {
        ZetaDerivRoute::Oracle => wb.zeta_deriv0_oracle(n),
        ZetaDerivRoute::KernelIntegral => {
            let pi = cfg.pi();
            let mut acc = Float::new(bits);
            for k in 1..=n {
                let s = sin_quarter(k);
                if s == 0 {
                    continue;
                }
                let pw = Float::with_val(bits, (&pi).pow(k as u32));
                acc += binomial(bits, n, k) * pw * moment(wb, Kernel::A, n - k)? * (s * sign(n - k));
            }
            Ok(acc / pi)
        }
        ZetaDerivRoute::BellKernel => {
            let args = even_zeta_args(wb, n - 1)?.into_iter().map(|x| -x).collect();
            let y = bell_values(wb, args)?;
            let mut acc = Float::new(bits);
            for (k, yk) in y.iter().enumerate() {
                let term = binomial(bits, n - 1, k) * yk * moment(wb, Kernel::A, n - k - 1)?;
                acc += term * sign(k + 1);
            }
            Ok(acc * n as u32 * sign(n))
        }
        ZetaDerivRoute::LeibnizKernel => {
            // Σ_{k<m} C(m,k) ζ⁽ᵐ⁻ᵏ⁾(0) Yₖ(+even zeta args) = m(−1)ᵐ⁻¹ ∫A logᵐ⁻¹.
            let y = bell_values(wb, even_zeta_args(wb, n)?)?;
            let mut z: Vec<Float> = vec![cfg.ratio(-1, 2)];
            for m in 1..=n {
                let mut v = moment(wb, Kernel::A, m - 1)? * m as u32 * sign(m - 1);
                for k in 1..m {
                    v -= binomial(bits, m, k) * &z[m - k] * &y[k];
                }
                z.push(v);
            }
            Ok(z.swap_remove(n))
        }
        ZetaDerivRoute::Functional => {
            // 2ζ⁽ⁿ⁾(0) = Σᵢ C(n,i) Yᵢ(−g(0), …) f⁽ⁿ⁻ⁱ⁾(0), f(0) = −1, f⁽ᵏ⁾(0) = kγₖ₋₁.
            let args = (0..n).map(|i| g_deriv0(wb, i).map(|g| -g)).collect::<Result<Vec<_>>>()?;
            let y = bell_values(wb, args)?;
            let mut acc = Float::new(bits);
            for (i, yi) in y.iter().enumerate() {
                let k = n - i;
                let f = if k == 0 {
                    cfg.num(-1)
                } else {
                    wb.stieltjes_oracle(k - 1)? * k as u32
                };
                acc += binomial(bits, n, i) * yi * f;
            }
            Ok(acc / 2u32)
        }
        ZetaDerivRoute::Lehmer => {
            // 2ζ⁽ⁿ⁾(0) = (−1)ⁿ⁺¹ Yₙ((−1)ʲ(1 + bⱼ₋₁)(j−1)!).
            let args = (1..=n)
                .map(|j| Ok((lehmer_b(wb, j - 1)? + 1u32) * factorial(bits, j - 1) * sign(j)))
                .collect::<Result<Vec<_>>>()?;
            let y = bell_values(wb, args)?;
            Ok(Float::with_val(bits, &y[n] * sign(n + 1)) / 2u32)
        }
        ZetaDerivRoute::Recurrence => {
            // ζ⁽ᵐ⁺¹⁾(0) = Σᵢ C(m,i) i! ζ⁽ᵐ⁻ⁱ⁾(0)(1 + bᵢ).
            let mut z: Vec<Float> = vec![cfg.ratio(-1, 2)];
            for m in 0..n {
                let mut v = Float::new(bits);
                for i in 0..=m {
                    let b = lehmer_b(wb, i)? + 1u32;
                    v += binomial(bits, m, i) * factorial(bits, i) * &z[m - i] * b;
                }
                z.push(v);
            }
            Ok(z.swap_remove(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PrecisionConfig;

    fn diff(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec(), a - b).abs().to_f64()
    }

    #[test]
    fn sequence_routes_match_oracle() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        for n in 0..=SEQUENCE_ROUTE_MAX {
            let oracle = wb.zeta_deriv0_oracle(n).unwrap();
            for r in [ZetaDerivRoute::Functional, ZetaDerivRoute::Lehmer, ZetaDerivRoute::Recurrence] {
                let v = zeta_deriv0(&wb, n, r).unwrap();
                let scale = oracle.to_f64().abs().max(1.0);
                assert!(diff(&v, &oracle) < 1e-30 * scale, "{r} at n = {n}: {v} vs {oracle}");
            }
        }
    }

    #[test]
    fn zeta_deriv0_reference_values() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        let z1 = zeta_deriv0(&wb, 1, ZetaDerivRoute::Lehmer).unwrap();
        assert!((z1.to_f64() + 0.91893853320467).abs() < 1e-13);
        let z2 = zeta_deriv0(&wb, 2, ZetaDerivRoute::Functional).unwrap();
        assert!((z2.to_f64() + 2.00635645590858).abs() < 1e-13);
        let z3 = zeta_deriv0(&wb, 3, ZetaDerivRoute::Recurrence).unwrap();
        assert!((z3.to_f64() + 6.00471116686225).abs() < 1e-12);
    }

    #[test]
    fn budgets_and_parsing() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        assert!(matches!(zeta_deriv0(&wb, 9, ZetaDerivRoute::BellKernel), Err(Error::Budget(_))));
        assert!(matches!(zeta_deriv0(&wb, 11, ZetaDerivRoute::Lehmer), Err(Error::Budget(_))));
        assert!(matches!(stieltjes(&wb, 9, StieltjesRoute::BellSum), Err(Error::Budget(_))));
        assert_eq!("lehmer_4_19".parse::<ZetaDerivRoute>().unwrap(), ZetaDerivRoute::Lehmer);
        assert!("lehmer".parse::<ZetaDerivRoute>().is_err());
    }
}
