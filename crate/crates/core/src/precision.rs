use std::hash::{Hash, Hasher};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::{Error, Result};

/// The extended-precision real used throughout.
pub type ExtReal = Float;

/// Binary digits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 24;

/// Working precision and the switch points of the series expansions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    /// Significant decimal digits.
    pub working_digits: u32,
    /// Arguments at or above this use asymptotic series instead of recurrence.
    pub asymptotic_switch: f64,
    /// Number of Bernoulli correction terms in Euler–Maclaurin sums.
    pub em_terms: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_digits: 40,
            asymptotic_switch: 20.0,
            em_terms: 8,
        }
    }
}

impl Eq for PrecisionConfig {}

impl Hash for PrecisionConfig {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.working_digits.hash(state);
        self.asymptotic_switch.to_bits().hash(state);
        self.em_terms.hash(state);
    }
}

impl PrecisionConfig {
    pub fn with_digits(working_digits: u32) -> Result<Self> {
        let cfg = PrecisionConfig {
            working_digits,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 25 {
            return Err(Error::Argument(format!(
                "working_digits must be at least 25, got {}",
                self.working_digits
            )));
        }
        if self.working_digits > 2000 {
            return Err(Error::Argument(format!(
                "working_digits above 2000 is not supported, got {}",
                self.working_digits
            )));
        }
        if !(self.asymptotic_switch >= 10.0) || !self.asymptotic_switch.is_finite() {
            return Err(Error::Argument(format!(
                "asymptotic_switch must be at least 10, got {}",
                self.asymptotic_switch
            )));
        }
        if self.em_terms == 0 || self.em_terms > 60 {
            return Err(Error::Argument(format!(
                "em_terms must lie in 1..=60, got {}",
                self.em_terms
            )));
        }
        Ok(())
    }

    /// Binary precision of every float created under this configuration.
    pub fn bits(&self) -> u32 {
        (f64::from(self.working_digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// A float at working precision holding `v` (rounded if inexact).
    pub fn num<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    /// `p / q` at working precision.
    pub fn ratio(&self, p: i64, q: i64) -> Float {
        self.num(p) / q
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn pi(&self) -> Float {
        self.num(Constant::Pi)
    }

    /// log 2π.
    pub fn ln_2pi(&self) -> Float {
        (self.pi() * 2u32).ln()
    }

    pub fn ln2(&self) -> Float {
        self.num(Constant::Log2)
    }

    /// Unit roundoff of the working precision.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits(), Float::u_exp(1, 0)) >> self.bits()
    }

    /// Cut-off for series terms: 10^-(digits + 5).
    pub fn series_cutoff(&self) -> Float {
        self.num(10u32).pow(-(self.working_digits as i32 + 5))
    }

    /// Tolerance handed to quadrature for values that feed other computations.
    pub fn quad_tol(&self) -> f64 {
        10f64.powi(-(self.working_digits as i32 - 12))
    }

    /// Smallest tolerance a caller may request from quadrature.
    pub fn min_tol(&self) -> f64 {
        10f64.powi(-(self.working_digits as i32 - 8))
    }

    /// Decimal rendering carrying every working digit.
    pub fn decimal(&self, x: &Float) -> String {
        decimal_string(x, self.working_digits as usize)
    }
}

/// Scientific decimal with `digits` significant digits, e.g. `-2.0063e0`.
pub(crate) fn decimal_string(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}
