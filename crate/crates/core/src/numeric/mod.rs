//! Scalar arithmetic used by every other module.
//!
//! The algorithms are written against [`Scalar`], which is implemented for
//! `f32`, `f64` and the extended-precision [`Real`].

mod decimal;
mod kernels;
mod real;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use real::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("malformed numeral {text:?} at position {position}{}", found.map(|c| format!(" (found {c:?})")).unwrap_or_else(|| " (unexpected end)".into()))]
    Parse {
        text: String,
        position: usize,
        found: Option<char>,
    },
    #[error("{function} has a pole at {argument}")]
    Pole {
        function: &'static str,
        argument: String,
    },
    #[error("{function} is undefined at {argument}")]
    Domain {
        function: &'static str,
        argument: String,
    },
    #[error("precision of {digits} digits is below the minimum of {min}")]
    Precision { digits: u32, min: u32 },
}

/// Working precision in decimal digits plus internal guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub digits: u32,
    pub guard_digits: u32,
}

impl PrecisionConfig {
    pub const MIN_DIGITS: u32 = 30;
    pub const DEFAULT_DIGITS: u32 = 64;
    pub const DEFAULT_GUARD_DIGITS: u32 = 10;

    /// Precision tag of exact small constants (`zero()`, `one()`,
    /// `from_i64`); any operation with a wider operand adopts the wider one.
    pub const EXACT: PrecisionConfig = PrecisionConfig {
        digits: Self::MIN_DIGITS,
        guard_digits: 0,
    };

    pub fn new(digits: u32, guard_digits: u32) -> Result<Self, NumericError> {
        if digits < Self::MIN_DIGITS {
            return Err(NumericError::Precision {
                digits,
                min: Self::MIN_DIGITS,
            });
        }
        Ok(PrecisionConfig {
            digits,
            guard_digits,
        })
    }

    pub fn with_digits(digits: u32) -> Result<Self, NumericError> {
        Self::new(digits, Self::DEFAULT_GUARD_DIGITS)
    }

    /// Binary mantissa width carrying `digits + guard_digits` decimals.
    pub fn working_bits(&self) -> u64 {
        ((self.digits + self.guard_digits) as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 2
    }

    pub fn max(self, other: PrecisionConfig) -> PrecisionConfig {
        PrecisionConfig {
            digits: self.digits.max(other.digits),
            guard_digits: self.guard_digits.max(other.guard_digits),
        }
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            digits: Self::DEFAULT_DIGITS,
            guard_digits: Self::DEFAULT_GUARD_DIGITS,
        }
    }
}

/// Elementary functions needed by the iteration families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transcendental {
    Sin,
    Cos,
    Cot,
    Sinh,
    Cosh,
    Coth,
}

/// Real scalar field with the elementary functions the solvers use.
///
/// Constants built with [`Scalar::from_i64`], `zero()` or `one()` are exact
/// and carry the smallest precision tag, so combine them with a
/// precision-carrying value before dividing.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn parse_decimal(text: &str, cfg: &PrecisionConfig) -> Result<Self, NumericError>;

    /// Decimal digits this value is meant to be accurate to.
    fn decimal_digits(&self) -> u32;

    /// Precision tag, for rebuilding values at the same precision.
    fn precision(&self) -> PrecisionConfig;

    /// `10^e` at the precision of `self`.
    fn pow10_like(&self, e: i64) -> Self;

    /// π at the precision of `self`.
    fn pi_like(&self) -> Self;

    fn abs(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self, NumericError>;
    fn to_f64(&self) -> f64;

    /// ⌊log10 |x|⌋, `None` for zero.
    fn log10_floor(&self) -> Option<i64>;

    /// Exactly `decimals` fractional digits.
    fn to_fixed_string(&self, decimals: usize) -> String;

    /// A decimal string that parses back to the identical value at the
    /// same precision.
    fn to_lossless_string(&self) -> String;

    fn cot(&self) -> Result<Self, NumericError> {
        let s = self.sin();
        if s.is_zero() {
            return Err(NumericError::Pole {
                function: "cot",
                argument: self.to_string(),
            });
        }
        Ok(self.cos() / s)
    }

    fn coth(&self) -> Result<Self, NumericError> {
        let s = self.sinh();
        if s.is_zero() {
            return Err(NumericError::Pole {
                function: "coth",
                argument: self.to_string(),
            });
        }
        Ok(self.cosh() / s)
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// Re-rounds to `cfg`. Hardware floats ignore this.
    fn rounded_to(&self, _cfg: &PrecisionConfig) -> Self {
        self.clone()
    }
}

/// Parses a decimal numeral, correctly rounded at `cfg.digits`.
pub fn make_real(text: &str, cfg: &PrecisionConfig) -> Result<Real, NumericError> {
    Real::parse(text, *cfg)
}

pub fn transcendental<T: Scalar>(function: Transcendental, x: &T) -> Result<T, NumericError> {
    Ok(match function {
        Transcendental::Sin => x.sin(),
        Transcendental::Cos => x.cos(),
        Transcendental::Cot => x.cot()?,
        Transcendental::Sinh => x.sinh(),
        Transcendental::Cosh => x.cosh(),
        Transcendental::Coth => x.coth()?,
    })
}

impl Scalar for Real {
    fn from_i64(n: i64) -> Self {
        Real::from_i64_with(n, PrecisionConfig::EXACT)
    }
    fn parse_decimal(text: &str, cfg: &PrecisionConfig) -> Result<Self, NumericError> {
        Real::parse(text, *cfg)
    }
    fn decimal_digits(&self) -> u32 {
        self.digits()
    }
    fn precision(&self) -> PrecisionConfig {
        Real::precision(self)
    }
    fn pow10_like(&self, e: i64) -> Self {
        Real::pow10(e, Real::precision(self))
    }
    fn pi_like(&self) -> Self {
        Real::pi(Real::precision(self))
    }
    fn abs(&self) -> Self {
        Real::abs(self)
    }
    fn sin(&self) -> Self {
        Real::sin(self)
    }
    fn cos(&self) -> Self {
        Real::cos(self)
    }
    fn sinh(&self) -> Self {
        Real::sinh(self)
    }
    fn cosh(&self) -> Self {
        Real::cosh(self)
    }
    fn exp(&self) -> Self {
        Real::exp(self)
    }
    fn ln(&self) -> Result<Self, NumericError> {
        Real::ln(self)
    }
    fn to_f64(&self) -> f64 {
        Real::to_f64(self)
    }
    fn log10_floor(&self) -> Option<i64> {
        Real::log10_floor(self)
    }
    fn to_fixed_string(&self, decimals: usize) -> String {
        Real::to_fixed_string(self, decimals)
    }
    fn to_lossless_string(&self) -> String {
        Real::to_lossless_string(self)
    }
    fn powi(&self, n: u32) -> Self {
        Real::powi(self, n)
    }
    fn is_negative(&self) -> bool {
        Real::is_negative(self)
    }
    fn rounded_to(&self, cfg: &PrecisionConfig) -> Self {
        self.with_precision(*cfg)
    }
}

macro_rules! impl_scalar_for_float {
    ($t:ty, $digits:expr) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn parse_decimal(text: &str, _cfg: &PrecisionConfig) -> Result<Self, NumericError> {
                decimal::scan(text)?;
                Ok(text.parse::<$t>().expect("validated numeral"))
            }
            fn decimal_digits(&self) -> u32 {
                $digits
            }
            fn precision(&self) -> PrecisionConfig {
                PrecisionConfig {
                    digits: $digits,
                    guard_digits: 0,
                }
            }
            fn pow10_like(&self, e: i64) -> Self {
                (10.0 as $t).powi(e.clamp(-400, 400) as i32)
            }
            fn pi_like(&self) -> Self {
                std::f64::consts::PI as $t
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn sinh(&self) -> Self {
                <$t>::sinh(*self)
            }
            fn cosh(&self) -> Self {
                <$t>::cosh(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Result<Self, NumericError> {
                if *self <= 0.0 {
                    return Err(NumericError::Domain {
                        function: "ln",
                        argument: self.to_string(),
                    });
                }
                Ok(<$t>::ln(*self))
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn log10_floor(&self) -> Option<i64> {
                if *self == 0.0 {
                    None
                } else {
                    Some(<$t>::log10(<$t>::abs(*self)).floor() as i64)
                }
            }
            fn to_fixed_string(&self, decimals: usize) -> String {
                format!("{:.*}", decimals, self)
            }
            fn to_lossless_string(&self) -> String {
                format!("{:e}", self)
            }
            fn powi(&self, n: u32) -> Self {
                <$t>::powi(*self, n as i32)
            }
        }
    };
}

impl_scalar_for_float!(f64, 15);
impl_scalar_for_float!(f32, 6);
