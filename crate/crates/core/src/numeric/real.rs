use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::decimal::{self, div_round_even, pow10, pow2};
use super::kernels::{self, bit_len};
use super::{NumericError, PrecisionConfig};

const LOG10_2: f64 = std::f64::consts::LOG10_2;

/// A binary floating-point number with a per-value working precision.
///
/// The value is `(-1)^negative · mag · 2^exp`, with `mag` rounded to the
/// working bit count of `prec` (round half to even) and stripped of
/// trailing zero bits. Arithmetic between two values runs at the larger of
/// the two precisions. There is no infinity or NaN: dividing by zero
/// panics, and transcendental functions report poles as errors.
#[derive(Clone)]
pub struct Real {
    negative: bool,
    mag: BigUint,
    exp: i64,
    prec: PrecisionConfig,
}

impl Real {
    fn from_parts(
        negative: bool,
        mag: BigUint,
        exp: i64,
        sticky: bool,
        prec: PrecisionConfig,
    ) -> Real {
        if mag.is_zero() {
            return Real::zero_with(prec);
        }
        let bits = prec.working_bits();
        let len = mag.bits();
        let (mut mag, mut exp) = if len > bits {
            let shift = len - bits;
            let q = &mag >> shift;
            let rem = &mag - (&q << shift);
            let half = BigUint::one() << (shift - 1);
            let up = match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => sticky || q.bit(0),
            };
            (if up { q + 1u32 } else { q }, exp + shift as i64)
        } else {
            (mag, exp)
        };
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        Real {
            negative,
            mag,
            exp,
            prec,
        }
    }

    pub fn zero_with(prec: PrecisionConfig) -> Real {
        Real {
            negative: false,
            mag: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64_with(n: i64, prec: PrecisionConfig) -> Real {
        Real::from_parts(n < 0, BigUint::from(n.unsigned_abs()), 0, false, prec)
    }

    /// Correctly rounded conversion of a decimal numeral.
    pub fn parse(text: &str, prec: PrecisionConfig) -> Result<Real, NumericError> {
        let parts = decimal::scan(text)?;
        Ok(Real::from_decimal(
            parts.negative,
            parts.significand,
            parts.exponent,
            prec,
        ))
    }

    fn from_decimal(negative: bool, sig: BigUint, exponent: i64, prec: PrecisionConfig) -> Real {
        if sig.is_zero() {
            return Real::zero_with(prec);
        }
        if exponent >= 0 {
            return Real::from_parts(negative, sig * pow10(exponent as u64), 0, false, prec);
        }
        let den = pow10(exponent.unsigned_abs());
        let shift = (prec.working_bits() + 2 + den.bits()).saturating_sub(sig.bits());
        let (q, r) = (sig << shift).div_rem(&den);
        Real::from_parts(negative, q, -(shift as i64), !r.is_zero(), prec)
    }

    /// `10^e` at the given precision.
    pub fn pow10(e: i64, prec: PrecisionConfig) -> Real {
        Real::from_decimal(false, BigUint::one(), e, prec)
    }

    /// Exact conversion of a finite `f64`; `None` for NaN or infinities.
    pub fn from_f64(v: f64, prec: PrecisionConfig) -> Option<Real> {
        if !v.is_finite() {
            return None;
        }
        let raw = v.to_bits();
        let negative = raw >> 63 == 1;
        let exp_bits = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Some(Real::from_parts(
            negative,
            BigUint::from(mant),
            exp,
            false,
            prec,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.mag.bits();
        let (m, e) = if len > 64 {
            (&self.mag >> (len - 64), self.exp + (len - 64) as i64)
        } else {
            (self.mag.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(f64::MAX);
        let e = e.clamp(-2200, 2200) as i32;
        let v = m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn precision(&self) -> PrecisionConfig {
        self.prec
    }

    pub fn digits(&self) -> u32 {
        self.prec.digits
    }

    /// Re-rounds to another precision (which may be lower).
    pub fn with_precision(&self, prec: PrecisionConfig) -> Real {
        Real::from_parts(self.negative, self.mag.clone(), self.exp, false, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn abs(&self) -> Real {
        let mut r = self.clone();
        r.negative = false;
        r
    }

    /// Position just above the leading bit: `2^(top-1) ≤ |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + self.mag.bits() as i64
    }

    /// ⌊log10 |x|⌋, `None` for zero.
    pub fn log10_floor(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.significant_digits(3).1)
    }

    fn to_fixed(&self, w: u64) -> BigInt {
        let shift = self.exp + w as i64;
        let m = if shift >= 0 {
            &self.mag << shift as u64
        } else {
            &self.mag >> shift.unsigned_abs()
        };
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, m)
    }

    fn from_fixed(v: BigInt, w: u64, prec: PrecisionConfig) -> Real {
        Real::from_scaled(v, -(w as i64), prec)
    }

    fn from_scaled(v: BigInt, exp: i64, prec: PrecisionConfig) -> Real {
        let (sign, mag) = v.into_parts();
        Real::from_parts(sign == Sign::Minus, mag, exp, false, prec)
    }

    fn wider(&self) -> PrecisionConfig {
        PrecisionConfig {
            digits: self.prec.digits,
            guard_digits: self.prec.guard_digits + 8,
        }
    }

    fn one_with(prec: PrecisionConfig) -> Real {
        Real::from_i64_with(1, prec)
    }

    pub fn pi(prec: PrecisionConfig) -> Real {
        let w = prec.working_bits() + 16;
        Real::from_fixed(kernels::pi(w), w, prec)
    }

    fn sin_or_cos(&self, cosine: bool) -> Real {
        let prec = self.prec;
        if self.is_zero() {
            return if cosine {
                Real::one_with(prec)
            } else {
                Real::zero_with(prec)
            };
        }
        let bits = prec.working_bits();
        let top = self.top();
        if top < -((bits / 2) as i64) - 2 {
            return if cosine {
                Real::one_with(prec)
            } else {
                self.clone()
            };
        }
        let target = bits + 12;
        let lead = top.max(0) as u64;
        let mut extra = top.min(0).unsigned_abs();
        loop {
            let w = target + lead + extra + 8;
            let xf = self.to_fixed(w);
            let half_pi = kernels::pi(w) >> 1u32;
            let k = kernels::div_round(&xf, &half_pi);
            let r = &xf - &k * &half_pi;
            let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0) + cosine as u8;
            let y = match quadrant % 4 {
                0 => kernels::sin_series(&r, w),
                1 => kernels::cos_series(&r, w),
                2 => -kernels::sin_series(&r, w),
                _ => -kernels::cos_series(&r, w),
            };
            // Absolute error is a few units times 2^lead; demand enough
            // significant bits above it.
            let needed = target + lead + 8;
            let have = bit_len(&y);
            if have >= needed || extra > 16 * target {
                return Real::from_fixed(y, w, prec);
            }
            extra += needed - have + 32;
        }
    }

    pub fn sin(&self) -> Real {
        self.sin_or_cos(false)
    }

    pub fn cos(&self) -> Real {
        self.sin_or_cos(true)
    }

    pub fn exp(&self) -> Real {
        let prec = self.prec;
        if self.is_zero() {
            return Real::one_with(prec);
        }
        let bits = prec.working_bits();
        let top = self.top();
        if top < -(bits as i64) - 4 {
            return Real::one_with(prec);
        }
        assert!(top < 62, "exp argument out of range");
        let lead = top.max(0) as u64;
        let w = bits + 24 + lead;
        let xf = self.to_fixed(w);
        let ln2 = kernels::ln2(w);
        let k = kernels::div_round(&xf, &ln2);
        let r = &xf - &k * &ln2;
        let y = kernels::exp_series(&r, w);
        let k = k.to_i64().expect("exponent fits");
        Real::from_scaled(y, k - w as i64, prec)
    }

    pub fn sinh(&self) -> Real {
        let prec = self.prec;
        if self.is_zero() {
            return Real::zero_with(prec);
        }
        let bits = prec.working_bits();
        let top = self.top();
        if top < -((bits / 2) as i64) - 2 {
            return self.clone();
        }
        if top <= 0 {
            let w = bits + 16 + top.unsigned_abs();
            let y = kernels::sinh_series(&self.to_fixed(w), w);
            return Real::from_fixed(y, w, prec);
        }
        let x = self.with_precision(self.wider());
        let e = x.exp();
        let inv = Real::one_with(e.prec) / &e;
        ((e - inv) / Real::from_i64_with(2, prec)).with_precision(prec)
    }

    pub fn cosh(&self) -> Real {
        let prec = self.prec;
        let x = self.with_precision(self.wider());
        let e = x.exp();
        let inv = Real::one_with(e.prec) / &e;
        ((e + inv) / Real::from_i64_with(2, prec)).with_precision(prec)
    }

    pub fn ln(&self) -> Result<Real, NumericError> {
        if self.is_zero() || self.negative {
            return Err(NumericError::Domain {
                function: "ln",
                argument: self.to_string(),
            });
        }
        let prec = self.prec;
        let wide = self.wider();
        let len = self.mag.bits();
        let mut e = self.top();
        // m = x / 2^top lies in [1/2, 1); move it into [3/4, 3/2).
        let mut m = Real {
            negative: false,
            mag: self.mag.clone(),
            exp: -(len as i64),
            prec: wide,
        };
        if len < 2 || (&self.mag >> (len - 2)) == BigUint::from(2u32) {
            e -= 1;
            m.exp += 1;
        }
        let one = Real::one_with(wide);
        let z = (&m - &one) / (&m + &one);
        let target = prec.working_bits() + 12;
        let ztop = if z.is_zero() { 0 } else { z.top() };
        let w = target + 8 + ztop.min(0).unsigned_abs();
        let mut total = kernels::atanh_series(&z.to_fixed(w), w) << 1u32;
        if e != 0 {
            total += kernels::ln2(w) * e;
        }
        Ok(Real::from_fixed(total, w, prec))
    }

    pub fn powi(&self, mut n: u32) -> Real {
        let mut base = self.clone();
        let mut acc = Real::one_with(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `n` significant digits (round half to even) and the decimal
    /// exponent of the first one. Zero yields `("0…0", 0)`.
    pub fn significant_digits(&self, n: usize) -> (String, i64) {
        let n = n.max(1);
        if self.is_zero() {
            return ("0".repeat(n), 0);
        }
        let mut e10 = ((self.top() - 1) as f64 * LOG10_2).floor() as i64;
        let mut lowered = false;
        loop {
            let p = n as i64 - 1 - e10;
            let mut num = self.mag.clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den = pow2(self.exp.unsigned_abs());
            }
            if p >= 0 {
                num *= pow10(p as u64);
            } else {
                den *= pow10(p.unsigned_abs());
            }
            let s = div_round_even(&num, &den).to_string();
            if s.len() == n {
                return (s, e10);
            }
            if s.len() > n {
                if lowered && s.len() == n + 1 && s[1..].bytes().all(|b| b == b'0') {
                    return (s[..n].to_string(), e10 + 1);
                }
                e10 += 1;
            } else {
                e10 -= 1;
                lowered = true;
            }
        }
    }

    /// Canonical string with `n` significant digits, trailing zeros removed.
    pub fn to_string_digits(&self, n: usize) -> String {
        let (digits, e10) = self.significant_digits(n);
        decimal::layout_significant(self.negative, &digits, e10)
    }

    /// The shortest decimal string that parses back to this exact value at
    /// the same precision.
    pub fn to_lossless_string(&self) -> String {
        let max = (self.prec.working_bits() as f64 * LOG10_2).ceil() as usize + 1;
        let round_trips = |n: usize| {
            let s = self.to_string_digits(n);
            let back = Real::parse(&s, self.prec).expect("own output parses");
            (back.cmp_value(self) == Ordering::Equal).then_some(s)
        };
        if let Some(s) = round_trips(self.prec.digits as usize) {
            return s;
        }
        let (mut lo, mut hi) = (self.prec.digits as usize, max);
        let mut best = self.to_string_digits(max);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            match round_trips(mid) {
                Some(s) => {
                    best = s;
                    hi = mid;
                }
                None => lo = mid,
            }
        }
        if hi < max {
            best
        } else {
            round_trips(max).unwrap_or(best)
        }
    }

    /// Fixed-point rendering with exactly `decimals` fractional digits.
    pub fn to_fixed_string(&self, decimals: usize) -> String {
        let mut num = self.mag.clone() * pow10(decimals as u64);
        let den = if self.exp >= 0 {
            num <<= self.exp as u64;
            BigUint::one()
        } else {
            pow2(self.exp.unsigned_abs())
        };
        let scaled = div_round_even(&num, &den);
        decimal::layout_fixed(self.negative, &scaled, decimals)
    }

    fn cmp_value(&self, other: &Real) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.negative {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => {
                return if self.negative {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            _ => {}
        }
        if self.negative != other.negative {
            return if self.negative {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
        let by_magnitude = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = &self.mag << (self.exp - e) as u64;
                let b = &other.mag << (other.exp - e) as u64;
                a.cmp(&b)
            }
            ord => ord,
        };
        if self.negative {
            by_magnitude.reverse()
        } else {
            by_magnitude
        }
    }

    fn add_impl(&self, other: &Real, negate_other: bool) -> Real {
        let prec = self.prec.max(other.prec);
        let other_negative = other.negative ^ negate_other;
        if other.is_zero() {
            let mut r = self.clone();
            r.prec = prec;
            return r;
        }
        if self.is_zero() {
            let mut r = other.clone();
            r.negative = other_negative;
            r.prec = prec;
            return r;
        }
        let guard = prec.working_bits() as i64 + 4;
        let (ta, tb) = (self.top(), other.top());
        if tb < ta - guard {
            let mut r = self.clone();
            r.prec = prec;
            return r;
        }
        if ta < tb - guard {
            let mut r = other.clone();
            r.negative = other_negative;
            r.prec = prec;
            return r;
        }
        let e = self.exp.min(other.exp);
        let sign = |neg: bool| if neg { Sign::Minus } else { Sign::Plus };
        let a = BigInt::from_biguint(sign(self.negative), &self.mag << (self.exp - e) as u64);
        let b = BigInt::from_biguint(sign(other_negative), &other.mag << (other.exp - e) as u64);
        Real::from_scaled(a + b, e, prec)
    }

    fn mul_impl(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        Real::from_parts(
            self.negative ^ other.negative,
            &self.mag * &other.mag,
            self.exp + other.exp,
            false,
            prec,
        )
    }

    fn div_impl(&self, other: &Real) -> Real {
        assert!(!other.is_zero(), "Real division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Real::zero_with(prec);
        }
        let shift = (prec.working_bits() + 2 + other.mag.bits()).saturating_sub(self.mag.bits());
        let (q, r) = (&self.mag << shift).div_rem(&other.mag);
        Real::from_parts(
            self.negative ^ other.negative,
            q,
            self.exp - shift as i64 - other.exp,
            !r.is_zero(),
            prec,
        )
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(self.prec.digits as usize))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} @{})", self.to_lossless_string(), self.prec.digits)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        if !self.is_zero() {
            self.negative = !self.negative;
        }
        self
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $body(self, rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $body(&self, rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Real, b: &Real| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Real, b: &Real| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Real, b: &Real| a.mul_impl(b));
forward_binop!(Div, div, |a: &Real, b: &Real| a.div_impl(b));

impl Zero for Real {
    fn zero() -> Real {
        Real::zero_with(PrecisionConfig::EXACT)
    }
    fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }
}

impl One for Real {
    fn one() -> Real {
        Real::one_with(PrecisionConfig::EXACT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p64() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn r(s: &str) -> Real {
        Real::parse(s, p64()).unwrap()
    }

    #[test]
    fn small_integers_are_exact() {
        let x = r("-3");
        assert_eq!(x.to_lossless_string(), "-3");
        assert_eq!(x, Real::from_i64_with(-3, p64()));
        assert!(r("0").is_zero());
        assert_eq!(r("-0").to_string(), "0");
    }

    #[test]
    fn ln_below_one() {
        assert_eq!(r("0.7").ln().unwrap().to_string_digits(39), "-0.356674943938732378912638711241184477964");
        assert_eq!(r("3e-26").ln().unwrap().to_string_digits(40), "-58.76860012917707809307253258487094369298");
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!((r("0.1") + r("0.2")).to_string(), "0.3");
        assert_eq!((r("1") / r("3") * r("3")).to_string(), "1");
        assert_eq!((r("2") - r("2")).to_string(), "0");
        assert_eq!((r("1e-40") + r("1")).to_string_digits(64), "1.0000000000000000000000000000000000000001");
        assert!(r("-1") < r("0.5"));
        assert!(r("-2") < r("-1"));
        assert!(r("1e-300") > Real::zero());
    }

    #[test]
    fn precision_is_max_of_operands() {
        let lo = Real::parse("1", PrecisionConfig::new(30, 0).unwrap()).unwrap();
        let hi = Real::parse("3", PrecisionConfig::new(96, 10).unwrap()).unwrap();
        assert_eq!((lo.clone() / hi.clone()).digits(), 96);
        assert_eq!((hi / lo).digits(), 96);
    }

    #[test]
    fn fixed_and_significant_rendering() {
        assert_eq!(r("-3").to_fixed_string(18), "-3.000000000000000000");
        assert_eq!(r("0.1").to_fixed_string(18), "0.100000000000000000");
        assert_eq!(r("2.5e-13").to_string(), "2.5e-13");
        assert_eq!(r("999.9996").to_string_digits(6), "1000");
        assert_eq!(r("0.0099999999").to_string_digits(3), "0.01");
        assert_eq!(r("123456").log10_floor(), Some(5));
        assert_eq!(r("0.00123").log10_floor(), Some(-3));
    }

    #[test]
    fn f64_conversions() {
        let x = Real::from_f64(0.1, p64()).unwrap();
        assert_eq!(x.to_f64(), 0.1);
        assert!(x.to_lossless_string().len() > 50);
        assert!(Real::from_f64(f64::NAN, p64()).is_none());
        assert_eq!(r("-2.5").to_f64(), -2.5);
    }

    #[test]
    fn transcendental_spot_values() {
        assert_eq!(r("0").sin().to_string(), "0");
        assert_eq!(r("0").cosh().to_string(), "1");
        assert_eq!(
            r("1").sinh().to_string_digits(20),
            "1.1752011936438014569"
        );
        assert_eq!(
            Real::pi(p64()).to_string(),
            "3.141592653589793238462643383279502884197169399375105820974944592"
        );
        assert_eq!(r("1").exp().to_string_digits(30), "2.71828182845904523536028747135");
        assert_eq!(r("2").ln().unwrap().to_string_digits(30), "0.693147180559945309417232121458");
        assert!(r("0").ln().is_err());
    }
}
