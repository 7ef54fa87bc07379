//! Fixed-point series kernels.
//!
//! Every function here works on integers scaled by `2^w`: an input `x`
//! represents `x / 2^w` and so does the output. Truncation error of each
//! kernel is a small multiple of the number of series terms, in units of
//! `2^-w`; callers carry enough guard bits to absorb it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn one(w: u64) -> BigInt {
    BigInt::one() << w
}

/// `round(a / b)` for a positive divisor, ties toward +∞.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32) >= *b {
        q + 1
    } else {
        q
    }
}

/// Truncates toward zero; a floor shift would leave negative terms stuck at -1.
fn mul_fixed(a: &BigInt, b: &BigInt, w: u64) -> BigInt {
    let p = a * b;
    if p.is_negative() {
        -((-p) >> w)
    } else {
        p >> w
    }
}

/// `atan(1/n)` by its alternating series.
fn atan_inv(n: u32, w: u64) -> BigInt {
    let n2 = BigInt::from(n) * n;
    let mut term: BigInt = one(w) / n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

/// π via Machin's formula.
pub(crate) fn pi(w: u64) -> BigInt {
    let g = w + 16;
    let v = (atan_inv(5, g) << 4u32) - (atan_inv(239, g) << 2u32);
    v >> 16u32
}

/// ln 2 = 2·atanh(1/3).
pub(crate) fn ln2(w: u64) -> BigInt {
    let g = w + 16;
    let mut term: BigInt = one(g) / 3u32;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        sum += &term / (2 * k + 1);
        term /= 9;
        k += 1;
    }
    (sum << 1u32) >> 16u32
}

/// exp(r) for |r| well below 1.
pub(crate) fn exp_series(r: &BigInt, w: u64) -> BigInt {
    let mut sum = one(w);
    let mut term = one(w);
    let mut k = 1u64;
    loop {
        term = mul_fixed(&term, r, w) / k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

/// sin(r) for |r| ≤ π/4.
pub(crate) fn sin_series(r: &BigInt, w: u64) -> BigInt {
    let r2 = mul_fixed(r, r, w);
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut k = 1u64;
    loop {
        term = -mul_fixed(&term, &r2, w) / ((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

/// cos(r) for |r| ≤ π/4.
pub(crate) fn cos_series(r: &BigInt, w: u64) -> BigInt {
    let r2 = mul_fixed(r, r, w);
    let mut term = one(w);
    let mut sum = one(w);
    let mut k = 1u64;
    loop {
        term = -mul_fixed(&term, &r2, w) / ((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

/// sinh(r) for |r| < 1. All terms share the sign of `r`, so the relative
/// error stays small for tiny arguments as long as `w` covers them.
pub(crate) fn sinh_series(r: &BigInt, w: u64) -> BigInt {
    let r2 = mul_fixed(r, r, w);
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut k = 1u64;
    loop {
        term = mul_fixed(&term, &r2, w) / ((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

/// atanh(z) for |z| ≤ 1/3.
pub(crate) fn atanh_series(z: &BigInt, w: u64) -> BigInt {
    let z2 = mul_fixed(z, z, w);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = mul_fixed(&power, &z2, w);
        if power.is_zero() {
            break;
        }
        sum += &power / (2 * k + 1);
        k += 1;
    }
    sum
}

/// Magnitude of a fixed-point value in bits (0 for zero).
pub(crate) fn bit_len(v: &BigInt) -> u64 {
    v.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference digits of π and ln 2 (first 60 decimals).
    const PI_60: &str = "3141592653589793238462643383279502884197169399375105820974944";
    const LN2_60: &str = "693147180559945309417232121458176568075500134360255254120680";

    fn to_decimal(v: &BigInt, w: u64, places: u32) -> String {
        let scaled = (v * BigInt::from(10u32).pow(places)) >> w;
        scaled.to_string()
    }

    #[test]
    fn pi_matches_reference_digits() {
        let w = 260;
        let s = to_decimal(&pi(w), w, 60);
        assert_eq!(&s[..58], &PI_60[..58]);
    }

    #[test]
    fn ln2_matches_reference_digits() {
        let w = 260;
        let s = to_decimal(&ln2(w), w, 60);
        assert_eq!(&s[..57], &LN2_60[..57]);
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(exp_series(&BigInt::zero(), 100), one(100));
    }

    #[test]
    fn div_round_ties_up() {
        assert_eq!(div_round(&BigInt::from(5), &BigInt::from(2)), BigInt::from(3));
        assert_eq!(div_round(&BigInt::from(-5), &BigInt::from(2)), BigInt::from(-2));
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(3)), BigInt::from(2));
    }
}
