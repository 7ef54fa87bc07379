//! Decimal numeral scanning and digit-string formatting.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::NumericError;

/// A scanned numeral: `(-1)^negative · significand · 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DecimalParts {
    pub negative: bool,
    pub significand: BigUint,
    pub exponent: i64,
}

/// Scans `[+-]? digits [. digits]? ([eE] [+-]? digits)?` with at least one
/// mantissa digit. Positions in errors are character offsets.
pub(crate) fn scan(text: &str) -> Result<DecimalParts, NumericError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |pos: usize| -> NumericError {
        NumericError::Parse {
            text: text.to_string(),
            position: pos,
            found: chars.get(pos).copied(),
        }
    };
    let mut pos = 0;
    let mut negative = false;
    if let Some(&c) = chars.first() {
        if c == '+' || c == '-' {
            negative = c == '-';
            pos = 1;
        }
    }
    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    let mut seen_point = false;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_ascii_digit() {
            digits.push(c);
            if seen_point {
                frac_len += 1;
            }
        } else if c == '.' && !seen_point {
            seen_point = true;
        } else {
            break;
        }
        pos += 1;
    }
    if digits.is_empty() {
        return Err(err(pos));
    }
    let mut exponent: i64 = 0;
    if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
        pos += 1;
        let mut exp_negative = false;
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            exp_negative = chars[pos] == '-';
            pos += 1;
        }
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(err(pos));
        }
        let exp_text: String = chars[start..pos].iter().collect();
        exponent = exp_text
            .parse::<i64>()
            .ok()
            .filter(|e| *e < 100_000)
            .ok_or_else(|| err(start))?;
        if exp_negative {
            exponent = -exponent;
        }
    }
    if pos != chars.len() {
        return Err(err(pos));
    }
    let significand = BigUint::parse_bytes(digits.as_bytes(), 10).expect("ascii digits");
    Ok(DecimalParts {
        negative,
        significand,
        exponent: exponent - frac_len,
    })
}

pub(crate) fn pow10(n: u64) -> BigUint {
    BigUint::from(10u32).pow(n as u32)
}

pub(crate) fn pow2(n: u64) -> BigUint {
    BigUint::one() << n
}

/// `round(num / den)`, ties to even.
pub(crate) fn div_round_even(num: &BigUint, den: &BigUint) -> BigUint {
    let q = num / den;
    let r = num - &q * den;
    let twice = &r << 1u32;
    if twice > *den || (twice == *den && q.bit(0)) {
        q + 1u32
    } else {
        q
    }
}

/// Lays out `digits` (significant digits, first nonzero) with decimal
/// exponent `e10` (value = d.ddd × 10^e10), trimming trailing zeros.
/// Plain notation for -6 ≤ e10 < 21, scientific otherwise.
pub(crate) fn layout_significant(negative: bool, digits: &str, e10: i64) -> String {
    let trimmed = digits.trim_end_matches('0');
    if trimmed.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..21).contains(&e10) {
        if e10 < 0 {
            out.push_str("0.");
            for _ in 0..(-e10 - 1) {
                out.push('0');
            }
            out.push_str(trimmed);
        } else {
            let int_len = (e10 + 1) as usize;
            if trimmed.len() <= int_len {
                out.push_str(trimmed);
                for _ in trimmed.len()..int_len {
                    out.push('0');
                }
            } else {
                out.push_str(&trimmed[..int_len]);
                out.push('.');
                out.push_str(&trimmed[int_len..]);
            }
        }
    } else {
        out.push_str(&trimmed[..1]);
        if trimmed.len() > 1 {
            out.push('.');
            out.push_str(&trimmed[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
    }
    out
}

/// Renders an integer `scaled` that represents `scaled / 10^decimals`.
pub(crate) fn layout_fixed(negative: bool, scaled: &BigUint, decimals: usize) -> String {
    let mut s = scaled.to_string();
    if s.len() <= decimals {
        s = "0".repeat(decimals + 1 - s.len()) + &s;
    }
    let split = s.len() - decimals;
    let mut out = String::new();
    if negative && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&s[..split]);
    if decimals > 0 {
        out.push('.');
        out.push_str(&s[split..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scans_plain_and_exponent_forms() {
        let p = scan("-0.125e2").unwrap();
        assert!(p.negative);
        assert_eq!(p.significand, BigUint::from(125u32));
        assert_eq!(p.exponent, -1);
        let p = scan("3").unwrap();
        assert_eq!((p.significand, p.exponent), (BigUint::from(3u32), 0));
        let p = scan(".5").unwrap();
        assert_eq!((p.significand, p.exponent), (BigUint::from(5u32), -1));
        let p = scan("2.").unwrap();
        assert_eq!((p.significand, p.exponent), (BigUint::from(2u32), 0));
    }

    #[test]
    fn reports_offending_position() {
        match scan("1.2x3") {
            Err(NumericError::Parse { position, found, .. }) => {
                assert_eq!(position, 3);
                assert_eq!(found, Some('x'));
            }
            other => panic!("unexpected {other:?}"),
        }
        match scan("") {
            Err(NumericError::Parse { position, found, .. }) => {
                assert_eq!(position, 0);
                assert_eq!(found, None);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(scan("1e"), Err(NumericError::Parse { position: 2, .. })));
        assert!(matches!(scan("1..2"), Err(NumericError::Parse { position: 2, .. })));
        assert!(matches!(scan("-"), Err(NumericError::Parse { position: 1, .. })));
    }

    #[test]
    fn layouts() {
        assert_eq!(layout_significant(false, "1000", 0), "1");
        assert_eq!(layout_significant(true, "25", -3), "-0.0025");
        assert_eq!(layout_significant(false, "125", 1), "12.5");
        assert_eq!(layout_significant(false, "12", 4), "12000");
        assert_eq!(layout_significant(false, "257", -13), "2.57e-13");
        assert_eq!(layout_fixed(true, &BigUint::from(3000u32), 3), "-3.000");
        assert_eq!(layout_fixed(false, &BigUint::from(5u32), 3), "0.005");
        assert_eq!(layout_fixed(true, &BigUint::from(0u32), 2), "0.00");
    }

    #[test]
    fn ties_to_even() {
        let two = BigUint::from(2u32);
        assert_eq!(div_round_even(&BigUint::from(5u32), &two), BigUint::from(2u32));
        assert_eq!(div_round_even(&BigUint::from(7u32), &two), BigUint::from(4u32));
    }
}
