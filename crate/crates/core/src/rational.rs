//! Exact rational parsing and decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used for every weight and measure.
pub type Rational = num_rational::BigRational;

pub fn from_ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a plain decimal (`"0.25"`, `"-1.5"`, `".5"`)
/// into an exact rational. Decimals are converted exactly, never through `f64`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Rational(text.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n.trim()).ok_or_else(bad)?;
        let d = parse_int(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }

    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Exact rational string: `"1/4"`, `"0"`, `"1"`.
pub fn format_exact(value: &Rational) -> String {
    value.to_string()
}

/// Renders `value` as a plain decimal with at most `significant` significant
/// digits, rounding half away from zero and dropping trailing zeros.
///
/// `8/9` with 12 digits renders as `0.888888888889`; `9/10` as `0.9`.
pub fn format_decimal(value: &Rational, significant: usize) -> String {
    assert!(significant >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let x = value.abs();

    let mut exp = decimal_exponent(&x);
    let mut digits = round_scaled(&x, significant as i64 - 1 - exp);
    if digits.to_string().len() > significant {
        // rounding carried into a new leading digit, e.g. 0.9999...
        exp += 1;
        digits = round_scaled(&x, significant as i64 - 1 - exp);
    }

    let mut s = digits.to_string();
    let point = exp + 1;
    let rendered = if point <= 0 {
        let zeros = "0".repeat((-point) as usize);
        let frac = format!("{zeros}{s}");
        format!("0.{}", frac.trim_end_matches('0'))
    } else {
        let point = point as usize;
        if s.len() < point {
            s.push_str(&"0".repeat(point - s.len()));
        }
        let (int, frac) = s.split_at(point);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if negative {
        format!("-{rendered}")
    } else {
        rendered
    }
}

/// Shortest decimal rendering used in reports: 12 significant digits.
pub fn format_decimal12(value: &Rational) -> String {
    format_decimal(value, 12)
}

/// Largest `e` with `10^e <= x`, for positive `x`.
fn decimal_exponent(x: &Rational) -> i64 {
    let n = x.numer().to_string().len() as i64;
    let d = x.denom().to_string().len() as i64;
    let mut e = n - d;
    while pow10(e) > *x {
        e -= 1;
    }
    while pow10(e + 1) <= *x {
        e += 1;
    }
    e
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `round(x * 10^shift)` with ties away from zero, `x >= 0`.
fn round_scaled(x: &Rational, shift: i64) -> BigInt {
    let scaled = x * pow10(shift);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    if r * 2 >= *scaled.denom() {
        q + 1
    } else {
        q
    }
}

/// Nearest `f64`, used only for display.
pub fn to_f64(value: &Rational) -> f64 {
    value
        .to_f64()
        .unwrap_or_else(|| format_decimal(value, 40).parse().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/4").unwrap(), from_ratio(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), from_ratio(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), from_ratio(1, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), from_ratio(-1, 2));
        assert_eq!(parse_rational("1").unwrap(), from_integer(1));
        assert_eq!(parse_rational("0.1").unwrap(), from_ratio(1, 10));
        assert_eq!(parse_rational(" 3/6 ").unwrap(), from_ratio(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1.2.3", "1/", "/2", "0x10", "1e-3", "-", "."] {
            assert!(parse_rational(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal12(&from_ratio(8, 9)), "0.888888888889");
        assert_eq!(format_decimal12(&from_ratio(9, 10)), "0.9");
        assert_eq!(format_decimal12(&from_ratio(1, 4)), "0.25");
        assert_eq!(format_decimal12(&from_integer(1)), "1");
        assert_eq!(format_decimal12(&from_integer(0)), "0");
        assert_eq!(format_decimal12(&from_ratio(1, 3)), "0.333333333333");
        assert_eq!(format_decimal12(&from_ratio(2, 3)), "0.666666666667");
        assert_eq!(format_decimal12(&from_ratio(-7, 10)), "-0.7");
        assert_eq!(format_decimal12(&from_ratio(1, 1000)), "0.001");
        assert_eq!(format_decimal12(&from_integer(1234567)), "1234567");
        assert_eq!(format_decimal(&from_ratio(9999, 10000), 3), "1");
        assert_eq!(format_decimal(&from_integer(123456), 2), "120000");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&from_ratio(1, 4)), 0.25);
        assert_eq!(to_f64(&from_ratio(7, 10)), 0.7);
        assert_eq!(to_f64(&from_ratio(3, 4)), 0.75);
    }
}
