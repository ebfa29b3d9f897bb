//! Locale-free text rendering shared by the CLI and golden tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

/// Default number of significant digits for floats.
pub const DEFAULT_DIGITS: usize = 12;

/// `%g`-style rendering with `digits` significant digits: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros removed.
pub fn fmt_float(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { s }
}

/// Always `num/den`, even for integers.
pub fn fmt_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `num/den`, or just the integer when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() { r.numer().to_string() } else { fmt_fraction(r) }
}

/// Parse `"3"`, `"-2/5"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(digits, scale);
    Some(if negative { -r } else { r })
}

/// Comma-joined floats.
pub fn csv_row(values: &[f64], digits: usize) -> String {
    values.iter().map(|&v| fmt_float(v, digits)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats() {
        assert_eq!(fmt_float(0.0, 12), "0");
        assert_eq!(fmt_float(1.0, 12), "1");
        assert_eq!(fmt_float(-2.5, 12), "-2.5");
        assert_eq!(fmt_float(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_float(1.0 / 3.0, 4), "0.3333");
        assert_eq!(fmt_float(1e-7, 12), "1e-07");
        assert_eq!(fmt_float(123456789012345.0, 12), "1.23456789012e+14");
        assert_eq!(fmt_float(4.8333333333, 5), "4.8333");
        assert_eq!(fmt_float(f64::INFINITY, 12), "inf");
    }

    #[test]
    fn rationals() {
        let r = Rational::new(BigInt::from(2), BigInt::from(96));
        assert_eq!(fmt_fraction(&r), "1/48");
        assert_eq!(fmt_fraction(&Rational::from_integer(BigInt::from(3))), "3/1");
        assert_eq!(fmt_rational(&Rational::from_integer(BigInt::from(-5))), "-5");
        assert_eq!(parse_rational("-2/4").unwrap(), Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(BigInt::from(7)));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
        assert!(parse_rational(".").is_none());
    }
}
