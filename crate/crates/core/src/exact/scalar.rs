use std::cmp::Ordering;

use dashu_base::{Abs, BitTest, Signed};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type ExactScalar = RBig;

/// Significant digits printed by default (matches the published tables).
pub const DEFAULT_DIGITS: usize = 10;

/// `num / den` as an exact rational. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactScalar {
    assert!(den != 0, "zero denominator");
    RBig::from_parts_signed(IBig::from(num), IBig::from(den))
}

/// `10^k` as an exact rational.
pub fn pow10(k: i64) -> ExactScalar {
    let p = UBig::from(10u8).pow(k.unsigned_abs() as usize);
    if k >= 0 {
        RBig::from(p)
    } else {
        RBig::from_parts(IBig::ONE, p)
    }
}

/// `floor(log10 |x|)` for nonzero `x`.
pub fn decimal_exponent(x: &ExactScalar) -> i64 {
    debug_assert!(!x.is_zero());
    let ax = x.clone().abs();
    let bits = ax.numerator().bit_len() as i64 - ax.denominator().bit_len() as i64;
    let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(e) > ax {
        e -= 1;
    }
    while pow10(e + 1) <= ax {
        e += 1;
    }
    e
}

/// Round `x` half-to-even to `digits` significant decimal digits.
///
/// Returns `(mantissa, exponent)` with `10^(digits-1) <= |mantissa| < 10^digits`
/// and `x ≈ mantissa · 10^(exponent - digits + 1)`. Zero maps to `(0, 0)`.
pub fn round_significant(x: &ExactScalar, digits: usize) -> (IBig, i64) {
    assert!(digits >= 1, "digits must be at least 1");
    if x.is_zero() {
        return (IBig::ZERO, 0);
    }
    let mut e = decimal_exponent(x);
    let scaled = x.clone().abs() * pow10(digits as i64 - 1 - e);
    let mut m = scaled.floor();
    let frac = scaled - RBig::from(m.clone());
    match (frac * RBig::from(2u8)).cmp(&RBig::ONE) {
        Ordering::Greater => m += IBig::ONE,
        Ordering::Equal if m.bit(0) => m += IBig::ONE,
        _ => {}
    }
    let top = IBig::from(UBig::from(10u8).pow(digits));
    if m == top {
        m = top / IBig::from(10u8);
        e += 1;
    }
    if x.is_negative() {
        m = -m;
    }
    (m, e)
}

/// Print `x` with exactly `digits` significant digits (half-even).
///
/// Fixed notation is used for decimal exponents in `[-5, 15)`, scientific otherwise.
pub fn format_rational(x: &ExactScalar, digits: usize) -> String {
    let (m, e) = round_significant(x, digits);
    if m.is_zero() {
        return if digits > 1 { format!("0.{}", "0".repeat(digits - 1)) } else { "0".into() };
    }
    let sign = if m.is_negative() { "-" } else { "" };
    let body = m.abs().to_string();
    debug_assert_eq!(body.len(), digits);
    if !(-5..15).contains(&e) {
        let (head, tail) = body.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        };
    }
    if e < 0 {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("{sign}0.{zeros}{body}")
    } else {
        let int_len = e as usize + 1;
        if int_len >= digits {
            format!("{sign}{body}{}", "0".repeat(int_len - digits))
        } else {
            let (head, tail) = body.split_at(int_len);
            format!("{sign}{head}.{tail}")
        }
    }
}

/// Parse a plain decimal literal (`"12"`, `"-0.25"`, `"1e-3"`, `"2.5E+2"`) or a
/// fraction (`"3/7"`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<ExactScalar> {
    let bad = || Error::InvalidArgument(format!("not a decimal number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: IBig = n.trim().parse().map_err(|_| bad())?;
        let d: IBig = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(RBig::from_parts_signed(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all = format!("{int_digits}{frac_part}");
    if !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = RBig::from(all.parse::<UBig>().map_err(|_| bad())?);
    value *= pow10(exp - frac_part.len() as i64);
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_even() {
        assert_eq!(format_rational(&rat(25, 10), 1), "2");
        assert_eq!(format_rational(&rat(35, 10), 1), "4");
        assert_eq!(format_rational(&rat(-25, 10), 1), "-2");
        assert_eq!(format_rational(&rat(251, 100), 1), "3");
    }

    #[test]
    fn fixed_and_scientific_layouts() {
        assert_eq!(format_rational(&rat(-1, 2), 10), "-0.5000000000");
        assert_eq!(format_rational(&rat(12337005501, 100000000), 10), "123.3700550");
        assert_eq!(format_rational(&rat(5485, 10_000_000), 4), "0.0005485");
        assert_eq!(format_rational(&rat(1, 10_000_000), 3), "1.00e-7");
        assert_eq!(format_rational(&RBig::ZERO, 3), "0.00");
        assert_eq!(format_rational(&rat(999_96, 100), 4), "1000");
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("-1.5e2").unwrap(), rat(-150, 1));
        assert_eq!(parse_decimal("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_decimal("12").unwrap(), rat(12, 1));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1/0").is_err());
    }

    #[test]
    fn decimal_exponent_at_powers_of_ten() {
        assert_eq!(decimal_exponent(&rat(1, 1)), 0);
        assert_eq!(decimal_exponent(&rat(999, 1000)), -1);
        assert_eq!(decimal_exponent(&rat(1000, 1)), 3);
        assert_eq!(decimal_exponent(&rat(-1, 1000)), -3);
    }
}
