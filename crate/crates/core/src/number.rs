//! Exact decimal / fraction text for rational coordinates.
//!
//! Accepted forms: `12`, `-0.25`, `1.5e-3`, `3/7`. Output uses a terminating
//! decimal whenever the denominator has no prime factors other than 2 and 5,
//! and `p/q` otherwise, so every value survives a write/read cycle unchanged.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parses an exact rational from decimal or fraction text.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = parse_integer(num.trim())?;
        let d: BigInt = parse_integer(den.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Formats a rational exactly: terminating decimal when possible, else `p/q`.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

/// Lossy conversion for feature computation and rendering.
pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 fails only when both parts overflow f64.
        let n = value.numer().to_f64().unwrap_or(f64::MAX);
        let d = value.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms() {
        assert_eq!(parse_rational("0.5"), Some(rational(1, 2)));
        assert_eq!(parse_rational("-2.25"), Some(rational(-9, 4)));
        assert_eq!(parse_rational("+3"), Some(rational(3, 1)));
        assert_eq!(parse_rational(".5"), Some(rational(1, 2)));
        assert_eq!(parse_rational("1e-3"), Some(rational(1, 1000)));
        assert_eq!(parse_rational("2.5E2"), Some(rational(250, 1)));
        assert_eq!(parse_rational("1/3"), Some(rational(1, 3)));
        assert_eq!(parse_rational("-4/6"), Some(rational(-2, 3)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", ".", "1.2.3", "abc", "1/0", "0x10", "1e", "NaN", "inf", "1/-"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn formats_terminating_and_repeating() {
        assert_eq!(format_rational(&rational(1, 2)), "0.5");
        assert_eq!(format_rational(&rational(-1, 8)), "-0.125");
        assert_eq!(format_rational(&rational(7, 1)), "7");
        assert_eq!(format_rational(&rational(-3, 50)), "-0.06");
        assert_eq!(format_rational(&rational(1, 3)), "1/3");
    }

    proptest::proptest! {
        #[test]
        fn format_then_parse_is_identity(n in -1_000_000i64..1_000_000, d in 1i64..100_000) {
            let r = rational(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
    }
}
