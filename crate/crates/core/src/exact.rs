//! Helpers for exact rational values: parsing decimal literals and rendering
//! fixed-place decimals without going through floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Parses a plain decimal literal (`"166.36"`, `"-3"`, `"1e2"` is rejected) exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    if negative {
        numer = -numer;
    }
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(numer, denom))
}

/// Parses a numerator/denominator pair of integer literals.
pub fn parse_ratio(numer: &str, denom: &str) -> Option<BigRational> {
    let numer: BigInt = numer.trim().parse().ok()?;
    let denom: BigInt = denom.trim().parse().ok()?;
    (!denom.is_zero()).then(|| BigRational::new(numer, denom))
}

/// Renders `value` with exactly `places` digits after the point, rounding half away from zero.
pub fn format_fixed(value: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r * 2u32;
    let rounded = if twice >= *scaled.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded_is_zero(&int_part, &frac_part) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(places - frac.len()))
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
