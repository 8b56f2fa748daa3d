//! Scalar types shared by every construction.
//!
//! Exact work happens over [`Rational`] (arbitrary precision, always in lowest
//! terms). A few routines also run over `f64`; the [`Scalar`] trait lets the
//! same elimination and folding code serve both.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational number. Numerator and denominator are arbitrary precision
/// and the value is always reduced with a positive denominator.
pub type Rational = BigRational;

/// Threshold under which a float is treated as zero.
pub const FLOAT_EPS: f64 = 1e-12;

/// Field operations plus the handful of predicates elimination needs.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether results over this scalar are exact.
    const EXACT: bool;

    /// Zero test; exact for rationals, thresholded for floats.
    fn is_negligible(&self) -> bool;

    fn to_f64(&self) -> f64;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Strictly negative and not negligible.
    fn is_negative_strict(&self) -> bool {
        !self.is_negligible() && *self < Self::zero()
    }

    /// Strictly positive and not negligible.
    fn is_positive_strict(&self) -> bool {
        !self.is_negligible() && *self > Self::zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_EPS
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer (`"-3"`), a fraction (`"171/25"`) or a decimal
/// (`"2.52"`, `"-1e-3"`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(format!("empty rational literal {text:?}")));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("not a rational literal: {text:?}")))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Formats a rational as a terminating decimal when it has one, otherwise
/// as `p/q`.
pub fn format_decimal(r: &Rational) -> String {
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return r.to_string();
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let sign = if r.numer().sign() == Sign::Minus { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{whole}.{frac}")
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions. Returns `None` for non-finite input.
pub fn best_rational(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut rem = x.abs();
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let limit = BigInt::from(max_den);
    let mut best: Option<(BigInt, BigInt)> = None;
    for _ in 0..64 {
        let a_f = rem.floor();
        let a = BigInt::from(a_f as u64);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > limit {
            break;
        }
        best = Some((h_next.clone(), k_next.clone()));
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = rem - a_f;
        if frac < 1e-15 {
            break;
        }
        rem = 1.0 / frac;
        if !rem.is_finite() || rem > 1e18 {
            break;
        }
    }
    let (p, q) = best?;
    let value = Rational::new(p, q);
    Some(if negative { -value } else { value })
}

/// Exact rational reconstruction of a float: the best approximation with
/// denominator `<= max_den`, accepted only within `tol`.
pub fn rational_from_f64(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    let r = best_rational(x, max_den)?;
    let back = Scalar::to_f64(&r);
    ((back - x).abs() <= tol).then_some(r)
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("2.52").unwrap(), ratio(63, 25));
        assert_eq!(parse_rational("171/25").unwrap(), ratio(171, 25));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.09").unwrap(), ratio(9, 100));
        assert_eq!(parse_rational("-1.5e2").unwrap(), int(-150));
        assert_eq!(parse_rational("2.5E-1").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&ratio(63, 25)), "2.52");
        assert_eq!(format_decimal(&ratio(-1, 8)), "-0.125");
        assert_eq!(format_decimal(&int(3)), "3");
        assert_eq!(format_decimal(&ratio(1, 3)), "1/3");
        assert_eq!(format_decimal(&ratio(7, 100)), "0.07");
    }

    #[test]
    fn continued_fraction_reconstruction() {
        assert_eq!(rational_from_f64(2.52, 100, 1e-12), Some(ratio(63, 25)));
        assert_eq!(rational_from_f64(1.0 / 3.0, 10, 1e-12), Some(ratio(1, 3)));
        assert_eq!(rational_from_f64(-0.75, 10, 1e-12), Some(ratio(-3, 4)));
        assert_eq!(rational_from_f64(std::f64::consts::PI, 10, 1e-12), None);
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&ratio(241, 625)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
