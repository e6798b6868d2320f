//! Numeric backends.
//!
//! Every formula in the crate is written once against [`Scalar`] and runs
//! either on machine floats (`f64`) or on exact, arbitrary-size rationals
//! ([`Rational`]). The rational backend keeps fractions in lowest terms; the
//! float backend rejects non-finite values at the input boundary.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn ratio(numer: i64, denom: i64) -> Self;
    /// Exact conversion from a binary float. `None` for NaN or infinities.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    /// Square root. The rational backend only answers for perfect squares.
    fn sqrt(&self) -> Option<Self>;
    /// The value as an `i64` when it is an integer in range.
    fn to_integer(&self) -> Option<i64>;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Equality for exact values, `|a - b| <= tol * max(1, |a|, |b|)` for floats.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            return self == other;
        }
        let (a, b) = (self.to_f64(), other.to_f64());
        (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn to_integer(&self) -> Option<i64> {
        (self.fract() == 0.0 && f64::abs(*self) < 9.0e15).then_some(*self as i64)
    }
    fn powi(&self, exp: u32) -> Self {
        match i32::try_from(exp) {
            Ok(e) => f64::powi(*self, e),
            Err(_) => f64::powf(*self, exp as f64),
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }
    fn from_f64(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }
    fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Parse `"p/q"`, `"p"` or a decimal literal (`"-1.25e-3"`) into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num::pow(ten, usize::try_from(scale).ok()?))
    } else {
        Rational::new(all, num::pow(ten, usize::try_from(-scale).ok()?))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

/// Text parsing for both backends, used by the CLI and JSON layers.
pub trait ParseScalar: Scalar {
    fn parse_scalar(text: &str) -> Option<Self>;
}

impl ParseScalar for f64 {
    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        let v = match text.split_once('/') {
            Some((n, d)) => n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?,
            None => text.parse::<f64>().ok()?,
        };
        v.is_finite().then_some(v)
    }
}

impl ParseScalar for Rational {
    fn parse_scalar(text: &str) -> Option<Self> {
        parse_rational(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn rationals_stay_reduced() {
        let v = q(6, 8) + q(1, 4);
        assert_eq!(v, q(1, 1));
        assert_eq!(q(2, 4).to_string(), "1/2");
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(Rational::from_i64(3).sqrt(), None);
        assert_eq!(q(-1, 1).sqrt(), None);
        assert_eq!(4.0f64.sqrt(), 2.0);
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1"), Some(q(1, 10)));
        assert_eq!(parse_rational("-1.25e-1"), Some(q(-1, 8)));
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("2E2"), Some(Rational::from_i64(200)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn float_parse_rejects_non_finite() {
        assert_eq!(f64::parse_scalar("1/3"), Some(1.0 / 3.0));
        assert_eq!(f64::parse_scalar("inf"), None);
        assert_eq!(f64::parse_scalar("NaN"), None);
    }

    #[test]
    fn powi_matches_repeated_product() {
        assert_eq!(q(2, 3).powi(5), q(32, 243));
        assert_eq!(q(7, 5).powi(0), q(1, 1));
    }
}
