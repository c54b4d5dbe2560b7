//! Exact rational numbers used for every probability bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub type Rational = BigRational;

/// Shorthand constructor for small literals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `12`, `0.95`, `.5` or `3/4` exactly. Returns `None` on malformed
/// text or a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(numer, denom))
}

/// `a/b` in lowest terms, or just `a` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point rendering for human-facing tables.
pub fn format_decimal(r: &Rational, places: usize) -> String {
    let approx = r.to_f64().unwrap_or(f64::NAN);
    format!("{approx:.places$}")
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `r` rounded down onto the grid of multiples of `2^-bits`, unless its
/// denominator already fits in `bits` bits.
pub fn round_down_dyadic(r: &Rational, bits: u64) -> Rational {
    round_dyadic(r, bits, false)
}

/// Upward counterpart of [`round_down_dyadic`].
pub fn round_up_dyadic(r: &Rational, bits: u64) -> Rational {
    round_dyadic(r, bits, true)
}

fn round_dyadic(r: &Rational, bits: u64, up: bool) -> Rational {
    if r.denom().bits() <= bits {
        return r.clone();
    }
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    Rational::new(n.to_integer(), scale)
}

pub fn is_unit(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// JSON wire form of a rational: `{"num": int, "den": int}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: serde_json::Number,
    pub den: serde_json::Number,
}

impl RationalJson {
    pub fn from_rational(r: &Rational) -> Self {
        fn number(i: &BigInt) -> serde_json::Number {
            match i.to_i64() {
                Some(v) => serde_json::Number::from(v),
                // Arbitrary-precision integers are emitted verbatim.
                None => i.to_string().parse().expect("integer literal"),
            }
        }
        Self {
            num: number(r.numer()),
            den: number(r.denom()),
        }
    }
}
