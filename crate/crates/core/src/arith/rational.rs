//! Exact rationals and half-integer degrees.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}` (expected p or p/q)"));
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `base^exp` for any integer exponent. `base` must be nonzero when `exp < 0`.
pub fn pow_int(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// A value in ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integral(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    pub fn to_rational(self) -> Rational {
        ratio(self.doubled, 2)
    }

    /// Exact conversion from a rational whose denominator divides 2.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let two = q * int(2);
        if !two.is_integer() {
            return None;
        }
        two.numer().to_i64().map(HalfInt::from_doubled)
    }

    /// The fractional class of the value: 0 or ½.
    pub fn frac(self) -> HalfInt {
        HalfInt::from_doubled(self.doubled.rem_euclid(2))
    }

    pub fn abs(self) -> HalfInt {
        HalfInt::from_doubled(self.doubled.abs())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        HalfInt::from_rational(&q)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a half-integer")))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_square_witness(witness: &Rational, radicand: &Rational) -> bool {
    &(witness * witness) == radicand
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(fmt_rational(&parse_rational("-10/4").unwrap()), "-5/2");
        assert_eq!(fmt_rational(&parse_rational("8/4").unwrap()), "2");
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn half_int_basics() {
        let h: HalfInt = "-3/2".parse().unwrap();
        assert_eq!(h.doubled(), -3);
        assert!(!h.is_integral());
        assert_eq!(h.floor(), -2);
        assert_eq!(h.frac(), HalfInt::HALF);
        assert_eq!(h.to_string(), "-3/2");
        assert_eq!((h + HalfInt::HALF).to_string(), "-1");
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_int(&int(4), -2), ratio(1, 16));
        assert_eq!(pow_int(&ratio(-2, 3), 3), ratio(-8, 27));
        assert_eq!(pow_int(&int(7), 0), int(1));
    }
}
