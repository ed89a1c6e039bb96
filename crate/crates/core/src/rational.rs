//! Exact rational scalars and half-integers.
//!
//! Every coefficient in the crate is an [`ExactRational`]; there is no
//! floating point anywhere. Mode indices of the superalgebras live in
//! `½ℤ` and are stored doubled in a [`HalfInt`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type ExactRational = BigRational;

pub fn q(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on a zero denominator.
pub fn qf(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p`, `-p`, `+p`, `p/q` or `-p/q` with no whitespace.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed { t.strip_prefix(['-', '+']).unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or p/q"));
        }
        BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| err("bad integer"))
    };
    let n = parse_int(num, true)?;
    let d = match den {
        Some(d) => parse_int(d, false)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical `p/q` form, or `p` for integers.
pub fn fmt_rational(x: &ExactRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &ExactRational) -> bool {
    x.denom().is_one()
}

/// Non-negative integer test (`ℤ₊` includes zero).
pub fn is_nonneg_integer(x: &ExactRational) -> bool {
    is_integer(x) && !x.is_negative()
}

pub fn to_i64(x: &ExactRational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn binomial(top: &ExactRational, k: u32) -> ExactRational {
    let mut acc = ExactRational::one();
    for i in 0..k {
        acc = acc * (top - q(i as i64)) / q(i as i64 + 1);
    }
    acc
}

/// An element of `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.0, &2)
    }

    pub fn to_rational(self) -> ExactRational {
        qf(self.0, 2)
    }

    pub fn from_rational(x: &ExactRational) -> Option<Self> {
        let doubled = x * q(2);
        to_i64(&doubled).map(HalfInt)
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> Self {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let x = parse_rational(s)?;
        HalfInt::from_rational(&x).ok_or_else(|| Error::Parse {
            input: s.to_string(),
            reason: "not a half-integer".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), qf(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), qf(-3, 2));
        assert_eq!(parse_rational("+5").unwrap(), q(5));
        assert_eq!(fmt_rational(&qf(4, 2)), "2");
        assert_eq!(fmt_rational(&qf(-1, 3)), "-1/3");
        assert_eq!(fmt_rational(&q(0)), "0");
        for bad in ["", "1/0", "1 /2", "a", "1/-2", "--1", "1/2/3", "/2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn half_ints() {
        let h: HalfInt = "-3/2".parse().unwrap();
        assert_eq!(h.twice(), -3);
        assert_eq!(h.floor(), -2);
        assert_eq!(HalfInt::from_twice(3).floor(), 1);
        assert_eq!(h.to_string(), "-3/2");
        assert_eq!(HalfInt::int(2).to_string(), "2");
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&q(5), 2), q(10));
        assert_eq!(binomial(&qf(-1, 2), 2), qf(3, 8));
        assert_eq!(binomial(&q(3), 0), q(1));
    }
}
