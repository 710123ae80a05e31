//! Exact nonnegative rationals.
//!
//! Every distance, radius and edge parameter in this crate is a
//! [`NonNegRational`]. Values are kept reduced, so structural equality is
//! numeric equality and points carrying rational coordinates can be compared
//! and hashed directly.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("value {0} is negative")]
    Negative(String),
    #[error("cannot parse {0:?} as a rational (expected \"num\" or \"num/den\")")]
    Parse(String),
}

/// An exact rational number `>= 0`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonNegRational(Ratio<i128>);

impl NonNegRational {
    pub const ZERO: Self = NonNegRational(Ratio::new_raw(0, 1));
    pub const ONE: Self = NonNegRational(Ratio::new_raw(1, 1));
    pub const TWO: Self = NonNegRational(Ratio::new_raw(2, 1));
    pub const HALF: Self = NonNegRational(Ratio::new_raw(1, 2));

    pub fn new(numer: i128, denom: i128) -> Result<Self, RationalError> {
        if denom == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::zero() {
            return Err(RationalError::Negative(format!("{numer}/{denom}")));
        }
        Ok(NonNegRational(r))
    }

    /// `numer / denom`; panics on a zero denominator. For literals and
    /// internally computed values that are nonnegative by construction.
    pub fn frac(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        NonNegRational(Ratio::new(numer as i128, denom as i128))
    }

    pub fn integer(n: u64) -> Self {
        NonNegRational(Ratio::from_integer(n as i128))
    }

    /// `1/n` for `n >= 1`.
    pub fn recip_of(n: u64) -> Self {
        Self::frac(1, n)
    }

    /// `2^-n`.
    pub fn pow2_neg(n: u32) -> Self {
        assert!(n < 120, "2^-{n} exceeds the representable range");
        NonNegRational(Ratio::new_raw(1, 1i128 << n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero()
    }

    /// `|self - other|`.
    pub fn abs_diff(self, other: Self) -> Self {
        if self >= other {
            NonNegRational(self.0 - other.0)
        } else {
            NonNegRational(other.0 - self.0)
        }
    }

    /// `self - other` if the result stays nonnegative.
    pub fn checked_sub(self, other: Self) -> Option<Self> {
        (self >= other).then(|| NonNegRational(self.0 - other.0))
    }

    /// `max(self - other, 0)`.
    pub fn saturating_sub(self, other: Self) -> Self {
        self.checked_sub(other).unwrap_or(Self::ZERO)
    }

    /// `min(1, self)`, the truncation used by the cobweb cutoff.
    pub fn truncated(self) -> Self {
        self.min(Self::ONE)
    }

    pub fn recip(self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        NonNegRational(self.0.recip())
    }

    pub fn midpoint(self, other: Self) -> Self {
        NonNegRational((self.0 + other.0) / Ratio::from_integer(2))
    }

    /// Least common multiple of the denominators of `values`.
    pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Self>) -> i128 {
        values.into_iter().fold(1i128, |acc, v| acc.lcm(&v.denom()))
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Default for NonNegRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for NonNegRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        NonNegRational(self.0 + rhs.0)
    }
}

impl Mul for NonNegRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        NonNegRational(self.0 * rhs.0)
    }
}

impl Div for NonNegRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        NonNegRational(self.0 / rhs.0)
    }
}

impl Sum for NonNegRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl Zero for NonNegRational {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for NonNegRational {
    fn one() -> Self {
        Self::ONE
    }
}

impl fmt::Display for NonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for NonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NonNegRational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<i128, RationalError> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
                return Err(bad());
            }
            t.parse::<i128>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Self::new(parse_int(s)?, 1),
            Some((n, d)) => Self::new(parse_int(n)?, parse_int(d)?),
        }
    }
}

impl Serialize for NonNegRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NonNegRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: u64, d: u64) -> NonNegRational {
        NonNegRational::frac(n, d)
    }

    #[test]
    fn reduced_on_construction() {
        let r = NonNegRational::new(6, 8).unwrap();
        assert_eq!((r.numer(), r.denom()), (3, 4));
        assert_eq!(r, q(3, 4));
    }

    #[test]
    fn rejects_negative_and_zero_denominator() {
        assert_eq!(NonNegRational::new(1, 0), Err(RationalError::ZeroDenominator));
        assert!(matches!(NonNegRational::new(-1, 3), Err(RationalError::Negative(_))));
        // A negative over a negative is fine.
        assert_eq!(NonNegRational::new(-1, -3).unwrap(), q(1, 3));
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(q(1, 3).to_string(), "1/3");
        assert_eq!(NonNegRational::ZERO.to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/3".parse::<NonNegRational>().unwrap(), q(1, 3));
        assert_eq!("2".parse::<NonNegRational>().unwrap(), q(2, 1));
        assert_eq!("2/4".parse::<NonNegRational>().unwrap(), q(1, 2));
        assert!("".parse::<NonNegRational>().is_err());
        assert!("1/".parse::<NonNegRational>().is_err());
        assert!("0.5".parse::<NonNegRational>().is_err());
        assert!("-1/2".parse::<NonNegRational>().is_err());
        assert!("1/0".parse::<NonNegRational>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2).abs_diff(q(1, 3)), q(1, 6));
        assert_eq!(q(1, 3).abs_diff(q(1, 2)), q(1, 6));
        assert_eq!(q(1, 3).checked_sub(q(1, 2)), None);
        assert_eq!(q(1, 3).saturating_sub(q(1, 2)), NonNegRational::ZERO);
        assert_eq!(q(3, 2).truncated(), NonNegRational::ONE);
        assert_eq!(q(1, 2).truncated(), q(1, 2));
        assert_eq!(NonNegRational::pow2_neg(3), q(1, 8));
        assert_eq!(q(1, 4).midpoint(q(3, 4)), q(1, 2));
        assert_eq!([q(1, 2), q(1, 3), q(1, 6)].into_iter().sum::<NonNegRational>(), NonNegRational::ONE);
        assert_eq!(NonNegRational::common_denominator(&[q(1, 4), q(1, 6)]), 12);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in 0u64..10_000, d in 1u64..10_000) {
            let r = q(n, d);
            let s = r.to_string();
            prop_assert_eq!(s.parse::<NonNegRational>().unwrap(), r);
            let json = serde_json::to_string(&r).unwrap();
            prop_assert_eq!(serde_json::from_str::<NonNegRational>(&json).unwrap(), r);
        }

        #[test]
        fn abs_diff_is_symmetric(a in 0u64..500, b in 1u64..50, c in 0u64..500, d in 1u64..50) {
            prop_assert_eq!(q(a, b).abs_diff(q(c, d)), q(c, d).abs_diff(q(a, b)));
        }
    }
}
