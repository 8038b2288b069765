use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Number of perfect matchings of a graph. Exact and never negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }

    /// Lossy conversion, used only for report-only tables.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::INFINITY)
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<u128> for Count {
    fn from(v: u128) -> Self {
        Count(BigUint::from(v))
    }
}

impl core::ops::Mul for Count {
    type Output = Count;
    fn mul(self, rhs: Count) -> Count {
        Count(self.0 * rhs.0)
    }
}

impl core::ops::Add for Count {
    type Output = Count;
    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl core::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::zero(), |a, b| a + b)
    }
}

impl core::iter::Product for Count {
    fn product<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::one(), |a, b| a * b)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl core::str::FromStr for Count {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigUint>().map(Count)
    }
}

/// A reduced nonnegative fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRatio {
    numerator: BigUint,
    denominator: BigUint,
}

impl ExactRatio {
    /// Returns `None` when `denominator` is zero.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        let g = numerator.gcd(&denominator);
        Some(ExactRatio {
            numerator: numerator / &g,
            denominator: denominator / g,
        })
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Option<Self> {
        Self::new(BigUint::from(numerator), BigUint::from(denominator))
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn ratio_is_reduced() {
        let r = ExactRatio::from_u64(6, 18).unwrap();
        assert_eq!(r.to_string(), "1/3");
        assert_eq!(ExactRatio::from_u64(0, 5).unwrap().to_string(), "0/1");
        assert!(ExactRatio::from_u64(1, 0).is_none());
    }

    #[test]
    fn count_roundtrips_through_decimal() {
        let c: Count = "589185".parse().unwrap();
        assert_eq!(c.to_string(), "589185");
        assert!(c.is_odd());
    }
}
