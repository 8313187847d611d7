//! Arbitrary-precision natural numbers with checked subtraction and exact division.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("subtraction underflow: {lhs} - {rhs}")]
    Underflow { lhs: String, rhs: String },
    #[error("{dividend} is not divisible by {divisor}")]
    Inexact { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// A nonnegative integer that never rounds.
///
/// Serializes as a decimal string so that JSON consumers never see a truncated
/// native number.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    pub fn one() -> Self {
        BigNat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn checked_sub(&self, rhs: &BigNat) -> Result<BigNat, ArithError> {
        if self.0 < rhs.0 {
            return Err(ArithError::Underflow {
                lhs: self.to_string(),
                rhs: rhs.to_string(),
            });
        }
        Ok(BigNat(&self.0 - &rhs.0))
    }

    /// `self / divisor`, failing unless the remainder is zero.
    pub fn div_exact(&self, divisor: &BigNat) -> Result<BigNat, ArithError> {
        if divisor.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if !r.is_zero() {
            return Err(ArithError::Inexact {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(BigNat(q))
    }

    pub fn pow(&self, exp: u32) -> BigNat {
        BigNat(self.0.pow(exp))
    }

    /// Binomial coefficient `C(n, k)`; zero when `k > n`.
    pub fn binomial(n: u64, k: u64) -> BigNat {
        if k > n {
            return BigNat::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigUint::one();
        // acc = C(n - k + i, i) after step i, always an integer
        for i in 1..=k {
            acc *= n - k + i;
            acc /= i;
        }
        BigNat(acc)
    }

    pub fn factorial(n: u64) -> BigNat {
        let mut acc = BigUint::one();
        for i in 2..=n {
            acc *= i;
        }
        BigNat(acc)
    }

    /// Nearest `f64`, saturating to infinity for very large values.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Natural logarithm; `-inf` for zero. Works for values far beyond the `f64` range.
    pub fn ln(&self) -> f64 {
        ln_biguint(&self.0)
    }
}

pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl Add<&BigNat> for &BigNat {
    type Output = BigNat;
    fn add(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 + &rhs.0)
    }
}

impl Add for BigNat {
    type Output = BigNat;
    fn add(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 + rhs.0)
    }
}

impl AddAssign<&BigNat> for BigNat {
    fn add_assign(&mut self, rhs: &BigNat) {
        self.0 += &rhs.0;
    }
}

impl Mul<&BigNat> for &BigNat {
    type Output = BigNat;
    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 * &rhs.0)
    }
}

impl Mul for BigNat {
    type Output = BigNat;
    fn mul(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 * rhs.0)
    }
}

impl<'a> Sum<&'a BigNat> for BigNat {
    fn sum<I: Iterator<Item = &'a BigNat>>(iter: I) -> Self {
        let mut acc = BigNat::zero();
        for v in iter {
            acc += v;
        }
        acc
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigNat {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(BigNat)
    }
}

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(BigNat::binomial(4, 2), BigNat::from(6));
        assert_eq!(BigNat::binomial(10, 6), BigNat::from(210));
        assert_eq!(BigNat::binomial(5, 0), BigNat::one());
        assert_eq!(BigNat::binomial(3, 4), BigNat::zero());
        assert_eq!(
            BigNat::binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn pascal_rule() {
        for n in 1..40u64 {
            for k in 1..n {
                let lhs = BigNat::binomial(n, k);
                let rhs = &BigNat::binomial(n - 1, k - 1) + &BigNat::binomial(n - 1, k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn checked_ops() {
        let five = BigNat::from(5);
        let three = BigNat::from(3);
        assert_eq!(five.checked_sub(&three).unwrap(), BigNat::from(2));
        assert!(matches!(
            three.checked_sub(&five),
            Err(ArithError::Underflow { .. })
        ));
        assert_eq!(BigNat::from(12).div_exact(&three).unwrap(), BigNat::from(4));
        assert!(matches!(
            five.div_exact(&three),
            Err(ArithError::Inexact { .. })
        ));
        assert_eq!(
            five.div_exact(&BigNat::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn logarithm_of_huge_values() {
        let big = BigNat::factorial(1000);
        // ln(1000!) = 5912.128178488163...
        assert!((big.ln() - 5_912.128_178_488_163).abs() < 1e-9);
        assert_eq!(BigNat::zero().ln(), f64::NEG_INFINITY);
    }

    #[test]
    fn serde_as_decimal_string() {
        let v = BigNat::binomial(80, 40);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, format!("\"{v}\""));
        let back: BigNat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
