use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always reduced, denominator positive.
pub type Rational = BigRational;

/// An exact field element. Every number family in the crate is generic over
/// this trait so the same code runs over `Rational`, `Cyclotomic` and
/// rational functions in `q`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;
    fn scale(&self, r: &Rational) -> Self;
    fn to_json(&self) -> serde_json::Value;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the inverse.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::ZeroDivisor)
        } else {
            Ok(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rational_to_string(self))
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = if t.contains('/') {
        Rational::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?
    } else {
        let n = BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        Rational::from_integer(n)
    };
    Ok(parsed)
}

/// Largest integer not exceeding `x` (the Gauss bracket).
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - Rational::from_integer(floor(x))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// Rows `0..=n_max` of Pascal's triangle as rationals.
pub fn pascal(n_max: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Multinomial coefficient `n! / (k_0! ... k_r!)` with `n = sum k_i`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    let mut acc = factorial(n as u64);
    for &k in parts {
        acc /= factorial(k as u64);
    }
    acc
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
