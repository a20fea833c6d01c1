//! Hardy sums, Apostol's and Berndt's generalized Dedekind sums and the
//! Hardy-Berndt type sums built from Bernoulli functions.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arith::scalar::gcd_i64;
use crate::arith::{int, rat, Cyclotomic, Rational, Scalar};
use crate::characters::DirichletCharacter;
use crate::classical::{bernoulli_function, bernoulli_number, char_bernoulli_function};
use crate::dedekind::{fe_dedekind_sum, sawtooth, Residual};
use crate::error::{Error, Result};

/// The six arithmetic sums of Berndt and Goldberg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyVariant {
    S,
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl HardyVariant {
    pub const ALL: [HardyVariant; 6] =
        [HardyVariant::S, HardyVariant::S1, HardyVariant::S2, HardyVariant::S3, HardyVariant::S4, HardyVariant::S5];
}

impl fmt::Display for HardyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HardyVariant::S => "S",
            HardyVariant::S1 => "s1",
            HardyVariant::S2 => "s2",
            HardyVariant::S3 => "s3",
            HardyVariant::S4 => "s4",
            HardyVariant::S5 => "s5",
        };
        f.write_str(s)
    }
}

impl FromStr for HardyVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "S" => HardyVariant::S,
            "s1" => HardyVariant::S1,
            "s2" => HardyVariant::S2,
            "s3" => HardyVariant::S3,
            "s4" => HardyVariant::S4,
            "s5" => HardyVariant::S5,
            _ => return Err(Error::Parse(format!("unknown Hardy sum variant {s:?}"))),
        })
    }
}

fn check_k(k: i64) -> Result<()> {
    if k <= 0 {
        return Err(Error::invalid(format!("modulus k = {k} must be positive")));
    }
    Ok(())
}

fn sign(e: i64) -> Rational {
    if e.is_even() {
        int(1)
    } else {
        int(-1)
    }
}

/// `(-1)^{floor(hj/k)}`.
fn floor_sign(h: i64, j: i64, k: i64) -> i64 {
    (h * j).div_euclid(k)
}

pub fn hardy_sum(variant: HardyVariant, h: i64, k: i64) -> Result<Rational> {
    check_k(k)?;
    let saw = |a: i64| sawtooth(&rat(a, k));
    let terms: Box<dyn Iterator<Item = Rational>> = match variant {
        HardyVariant::S => Box::new((1..k).map(|j| sign(j + 1 + floor_sign(h, j, k)))),
        HardyVariant::S1 => Box::new((1..=k).map(|j| sign(floor_sign(h, j, k)) * saw(j))),
        HardyVariant::S2 => Box::new((1..=k).map(|j| sign(j) * saw(j) * saw(h * j))),
        HardyVariant::S3 => Box::new((1..=k).map(|j| sign(j) * saw(h * j))),
        HardyVariant::S4 => Box::new((1..k).map(|j| sign(floor_sign(h, j, k)))),
        HardyVariant::S5 => Box::new((1..=k).map(|j| sign(j + floor_sign(h, j, k)) * saw(j))),
    };
    Ok(terms.fold(Rational::zero(), |a, b| a + b))
}

/// `s_n(h, k) = sum_{a=1}^{k-1} (a/k) Bbar_n(ha/k)`.
pub fn apostol_sum(n: usize, h: i64, k: i64) -> Result<Rational> {
    check_k(k)?;
    let mut acc = Rational::zero();
    for a in 1..k {
        acc += rat(a, k) * bernoulli_function(n, &rat(h * a, k))?;
    }
    Ok(acc)
}

/// `(n+1)(h k^n s_n(h,k) + k h^n s_n(k,h))` against
/// `sum_j C(n+1,j) (-1)^j B_j h^j B_{n+1-j} k^{n+1-j} + n B_{n+1}`; holds for odd `n`.
pub fn apostol_reciprocity(n: usize, h: i64, k: i64) -> Result<Residual<Rational>> {
    check_k(h)?;
    check_k(k)?;
    if gcd_i64(h, k) != 1 {
        return Err(Error::NotCoprime(h, k));
    }
    let e = n as u64;
    let lhs = int(n as i64 + 1)
        * (int(h) * Scalar::pow(&int(k), e) * apostol_sum(n, h, k)?
            + int(k) * Scalar::pow(&int(h), e) * apostol_sum(n, k, h)?);
    let binom = crate::arith::scalar::pascal(n + 1);
    let mut rhs = int(n as i64) * bernoulli_number(n + 1);
    for j in 0..=n + 1 {
        rhs += &binom[n + 1][j]
            * sign(j as i64)
            * bernoulli_number(j)
            * Scalar::pow(&int(h), j as u64)
            * bernoulli_number(n + 1 - j)
            * Scalar::pow(&int(k), (n + 1 - j) as u64);
    }
    Ok(Residual { lhs, rhs })
}

/// `s(h, k; chi) = sum_{a=0}^{kf-1} chi(a) Bbar_{1,chi}(ha/k) Bbar_1(a/(kf))` for primitive `chi`.
pub fn berndt_char_dedekind(h: i64, k: i64, chi: &DirichletCharacter) -> Result<Cyclotomic> {
    check_k(k)?;
    if gcd_i64(h, k) != 1 {
        return Err(Error::NotCoprime(h, k));
    }
    let f = chi.modulus();
    let conductor = chi.conductor();
    if conductor != f {
        return Err(Error::NonPrimitive { conductor, modulus: f });
    }
    let kf = k * f as i64;
    let mut acc = Cyclotomic::zero();
    for a in 0..kf {
        let c = chi.eval(a);
        if c.is_zero() {
            continue;
        }
        let b1 = bernoulli_function(1, &rat(a, kf))?;
        if b1.is_zero() {
            continue;
        }
        acc = acc + &(c * &char_bernoulli_function(1, chi, &rat(h * a, k))).scale(&b1);
    }
    Ok(acc)
}

/// Which Bernoulli argument a Hardy-Berndt sum uses: `ha/k` or `ha/(2k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbVariant {
    Zero,
    One,
}

impl FromStr for HbVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "hb0" => Ok(HbVariant::Zero),
            "1" | "hb1" => Ok(HbVariant::One),
            _ => Err(Error::Parse(format!("unknown Hardy-Berndt variant {s:?}"))),
        }
    }
}

fn check_odd_coprime(h: i64, k: i64) -> Result<()> {
    check_k(k)?;
    if gcd_i64(h, k) != 1 {
        return Err(Error::NotCoprime(h, k));
    }
    if k.is_even() {
        return Err(Error::EvenModulus(k));
    }
    Ok(())
}

/// `HB_{n,v}(h, k) = sum_{a<k} (-1)^{ha} (a/k) Bbar_{n+1}(ha/k)` (or `ha/(2k)` for `v = 1`).
/// `(-1)^{ha/k}` is read through the real `k`-th root of `-1`, so `k` must be odd.
pub fn hb_sum(variant: HbVariant, n: usize, h: i64, k: i64) -> Result<Rational> {
    check_odd_coprime(h, k)?;
    let den = match variant {
        HbVariant::Zero => k,
        HbVariant::One => 2 * k,
    };
    let mut acc = Rational::zero();
    for a in 1..k {
        acc += sign(h * a) * rat(a, k) * bernoulli_function(n + 1, &rat(h * a, den))?;
    }
    Ok(acc)
}

/// `HB_{n,0}(h, k)` against `s_{n+1}(h, k)`, for even `h` and odd `k`.
pub fn remark2_first(n: usize, h: i64, k: i64) -> Result<Residual<Rational>> {
    check_even_h(h)?;
    Ok(Residual { lhs: hb_sum(HbVariant::Zero, n, h, k)?, rhs: apostol_sum(n + 1, h, k)? })
}

/// `HB_{n,1}(h, k)` against `s_{n+1}(h, 2k)`, for even `h` and odd `k`.
pub fn remark2_second(n: usize, h: i64, k: i64) -> Result<Residual<Rational>> {
    check_even_h(h)?;
    Ok(Residual { lhs: hb_sum(HbVariant::One, n, h, k)?, rhs: apostol_sum(n + 1, h, 2 * k)? })
}

fn check_even_h(h: i64) -> Result<()> {
    if h.is_odd() {
        return Err(Error::invalid(format!("h = {h} must be even")));
    }
    Ok(())
}

/// `S_{n,-1}(h, k)` from Frobenius-Euler functions against
/// `sum_a (-1)^{ha} (a/k) ((2/(n+1)) Bbar_{n+1}(ha/k) - (2^{n+2}/(n+1)) Bbar_{n+1}(ha/(2k)))`.
pub fn m5_residual(n: usize, h: i64, k: i64) -> Result<Residual<Rational>> {
    check_odd_coprime(h, k)?;
    let lhs = fe_dedekind_sum(n, h, k, &int(-1))?;
    let n1 = n as i64 + 1;
    let c0 = rat(2, n1);
    let c1 = Rational::from_integer(num_bigint::BigInt::from(2).pow(n as u32 + 2)) / int(n1);
    let mut rhs = Rational::zero();
    for a in 1..k {
        let inner = &c0 * bernoulli_function(n + 1, &rat(h * a, k))?
            - &c1 * bernoulli_function(n + 1, &rat(h * a, 2 * k))?;
        rhs += sign(h * a) * rat(a, k) * inner;
    }
    Ok(Residual { lhs, rhs })
}
