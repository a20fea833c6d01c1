//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is the residue of a polynomial in `zeta_m` modulo the `m`-th
//! cyclotomic polynomial, stored as its `phi(m)` rational coefficients.
//! Operands of different conductors are embedded into the lcm of the two
//! conductors before any arithmetic, so mixed expressions never need manual
//! coercion.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::json;

use crate::arith::poly::Poly;
use crate::arith::scalar::{lcm_u64, parse_rational, rational_to_string, Rational, Scalar};
use crate::error::{Error, Result};

type PhiTable = RwLock<HashMap<u64, Arc<Vec<i64>>>>;

fn phi_cache() -> &'static PhiTable {
    static CACHE: OnceLock<PhiTable> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree
/// first, obtained as `(x^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = div_monic_exact(&num, &phi_d);
        }
    }
    let phi = Arc::new(num);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .insert(m, Arc::clone(&phi));
    phi
}

fn div_monic_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            rem[i - dd + j] -= c * dj;
        }
        quot[i - dd] = c;
    }
    debug_assert!(rem[..dd].iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Reduces `sum raw[i] * zeta_m^i` to canonical form.
    pub fn from_powers(m: u64, raw: &[Rational]) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let mut folded = vec![Rational::zero(); m as usize];
        for (i, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                let slot = &mut folded[i % m as usize];
                *slot = &*slot + c;
            }
        }
        Self::reduce(m, folded)
    }

    fn reduce(m: u64, mut v: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[i], Rational::zero());
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    let t = &c * BigInt::from(pj);
                    v[i - deg + j] = &v[i - deg + j] - t;
                }
            }
        }
        v.resize(deg, Rational::zero());
        Cyclotomic { conductor: m, coeffs: v }
    }

    pub fn rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    /// `zeta_m^k` for the primitive root `zeta_m = exp(2 pi i / m)`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::from_powers(m, &raw)
    }

    pub fn zeta(m: u64) -> Self {
        Self::root_of_unity(m, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn is_rational_field(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Image under `Q(zeta_m) -> Q(zeta_M)`, `zeta_m -> zeta_M^(M/m)`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::invalid(format!(
                "conductor {} does not divide {}",
                self.conductor, target
            )));
        }
        Ok(self.embed_unchecked(target))
    }

    fn embed_unchecked(&self, target: u64) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        if self.is_rational_field() {
            let mut coeffs = vec![Rational::zero(); euler_phi(target) as usize];
            coeffs[0] = self.coeffs[0].clone();
            return Cyclotomic { conductor: target, coeffs };
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_powers(target, &raw)
    }

    fn align(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm_u64(a.conductor, b.conductor);
        (a.embed_unchecked(l), b.embed_unchecked(l))
    }

    /// Galois action `zeta_m -> zeta_m^j` for `gcd(j, m) = 1`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let m = self.conductor as i64;
        if j.gcd(&m) != 1 {
            return Err(Error::NotCoprime(j, m));
        }
        let e = j.rem_euclid(m) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * e] = &raw[i * e] + c;
        }
        Ok(Self::from_powers(self.conductor, &raw))
    }

    fn to_poly(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.clone())
    }

    /// Multiplicative inverse via extended gcd with `Phi_m`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_rational_field() || self.as_rational().is_some() {
            let r = self.coeffs[0].clone();
            if r.is_zero() {
                return Err(Error::ZeroDivisor);
            }
            let mut out = self.clone();
            out.coeffs[0] = r.recip();
            return Ok(out);
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let phi = Poly::new(phi.iter().map(|&c| Rational::from_integer(c.into())).collect());
        let (g, s, _) = self.to_poly().ext_gcd(&phi)?;
        if !g.is_constant() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::from_powers(self.conductor, s.coeffs()))
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if rhs.is_rational_field() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_rational_field() {
            return rhs.scale(&self.coeffs[0]);
        }
        if self.conductor != rhs.conductor {
            let (a, b) = Self::align(self, rhs);
            return a.mul_ref(&b);
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + a * b;
                }
            }
        }
        Self::reduce(self.conductor, prod)
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        if self.conductor == rhs.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| op(a, b))
                .collect();
            return Cyclotomic { conductor: self.conductor, coeffs };
        }
        if rhs.is_rational_field() {
            let mut out = self.clone();
            out.coeffs[0] = op(&self.coeffs[0], &rhs.coeffs[0]);
            return out;
        }
        if self.is_rational_field() {
            let mut coeffs: Vec<Rational> = rhs
                .coeffs
                .iter()
                .map(|b| op(&Rational::zero(), b))
                .collect();
            coeffs[0] = op(&self.coeffs[0], &rhs.coeffs[0]);
            return Cyclotomic { conductor: rhs.conductor, coeffs };
        }
        let (a, b) = Self::align(self, rhs);
        a.zip_with(&b, op)
    }

    pub fn render(&self) -> String {
        match self.as_rational() {
            Some(r) => rational_to_string(&r),
            None => self.to_poly().render(&format!("z{}", self.conductor)),
        }
    }
}

/// Accumulates `sum c * zeta_M^s * z` over elements `z` whose conductor
/// divides `M`, reducing modulo `Phi_M` only once at the end.
#[derive(Clone, Debug)]
pub struct PowerAccumulator {
    conductor: u64,
    raw: Vec<Rational>,
}

impl PowerAccumulator {
    pub fn new(conductor: u64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        PowerAccumulator { conductor, raw: vec![Rational::zero(); conductor as usize] }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Adds `c * zeta_M^shift * z`.
    pub fn add_rotated(&mut self, z: &Cyclotomic, shift: u64, c: &Rational) -> Result<()> {
        if !self.conductor.is_multiple_of(z.conductor) {
            return Err(Error::invalid(format!(
                "conductor {} does not divide {}",
                z.conductor, self.conductor
            )));
        }
        let step = self.conductor / z.conductor;
        for (i, zi) in z.coeffs.iter().enumerate() {
            if !zi.is_zero() {
                let idx = ((i as u64 * step + shift) % self.conductor) as usize;
                self.raw[idx] += zi * c;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Cyclotomic {
        Cyclotomic::from_powers(self.conductor, &self.raw)
    }
}

/// Parses sums of terms like `-1/2`, `z5`, `3*z12^5`, `-z4^3` (where `zM`
/// stands for `exp(2 pi i / M)`).
pub fn parse_cyclotomic(s: &str) -> Result<Cyclotomic> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty cyclotomic literal".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        let prev = bytes[i - 1];
        if (bytes[i] == b'+' || bytes[i] == b'-') && prev != b'^' && prev != b'/' && prev != b'*' {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    let mut acc = Cyclotomic::zero();
    for term in terms {
        acc = acc + parse_term(term)?;
    }
    Ok(acc)
}

fn parse_term(t: &str) -> Result<Cyclotomic> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let Some(zpos) = body.find('z') else {
        let r = parse_rational(body)?;
        return Ok(Cyclotomic::rational(r * BigInt::from(sign)));
    };
    let coeff = match body[..zpos].strip_suffix('*') {
        Some(c) => parse_rational(c)?,
        None if zpos == 0 => Rational::one(),
        None => return Err(Error::Parse(format!("malformed term {t:?}"))),
    };
    let root = &body[zpos + 1..];
    let (m_str, k_str) = match root.split_once('^') {
        Some((m, k)) => (m, k),
        None => (root, "1"),
    };
    let m: u64 = m_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad conductor in {t:?}")))?;
    let k: i64 = k_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
    if m == 0 {
        return Err(Error::Parse("conductor must be positive".into()));
    }
    Ok(Cyclotomic::root_of_unity(m, k).scale(&(coeff * BigInt::from(sign))))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::align(self, other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn inv(&self) -> Result<Self> {
        self.invert()
    }
    fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
    fn to_json(&self) -> serde_json::Value {
        json!({
            "conductor": self.conductor,
            "coeffs": self.coeffs.iter().map(rational_to_string).collect::<Vec<_>>(),
        })
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |a, b| a + b)
    }
}
impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self + &rhs
    }
}
impl Sub<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |a, b| a - b)
    }
}
impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self - &rhs
    }
}
impl Mul<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}
impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.mul_ref(&rhs)
    }
}
impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{int, rat};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn normalize_examples() {
        let z4sq = Cyclotomic::root_of_unity(4, 2);
        assert_eq!(z4sq, Cyclotomic::from_int(-1));
        let s = Cyclotomic::from_powers(3, &[int(0), int(1), int(1)]);
        assert_eq!(s, Cyclotomic::from_int(-1));
        // zeta_6 stays the basis vector x under x^2 - x + 1
        let z6 = Cyclotomic::zeta(6);
        assert_eq!(z6.coeffs(), &[int(0), int(1)]);
        assert_eq!(z6.pow(6), Cyclotomic::one());
        assert_eq!(z6.pow(2), z6.clone() - &Cyclotomic::one());
    }

    #[test]
    fn inversion() {
        assert_eq!(Cyclotomic::one().invert().unwrap(), Cyclotomic::one());
        let z4 = Cyclotomic::zeta(4);
        assert_eq!(z4.invert().unwrap(), -z4.clone());
        let w = Cyclotomic::one() + &Cyclotomic::zeta(3);
        let wi = w.invert().unwrap();
        assert_eq!(w * &wi, Cyclotomic::one());
        assert_eq!(Cyclotomic::zero().invert(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn mixed_conductors() {
        let i = Cyclotomic::zeta(4);
        let w = Cyclotomic::zeta(3);
        let prod = i.clone() * &w;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod.pow(12), Cyclotomic::one());
        assert_eq!(Cyclotomic::zeta(12).pow(3), i);
        assert_eq!(Cyclotomic::zeta(12).pow(4), w);
        assert_eq!(i.embed(8).unwrap(), Cyclotomic::zeta(8).pow(2));
        assert!(i.embed(6).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_cyclotomic("-1/2").unwrap(), Cyclotomic::rational(rat(-1, 2)));
        assert_eq!(parse_cyclotomic("z4^2").unwrap(), Cyclotomic::from_int(-1));
        let w = parse_cyclotomic("1 + 2*z3 - z3^2").unwrap();
        let z = Cyclotomic::zeta(3);
        assert_eq!(w, Cyclotomic::one() + &z.scale(&int(2)) - &z.pow(2));
        assert!(parse_cyclotomic("z0").is_err());
        assert!(parse_cyclotomic("").is_err());
    }

    #[test]
    fn galois_conjugation() {
        let z5 = Cyclotomic::zeta(5);
        assert_eq!(z5.galois(2).unwrap(), z5.pow(2));
        assert!(z5.galois(5).is_err());
    }

    #[test]
    fn json_shape() {
        let v = Cyclotomic::zeta(4).scale(&rat(1, 2)).to_json();
        assert_eq!(v["conductor"], 4);
        assert_eq!(v["coeffs"][1], "1/2");
    }
}
