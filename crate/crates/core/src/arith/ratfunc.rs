//! Rational functions of one indeterminate `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::json;

use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::poly::Poly;
use crate::arith::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// `num / den` kept in canonical form: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

/// Rational function in `q` with coefficients in a cyclotomic field.
pub type QRationalFunction = RatFunc<Cyclotomic>;

impl<F: Scalar> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::canonical(num, den))
    }

    /// Skips the gcd; `num` and `den` must already be coprime.
    pub fn from_coprime(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let lead = den.leading().expect("nonzero").inv()?;
        Ok(RatFunc { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    fn canonical(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let lead = den.leading().expect("nonzero").inv().expect("nonzero");
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    /// Re-canonicalizes; a no-op on values built through this API.
    pub fn normalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    /// `q -> q^e`.
    pub fn substitute(&self, e: usize) -> Self {
        Self::canonical(self.num.substitute_power(e), self.den.substitute_power(e))
    }

    pub fn eval(&self, q: &F) -> Result<F> {
        self.num.eval(q).div(&self.den.eval(q))
    }

    /// Cross-multiplication equality `a d - c b = 0`, valid for
    /// non-canonical representatives too.
    pub fn cross_eq(&self, other: &Self) -> bool {
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }

    fn combine(&self, rhs: &Self, sign: bool) -> Self {
        let signed = |p: &Poly<F>| if sign { p.clone() } else { -p };
        if self.den == rhs.den {
            return Self::canonical(&self.num + &signed(&rhs.num), self.den.clone());
        }
        if rhs.den.is_constant() {
            return Self::canonical(&self.num + &(&signed(&rhs.num) * &self.den), self.den.clone());
        }
        if self.den.is_constant() {
            return Self::canonical(&(&self.num * &rhs.den) + &signed(&rhs.num), rhs.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_cof = rhs.den.exact_div(&g).expect("gcd divides");
        let b_cof = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &a_cof) + &(&signed(&rhs.num) * &b_cof);
        Self::canonical(num, &self.den * &a_cof)
    }

    pub fn render(&self) -> String {
        if self.den.is_constant() {
            return self.num.render("q");
        }
        format!("({})/({})", self.num.render("q"), self.den.render("q"))
    }
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Scalar> Scalar for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(Poly::constant(F::from_rational(r)))
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::canonical(self.num.scale_rational(r), self.den.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        json!({
            "num": self.num.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "den": self.den.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "text": self.render(),
        })
    }
}

impl<F: Scalar> Add<&RatFunc<F>> for RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.combine(rhs, true)
    }
}
impl<F: Scalar> Add for RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: RatFunc<F>) -> RatFunc<F> {
        self.combine(&rhs, true)
    }
}
impl<F: Scalar> Sub<&RatFunc<F>> for RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.combine(rhs, false)
    }
}
impl<F: Scalar> Sub for RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: RatFunc<F>) -> RatFunc<F> {
        self.combine(&rhs, false)
    }
}
impl<F: Scalar> Mul<&RatFunc<F>> for RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lead = den.leading().expect("nonzero").inv().expect("nonzero");
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }
}
impl<F: Scalar> Mul for RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: RatFunc<F>) -> RatFunc<F> {
        self * &rhs
    }
}
impl<F: Scalar> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc { num: -self.num, den: self.den }
    }
}
