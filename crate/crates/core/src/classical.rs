//! Bernoulli and Frobenius-Euler numbers, polynomials and periodic
//! functions, plus their character versions.

use std::sync::{LazyLock, RwLock};

use num_traits::{Signed, ToPrimitive};

use crate::arith::scalar::{floor, fract, is_integer, pascal};
use crate::arith::{int, Cyclotomic, Poly, Rational, Scalar};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| RwLock::new(vec![Rational::one()]));

/// `B_0 ..= B_{n_max}` from `t/(e^t - 1)`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    {
        let cached = BERNOULLI.read().expect("bernoulli cache");
        if cached.len() > n_max {
            return cached[..=n_max].to_vec();
        }
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache");
    let binom = pascal(n_max + 1);
    while cache.len() <= n_max {
        let n = cache.len();
        let s = (0..n).fold(Rational::zero(), |acc, k| acc + &binom[n + 1][k] * &cache[k]);
        cache.push(-s / int(n as i64 + 1));
    }
    cache[..=n_max].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// `B_n(x)` as a polynomial with rational coefficients.
pub fn bernoulli_polynomial(n: usize) -> Poly<Rational> {
    let b = bernoulli_numbers(n);
    let binom = pascal(n);
    Poly::new((0..=n).map(|j| &binom[n][j] * &b[n - j]).collect())
}

/// `B_n(x) = sum_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly<F: Scalar>(n: usize, x: &F) -> F {
    bernoulli_polynomial(n).map(F::from_rational).eval(x)
}

/// Periodic Bernoulli function; `B_1` vanishes at integers.
pub fn bernoulli_function(n: usize, x: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::invalid("bernoulli_function needs n >= 1"));
    }
    if n == 1 && is_integer(x) {
        return Ok(Rational::zero());
    }
    Ok(bernoulli_poly(n, &fract(x)))
}

/// `zeta(-n, x) = -B_{n+1}(x)/(n+1)`.
pub fn hurwitz_zeta_neg(n: usize, x: &Rational) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::OutOfDomain(format!("Hurwitz zeta needs x > 0, got {x}")));
    }
    Ok(-bernoulli_poly(n + 1, x) / int(n as i64 + 1))
}

fn floor_i64(x: &Rational) -> Result<i64> {
    floor(x)
        .to_i64()
        .ok_or_else(|| Error::invalid(format!("integer part of {x} too large")))
}

/// Table of Frobenius-Euler numbers `H_0(u) ..= H_N(u)`.
#[derive(Clone, Debug)]
pub struct FrobeniusEuler<F> {
    u: F,
    h: Vec<F>,
}

impl<F: Scalar> FrobeniusEuler<F> {
    pub fn new(u: &F, n_max: usize) -> Result<Self> {
        if u.is_one() {
            return Err(Error::pole(format!("Frobenius-Euler parameter u = {u}")));
        }
        let inv = (u.clone() - F::one()).inv()?;
        let binom = pascal(n_max);
        let mut h: Vec<F> = Vec::with_capacity(n_max + 1);
        h.push(F::one());
        for n in 1..=n_max {
            let s = (0..n).fold(F::zero(), |acc, k| acc + &h[k].scale(&binom[n][k]));
            h.push(s * &inv);
        }
        Ok(FrobeniusEuler { u: u.clone(), h })
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn max_n(&self) -> usize {
        self.h.len() - 1
    }

    pub fn numbers(&self) -> &[F] {
        &self.h
    }

    pub fn number(&self, n: usize) -> &F {
        &self.h[n]
    }

    /// `H_n(x, u)` as a polynomial in `x`.
    pub fn polynomial(&self, n: usize) -> Poly<F> {
        let binom = pascal(n);
        Poly::new((0..=n).map(|j| self.h[n - j].scale(&binom[n][j])).collect())
    }

    /// `H_n(x, u) = sum_k C(n,k) H_k(u) x^{n-k}`.
    pub fn poly(&self, n: usize, x: &F) -> F {
        let binom = pascal(n);
        let mut acc = F::zero();
        for k in 0..=n {
            acc = acc * x + &self.h[k].scale(&binom[n][k]);
        }
        acc
    }

    pub fn poly_at(&self, n: usize, x: &Rational) -> F {
        self.poly(n, &F::from_rational(x))
    }

    /// `u^{floor x} H_n({x}, u)`.
    pub fn function(&self, n: usize, x: &Rational) -> Result<F> {
        let shift = self.u.powi(floor_i64(x)?)?;
        Ok(shift * &self.poly_at(n, &fract(x)))
    }
}

pub fn fe_numbers<F: Scalar>(n_max: usize, u: &F) -> Result<Vec<F>> {
    Ok(FrobeniusEuler::new(u, n_max)?.h)
}

pub fn fe_number<F: Scalar>(n: usize, u: &F) -> Result<F> {
    Ok(FrobeniusEuler::new(u, n)?.h.swap_remove(n))
}

pub fn fe_poly<F: Scalar>(n: usize, x: &F, u: &F) -> Result<F> {
    Ok(FrobeniusEuler::new(u, n)?.poly(n, x))
}

pub fn fe_function<F: Scalar>(n: usize, x: &Rational, u: &F) -> Result<F> {
    if u.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    FrobeniusEuler::new(u, n)?.function(n, x)
}

fn check_power(u: &Cyclotomic, e: u64) -> Result<Cyclotomic> {
    let ue = u.pow(e);
    if ue.is_one() {
        return Err(Error::pole(format!("u^{e} = 1")));
    }
    Ok(ue)
}

/// `F^n sum_{a<F} chi(a) u^{F-a} H_n(a/F, u^F)` for a multiple `F` of the
/// character modulus.
pub fn char_fe_sum(n: usize, chi: &DirichletCharacter, u: &Cyclotomic, big_f: u64) -> Result<Cyclotomic> {
    if big_f == 0 || !big_f.is_multiple_of(chi.modulus()) {
        return Err(Error::invalid(format!("{big_f} is not a multiple of the modulus {}", chi.modulus())));
    }
    check_power(u, 1)?;
    let table = FrobeniusEuler::new(&check_power(u, big_f)?, n)?;
    let mut acc = Cyclotomic::zero();
    let mut upow = u.clone();
    // u^{F-a} for a = F-1 down to 0
    for a in (0..big_f).rev() {
        let c = chi.eval(a as i64);
        if !c.is_zero() {
            let h = table.poly_at(n, &Rational::new((a as i64).into(), (big_f as i64).into()));
            acc = acc + &(c * &upow * &h);
        }
        upow = upow * u;
    }
    Ok(acc.scale(&int(big_f as i64).pow(n as i32)))
}

/// `H_{n,chi}(u)`; with `big_f` the same sum taken over a multiple of the
/// modulus.
pub fn char_fe_number(
    n: usize,
    chi: &DirichletCharacter,
    u: &Cyclotomic,
    big_f: Option<u64>,
) -> Result<Cyclotomic> {
    char_fe_sum(n, chi, u, big_f.unwrap_or(chi.modulus()))
}

/// `B_{n,chi}(x) = f^{n-1} sum_{a<f} chi(a) B_n((a+x)/f)`.
pub fn char_bernoulli_poly(n: usize, chi: &DirichletCharacter, x: &Cyclotomic) -> Cyclotomic {
    let f = chi.modulus() as i64;
    let inv_f = Rational::new(1.into(), f.into());
    let b = bernoulli_polynomial(n).map(Cyclotomic::from_rational);
    let mut acc = Cyclotomic::zero();
    for a in 0..f {
        let c = chi.eval(a);
        if !c.is_zero() {
            let arg = (x.clone() + &Cyclotomic::from_int(a)).scale(&inv_f);
            acc = acc + &(c * &b.eval(&arg));
        }
    }
    let scale = if n == 0 { inv_f } else { int(f).pow(n as i32 - 1) };
    acc.scale(&scale)
}

/// Periodic `B_{n,chi}` with period `f`, equal to `B_{n,chi}(x)` on `[0, f)`.
pub fn char_bernoulli_function(n: usize, chi: &DirichletCharacter, x: &Rational) -> Cyclotomic {
    let f = int(chi.modulus() as i64);
    let reduced = x - &f * Rational::from_integer(floor(&(x / &f)));
    char_bernoulli_poly(n, chi, &Cyclotomic::rational(reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::characters::enumerate_characters;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_poly(1, &rat(3, 7)), rat(3, 7) - rat(1, 2));
        assert_eq!(bernoulli_poly(2, &rat(1, 2)), rat(-1, 12));
        assert_eq!(bernoulli_poly(5, &int(0)), bernoulli_number(5));
    }

    #[test]
    fn bernoulli_function_examples() {
        assert_eq!(bernoulli_function(1, &int(2)).unwrap(), int(0));
        assert_eq!(bernoulli_function(2, &rat(3, 2)).unwrap(), rat(-1, 12));
        assert_eq!(bernoulli_function(3, &rat(-2, 5)).unwrap(), bernoulli_function(3, &rat(3, 5)).unwrap());
        assert!(bernoulli_function(0, &int(1)).is_err());
    }

    #[test]
    fn fe_examples() {
        assert_eq!(fe_number(0, &int(5)).unwrap(), int(1));
        assert_eq!(fe_number(2, &int(2)).unwrap(), int(3));
        assert_eq!(fe_number(2, &int(-1)).unwrap(), int(0));
        assert_eq!(fe_number(3, &int(1)), Err(Error::PoleAtOne("Frobenius-Euler parameter u = 1".into())));
        assert_eq!(fe_poly(1, &rat(1, 2), &int(3)).unwrap(), int(1));
        assert_eq!(fe_function(1, &rat(3, 2), &int(2)).unwrap(), int(3));
        assert_eq!(fe_function(0, &rat(5, 2), &int(3)).unwrap(), int(9));
        assert_eq!(fe_function(2, &rat(-1, 3), &int(0)), Err(Error::ZeroDivisor));
        let u = rat(5, 2);
        let x = rat(-7, 3);
        assert_eq!(
            fe_function(3, &(&x + int(1)), &u).unwrap(),
            &u * fe_function(3, &x, &u).unwrap()
        );
    }

    #[test]
    fn char_fe_examples() {
        let chi3 = &enumerate_characters(3).unwrap()[1];
        let two = Cyclotomic::from_int(2);
        assert_eq!(char_fe_number(0, chi3, &two, None).unwrap(), Cyclotomic::from_int(2));
        let one = &enumerate_characters(1).unwrap()[0];
        let u = Cyclotomic::rational(rat(-5, 3));
        for n in 0..5 {
            let h = fe_number(n, &u).unwrap();
            assert_eq!(char_fe_number(n, one, &u, None).unwrap(), u.clone() * &h);
        }
        // F-fold sum = ((1 - u^F)/(1 - u^f)) H_{n,chi}(u)
        let lhs = char_fe_number(1, chi3, &two, Some(6)).unwrap();
        let h = char_fe_number(1, chi3, &two, None).unwrap();
        assert_eq!(lhs.as_rational(), Some(rat(54, 7)));
        assert_eq!(lhs, h.scale(&(rat(1 - 64, 1) / rat(1 - 8, 1))));
        assert!(char_fe_number(1, chi3, &two, Some(4)).is_err());
        assert!(char_fe_number(1, chi3, &Cyclotomic::zeta(3), None).is_err());
    }

    #[test]
    fn char_bernoulli_examples() {
        let chi4 = &enumerate_characters(4).unwrap()[1];
        assert_eq!(char_bernoulli_poly(1, chi4, &Cyclotomic::zero()).as_rational(), Some(rat(-1, 2)));
        assert!(char_bernoulli_poly(0, chi4, &Cyclotomic::from_int(3)).is_zero());
        let one = &enumerate_characters(1).unwrap()[0];
        let x = Cyclotomic::rational(rat(2, 7));
        assert_eq!(char_bernoulli_poly(4, one, &x), bernoulli_poly(4, &x));
        assert_eq!(char_bernoulli_function(2, chi4, &rat(9, 2)), char_bernoulli_function(2, chi4, &rat(1, 2)));
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_zeta_neg(0, &int(1)).unwrap(), rat(-1, 2));
        assert_eq!(hurwitz_zeta_neg(1, &int(1)).unwrap(), rat(-1, 12));
        assert_eq!(hurwitz_zeta_neg(0, &rat(1, 2)).unwrap(), int(0));
        assert!(hurwitz_zeta_neg(0, &int(0)).is_err());
    }
}
