//! Truncated exponential generating functions `sum c_n t^n / n!`.

use crate::arith::scalar::{pascal, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct EgfSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> EgfSeries<F> {
    /// `coeffs[n]` is the n-th EGF coefficient; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        EgfSeries { coeffs }
    }

    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![F::zero(); order + 1];
        coeffs[0] = F::one();
        EgfSeries { coeffs }
    }

    /// `e^{a t}`, i.e. `c_n = a^n`.
    pub fn exp(a: &F, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = F::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = p * a;
        }
        EgfSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &F {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Binomial convolution `c_n = sum_k C(n,k) a_k b_{n-k}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let binom = pascal(self.order());
        let coeffs = (0..=self.order())
            .map(|n| {
                (0..=n).fold(F::zero(), |acc, k| {
                    acc + &(self.coeffs[k].clone() * &other.coeffs[n - k]).scale(&binom[n][k])
                })
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inv()?;
        let binom = pascal(self.order());
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s = (1..=n).fold(F::zero(), |acc, k| {
                acc + &(self.coeffs[k].clone() * &out[n - k]).scale(&binom[n][k])
            });
            out.push(-(s * &inv0));
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// Multiplication by `t`: `c_n -> n c_{n-1}`.
    pub fn times_t(&self) -> Self {
        let mut coeffs = vec![F::zero(); self.coeffs.len()];
        for n in 1..self.coeffs.len() {
            coeffs[n] = self.coeffs[n - 1].scale(&Rational::from_integer((n as i64).into()));
        }
        EgfSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::int;

    #[test]
    fn identity_and_exp() {
        let s = EgfSeries::new(vec![int(3), int(-1), int(5)]);
        assert_eq!(EgfSeries::identity(2).multiply(&s).unwrap(), s);
        let e = EgfSeries::exp(&int(1), 6);
        let e2 = e.multiply(&e).unwrap();
        assert_eq!(e2, EgfSeries::exp(&int(2), 6));
    }

    #[test]
    fn order_mismatch() {
        let a = EgfSeries::<Rational>::identity(2);
        let b = EgfSeries::<Rational>::identity(3);
        assert_eq!(a.multiply(&b), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn frobenius_euler_square() {
        // H_0(2) = 1, H_1(2) = 1, H_2(2) = 3 from the recursion
        let f = EgfSeries::new(vec![int(1), int(1), int(3)]);
        assert_eq!(f.multiply(&f).unwrap().coeff(2), &int(8));
    }

    #[test]
    fn reciprocal_round_trip() {
        let e = EgfSeries::exp(&int(3), 5);
        let r = e.reciprocal().unwrap();
        assert_eq!(r, EgfSeries::exp(&int(-3), 5));
        assert!(EgfSeries::new(vec![int(0), int(1)]).reciprocal().is_err());
    }
}
