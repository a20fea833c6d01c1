//! Barnes-type multiple Frobenius-Euler numbers
//! `prod_j (1 - u^{a_j})/(e^{a_j t} - u^{a_j}) e^{xt}`.

use crate::arith::scalar::pascal;
use crate::arith::{int, EgfSeries, Scalar};
use crate::classical::FrobeniusEuler;
use crate::error::{Error, Result};

/// The product of the `r` single-parameter factors, without `e^{xt}`.
#[derive(Clone, Debug)]
pub struct BarnesSeries<F> {
    series: EgfSeries<F>,
}

impl<F: Scalar> BarnesSeries<F> {
    pub fn new(a: &[u64], u: &F, order: usize) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("Barnes parameters need r >= 1"));
        }
        let mut series = EgfSeries::identity(order);
        for &aj in a {
            if aj == 0 {
                return Err(Error::invalid("Barnes parameters a_j must be positive"));
            }
            let ua = u.pow(aj);
            if ua.is_one() {
                return Err(Error::pole(format!("u^{aj} = 1")));
            }
            let h = FrobeniusEuler::new(&ua, order)?;
            let mut scale = int(1);
            let factor: Vec<F> = h
                .numbers()
                .iter()
                .map(|hm| {
                    let c = hm.scale(&scale);
                    scale *= int(aj as i64);
                    c
                })
                .collect();
            series = series.multiply(&EgfSeries::new(factor))?;
        }
        Ok(BarnesSeries { series })
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficients of the product at `x = 0`.
    pub fn numbers(&self) -> &[F] {
        self.series.coeffs()
    }

    /// `H_{r,n}(x, u | a)` for `n <= order`.
    pub fn value(&self, n: usize, x: &F) -> F {
        let binom = pascal(n);
        let c = self.series.coeffs();
        let mut acc = F::zero();
        for k in 0..=n {
            acc = acc * x + &c[k].scale(&binom[n][k]);
        }
        acc
    }
}

pub fn barnes_fe<F: Scalar>(n: usize, a: &[u64], u: &F, x: &F) -> Result<F> {
    Ok(BarnesSeries::new(a, u, n)?.value(n, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::multinomial;
    use crate::arith::{rat, Cyclotomic, Rational};
    use crate::classical::{fe_numbers, fe_poly};

    /// Direct expansion of `(^1H a_1 + ... + ^rH a_r + x)^n`.
    fn multinomial_oracle(n: usize, a: &[u64], u: &Rational, x: &Rational) -> Rational {
        let tables: Vec<Vec<Rational>> = a.iter().map(|&aj| fe_numbers(n, &Scalar::pow(u, aj)).unwrap()).collect();
        let mut total = Rational::zero();
        let r = a.len();
        let mut parts = vec![0usize; r + 1];
        fn rec(
            j: usize,
            left: usize,
            parts: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if j + 1 == parts.len() {
                parts[j] = left;
                f(parts);
                return;
            }
            for k in 0..=left {
                parts[j] = k;
                rec(j + 1, left - k, parts, f);
            }
        }
        rec(0, n, &mut parts, &mut |p: &[usize]| {
            let mut term = Rational::from_integer(multinomial(p)) * Scalar::pow(x, p[r] as u64);
            for j in 0..r {
                term = term * &tables[j][p[j]] * Scalar::pow(&int(a[j] as i64), p[j] as u64);
            }
            total = std::mem::take(&mut total) + term;
        });
        total
    }

    #[test]
    fn examples() {
        let u = rat(7, 3);
        let x = rat(-2, 5);
        for n in 0..6 {
            assert_eq!(barnes_fe(n, &[1], &u, &x).unwrap(), fe_poly(n, &x, &u).unwrap());
        }
        assert_eq!(barnes_fe(1, &[1, 1], &int(2), &int(0)).unwrap(), int(2));
        assert_eq!(barnes_fe(0, &[3, 2, 4], &u, &x).unwrap(), int(1));
        assert!(barnes_fe(2, &[2], &int(-1), &x).is_err());
        assert!(barnes_fe(2, &[], &u, &x).is_err());
    }

    #[test]
    fn against_multinomial_expansion() {
        let params: [&[u64]; 5] = [&[2], &[1, 3], &[4, 4], &[1, 2, 3], &[4, 1, 2]];
        for a in params {
            for u in [int(2), rat(-3, 2)] {
                for x in [int(0), rat(1, 2), int(3)] {
                    for n in 0..=5 {
                        assert_eq!(
                            barnes_fe(n, a, &u, &x).unwrap(),
                            multinomial_oracle(n, a, &u, &x),
                            "a={a:?} u={u} x={x} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_symmetry() {
        let u = Cyclotomic::rational(rat(5, 2));
        let x = Cyclotomic::rational(rat(1, 3));
        let v = barnes_fe(4, &[1, 2, 3], &u, &x).unwrap();
        assert_eq!(v, barnes_fe(4, &[3, 1, 2], &u, &x).unwrap());
        assert_eq!(v, barnes_fe(4, &[2, 3, 1], &u, &x).unwrap());
    }

    #[test]
    fn single_factor_general_a() {
        // r = 1 with a_1 > 1 gives sum_k C(n,k) H_k(u^a) a^k x^{n-k}, not H_n(x, u^a)
        let u = int(2);
        let x = rat(1, 2);
        let direct: Rational = {
            let h = fe_numbers(3, &Scalar::pow(&u, 2)).unwrap();
            (0..=3u64)
                .map(|k| {
                    Rational::from_integer(crate::arith::scalar::binomial(3, k))
                        * &h[k as usize]
                        * Scalar::pow(&int(2), k)
                        * Scalar::pow(&x, 3 - k)
                })
                .fold(Rational::zero(), |a, b| a + b)
        };
        assert_eq!(barnes_fe(3, &[2], &u, &x).unwrap(), direct);
        assert_ne!(direct, fe_poly(3, &x, &Scalar::pow(&u, 2)).unwrap());
    }
}
