//! Values of the Frobenius-Euler l-functions at nonpositive integers, and a
//! numeric evaluator for `|u| > 1`.

use std::sync::{LazyLock, RwLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::scalar::{multinomial, pascal};
use crate::arith::{int, Cyclotomic, Poly, Rational, Scalar};
use crate::barnes::BarnesSeries;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

static EULERIAN: LazyLock<RwLock<Vec<Poly<Rational>>>> =
    LazyLock::new(|| RwLock::new(vec![Poly::one()]));

/// Numerator `N_k` with `P_k(z) = N_k(z) / (1 - z)^{k+1}`.
fn power_sum_numerator(k: usize) -> Poly<Rational> {
    {
        let cached = EULERIAN.read().expect("eulerian cache");
        if let Some(p) = cached.get(k) {
            return p.clone();
        }
    }
    let mut cache = EULERIAN.write().expect("eulerian cache");
    let one_minus_z = Poly::new(vec![int(1), int(-1)]);
    while cache.len() <= k {
        let j = cache.len();
        let prev = &cache[j - 1];
        let next = (&(&prev.derivative() * &one_minus_z) + &prev.scale_rational(&int(j as i64))).shift(1);
        cache.push(next);
    }
    cache[k].clone()
}

fn check_not_one<F: Scalar>(z: &F, what: &str) -> Result<()> {
    if z.is_one() {
        return Err(Error::pole(what.to_string()));
    }
    Ok(())
}

/// `P_k(z) = sum_{m >= 0} m^k z^m` as a rational function of `z`.
pub fn power_sum_closed<F: Scalar>(k: usize, z: &F) -> Result<F> {
    check_not_one(z, "power sum at z = 1")?;
    let num = power_sum_numerator(k).map(F::from_rational).eval(z);
    let den = (F::one() - z).pow(k as u64 + 1);
    num.div(&den)
}

fn inverse_base<F: Scalar>(u: &F) -> Result<F> {
    if u.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    check_not_one(u, "l-function parameter u = 1")?;
    u.inv()
}

/// `l(-n, x; u) = sum_{m >= 0} u^{-m} (m + x)^n`.
pub fn l_neg<F: Scalar>(n: usize, x: &Rational, u: &F) -> Result<F> {
    let z = inverse_base(u)?;
    let binom = pascal(n);
    let x = F::from_rational(x);
    let mut acc = F::zero();
    for k in 0..=n {
        acc = acc * &x + &power_sum_closed(k, &z)?.scale(&binom[n][k]);
    }
    Ok(acc)
}

/// `l(-n; u) = sum_{m >= 1} u^{-m} m^n`.
pub fn l_neg_onevar<F: Scalar>(n: usize, u: &F) -> Result<F> {
    let z = inverse_base(u)?;
    let p = power_sum_closed(n, &z)?;
    Ok(if n == 0 { p - F::one() } else { p })
}

/// `l_r(-n, x; u | a) = sum_{m in N^r} u^{-a.m} (x + a.m)^n`.
pub fn multiple_l_neg<F: Scalar>(n: usize, x: &Rational, u: &F, a: &[u64]) -> Result<F> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::invalid("multiple l-function needs positive a_j"));
    }
    let zs: Vec<F> = a
        .iter()
        .map(|&aj| {
            let ua = u.pow(aj);
            check_not_one(&ua, &format!("u^{aj} = 1"))?;
            inverse_base(&ua)
        })
        .collect::<Result<_>>()?;
    // per factor j: coefficient k is a_j^k P_k(u^{-a_j})
    let factors: Vec<Vec<F>> = zs
        .iter()
        .zip(a)
        .map(|(z, &aj)| {
            (0..=n)
                .map(|k| Ok(power_sum_closed(k, z)?.scale(&Scalar::pow(&int(aj as i64), k as u64))))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<_>>()?;
    let x = F::from_rational(x);
    let xpow: Vec<F> = (0..=n).map(|k| x.pow(k as u64)).collect();
    let mut acc = F::zero();
    let mut parts = vec![0usize; a.len() + 1];
    compositions(n, &mut parts, 0, &mut |p| {
        let mut term = xpow[p[0]].scale(&Rational::from_integer(multinomial(p)));
        for (j, f) in factors.iter().enumerate() {
            term = term * &f[p[j + 1]];
        }
        acc = std::mem::replace(&mut acc, F::zero()) + &term;
    });
    Ok(acc)
}

fn compositions(left: usize, parts: &mut Vec<usize>, j: usize, f: &mut dyn FnMut(&[usize])) {
    if j + 1 == parts.len() {
        parts[j] = left;
        f(parts);
        return;
    }
    for k in 0..=left {
        parts[j] = k;
        compositions(left - k, parts, j + 1, f);
    }
}

/// `l_2(-n; u; chi | k, h)` through its finite Barnes-number expression.
pub fn char_double_l_neg(
    n: usize,
    u: &Cyclotomic,
    chi: &DirichletCharacter,
    k: u64,
    h: u64,
) -> Result<Cyclotomic> {
    if num_integer::gcd(h, k) != 1 {
        return Err(Error::NotCoprime(h as i64, k as i64));
    }
    let hk = h * k;
    if !hk.is_multiple_of(chi.conductor()) {
        return Err(Error::invalid(format!("conductor {} does not divide hk = {hk}", chi.conductor())));
    }
    let barnes = BarnesSeries::new(&[hk, hk], u, n)?;
    let uinv = u.inv()?;
    let mut acc = Cyclotomic::zero();
    for a in 0..k {
        for b in 0..h {
            let m = k * b + h * a;
            let c = chi.eval(m as i64);
            if !c.is_zero() {
                let term = barnes.value(n, &Cyclotomic::from_int(m as i64)) * &uinv.pow(m);
                acc = acc + &(c * &term);
            }
        }
    }
    let d = Cyclotomic::one() - &uinv.pow(hk);
    acc.div(&(d.clone() * &d))
}

/// Numeric value of `sum_{m >= 0} u^{-m} (m + x)^{-s}` with an upper bound
/// on the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LNumeric {
    pub re: f64,
    pub im: f64,
    pub bound: f64,
    pub terms: usize,
}

impl LNumeric {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

pub const L_NUMERIC_MAX_TERMS: usize = 1_000_000;

pub fn l_numeric(s: Complex64, x: f64, u: f64, tol: f64) -> Result<LNumeric> {
    if u.abs() <= 1.0 || !u.is_finite() {
        return Err(Error::OutOfDomain(format!("numeric l-function needs |u| > 1, got {u}")));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if x < 0.0 {
        return Err(Error::OutOfDomain(format!("numeric l-function needs x >= 0, got {x}")));
    }
    let sigma = s.re;
    let term = |m: usize| -> Complex64 {
        let base = m as f64 + x;
        Complex64::new(base, 0.0).powc(-s) / u.powi(m as i32)
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut start = 0;
    if x == 0.0 {
        // 0^{-s}: 1 at s = 0, 0 for Re s < 0
        if s == Complex64::new(0.0, 0.0) {
            sum += 1.0;
        } else if sigma >= 0.0 {
            return Err(Error::OutOfDomain("x = 0 needs Re(s) < 0 or s = 0".into()));
        }
        start = 1;
    }
    let au = u.abs();
    for m in start..L_NUMERIC_MAX_TERMS {
        sum += term(m);
        // tail over m' > m bounded geometrically by its first term
        let next = m as f64 + 1.0 + x;
        let ratio = (1.0 / au) * ((next + 1.0) / next).powf(-sigma).max(1.0);
        if ratio < 1.0 {
            let first = next.powf(-sigma) * au.powf(-(m as f64 + 1.0));
            let bound = first / (1.0 - ratio);
            if bound <= tol {
                return Ok(LNumeric { re: sum.re, im: sum.im, bound, terms: m + 1 });
            }
        }
    }
    Err(Error::ToleranceUnreachable(tol, L_NUMERIC_MAX_TERMS))
}
