#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use reciplab::arith::{int, rat, Cyclotomic, EgfSeries, Poly, Rational, Scalar};
use reciplab::characters::enumerate_characters;
use reciplab::classical::{bernoulli_function, bernoulli_polynomial, fe_number, fe_numbers, fe_poly, FrobeniusEuler};

const CONDUCTORS: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 12, 15];

pub type Check = Result<usize, String>;

pub fn sample_us() -> Vec<Cyclotomic> {
    vec![
        Cyclotomic::rational(int(2)),
        Cyclotomic::rational(int(-3)),
        Cyclotomic::rational(rat(5, 2)),
        Cyclotomic::rational(rat(-1, 2)),
        Cyclotomic::zeta(5),
        Cyclotomic::zeta(3) + &Cyclotomic::rational(int(2)),
    ]
}

pub fn sample_xs() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1), rat(7, 3), rat(-5, 3), rat(11, 4)]
}

/// `p(a x + b)`.
pub fn compose_affine<F: Scalar>(p: &Poly<F>, a: &F, b: &F) -> Poly<F> {
    let lin = Poly::new(vec![b.clone(), a.clone()]);
    p.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
}

fn cy(r: Rational) -> Cyclotomic {
    Cyclotomic::rational(r)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn shift_relation() -> Check {
    let mut count = 0;
    for u in sample_us() {
        let table = FrobeniusEuler::new(&u, 8).map_err(|e| e.to_string())?;
        for n in 0..=8 {
            let p = table.polynomial(n);
            let shifted = compose_affine(&p, &Cyclotomic::one(), &Cyclotomic::one());
            let lhs = &shifted - &p.scale(&u);
            let rhs = Poly::monomial(Cyclotomic::one() - &u, n);
            ensure(lhs == rhs, || format!("shift n={n} u={u}: {lhs} != {rhs}"))?;
            count += 1;
        }
    }
    Ok(count)
}

/// Polynomial form, both sides as polynomials in `x`.
pub fn multiplication_polynomials() -> Check {
    let mut count = 0;
    for u in sample_us() {
        for m in 1..=6u64 {
            let um = u.pow(m);
            if um.is_one() {
                continue;
            }
            let small = FrobeniusEuler::new(&um, 6).map_err(|e| e.to_string())?;
            let big = FrobeniusEuler::new(&u, 6).map_err(|e| e.to_string())?;
            let factor = (um.clone() - &Cyclotomic::one())
                .div(&(u.clone() - &Cyclotomic::one()))
                .map_err(|e| e.to_string())?;
            for n in 0..=6 {
                let p = small.polynomial(n);
                let mut lhs = Poly::zero();
                for j in 0..m {
                    let shifted = compose_affine(&p, &Cyclotomic::one(), &cy(rat(j as i64, m as i64)));
                    lhs = &lhs + &shifted.scale(&u.pow(m - 1 - j));
                }
                let lhs = lhs.scale_rational(&int(m as i64).pow(n as i32));
                let rhs = compose_affine(&big.polynomial(n), &cy(int(m as i64)), &Cyclotomic::zero()).scale(&factor);
                ensure(lhs == rhs, || format!("multiplication n={n} m={m} u={u}"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Quasi-periodic function form at rational `x`.
pub fn multiplication_functions() -> Check {
    let mut count = 0;
    for u in sample_us() {
        for m in 1..=6u64 {
            let um = u.pow(m);
            if um.is_one() {
                continue;
            }
            let small = FrobeniusEuler::new(&um, 6).map_err(|e| e.to_string())?;
            let big = FrobeniusEuler::new(&u, 6).map_err(|e| e.to_string())?;
            let factor = (um.clone() - &Cyclotomic::one())
                .div(&(u.clone() - &Cyclotomic::one()))
                .map_err(|e| e.to_string())?;
            for n in 0..=6 {
                for x in sample_xs() {
                    let mut lhs = Cyclotomic::zero();
                    for j in 0..m {
                        let arg = x.clone() + rat(j as i64, m as i64);
                        let h = small.function(n, &arg).map_err(|e| e.to_string())?;
                        lhs = lhs + &(u.pow(m - 1 - j) * &h);
                    }
                    let lhs = lhs.scale(&int(m as i64).pow(n as i32));
                    let mx = x.clone() * int(m as i64);
                    let rhs = factor.clone() * &big.function(n, &mx).map_err(|e| e.to_string())?;
                    ensure(lhs == rhs, || format!("multiplication n={n} m={m} x={x} u={u}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

pub fn coprime_double_sum() -> Check {
    let mut count = 0;
    let us = [Cyclotomic::rational(int(2)), Cyclotomic::rational(rat(-1, 2)), Cyclotomic::zeta(7)];
    for u in &us {
        for h in 1..=8i64 {
            for k in 1..=8i64 {
                if num_integer::Integer::gcd(&h, &k) != 1 {
                    continue;
                }
                let hk = (h * k) as u64;
                let uhk = u.pow(hk);
                if uhk.is_one() {
                    continue;
                }
                let table = FrobeniusEuler::new(&uhk, 5).map_err(|e| e.to_string())?;
                for n in 0..=5 {
                    let mut lhs = Cyclotomic::zero();
                    for a in 0..k {
                        for b in 0..h {
                            let e = h * k - (k * b + h * a);
                            let arg = rat(a, k) + rat(b, h);
                            let w = u.powi(e).map_err(|e| e.to_string())?;
                            lhs = lhs + &(w * &table.function(n, &arg).map_err(|e| e.to_string())?);
                        }
                    }
                    let lhs = lhs.scale(&int(h * k).pow(n as i32));
                    let hn = fe_number(n, u).map_err(|e| e.to_string())?;
                    let rhs = (uhk.clone() - &Cyclotomic::one())
                        * &u.div(&(u.clone() - &Cyclotomic::one())).map_err(|e| e.to_string())?
                        * &hn;
                    ensure(lhs == rhs, || format!("double sum n={n} h={h} k={k} u={u}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `m^{n-1} sum_j B_n(x + j/m) = B_n(m x)`.
pub fn bernoulli_multiplication() -> Check {
    let mut count = 0;
    for m in 1..=6i64 {
        for n in 0..=8 {
            let b = bernoulli_polynomial(n);
            let mut lhs = Poly::zero();
            for j in 0..m {
                lhs = &lhs + &compose_affine(&b, &int(1), &rat(j, m));
            }
            let lhs = lhs.scale(&int(m).pow(n as i32 - 1));
            let rhs = compose_affine(&b, &int(m), &int(0));
            ensure(lhs == rhs, || format!("multiplication n={n} m={m}"))?;
            count += 1;
        }
    }
    Ok(count)
}

/// Twisted multiplication formula linking `B_n` and `H_{n-1}` at roots of unity.
pub fn twisted_multiplication() -> Check {
    let mut count = 0;
    for m in 2..=6u64 {
        let zeta = Cyclotomic::zeta(m);
        for r in 1..(2 * m as i64) {
            if r % m as i64 == 0 {
                continue;
            }
            let zr = Cyclotomic::root_of_unity(m, r);
            let table = FrobeniusEuler::new(&zr, 7).map_err(|e| e.to_string())?;
            for n in 1..=8usize {
                let b = bernoulli_polynomial(n).map(Cyclotomic::from_rational);
                let mut lhs = Poly::zero();
                for j in 0..m {
                    let w = zeta.powi(-r * j as i64).map_err(|e| e.to_string())?;
                    let shifted = compose_affine(&b, &Cyclotomic::one(), &cy(rat(j as i64, m as i64)));
                    lhs = &lhs + &shifted.scale(&w);
                }
                let lhs = lhs.scale_rational(&int(m as i64).pow(n as i32 - 1));
                let coef = (zr.clone() * &Cyclotomic::from_int(n as i64))
                    .div(&(Cyclotomic::one() - &zr))
                    .map_err(|e| e.to_string())?;
                let rhs = compose_affine(&table.polynomial(n - 1), &cy(int(m as i64)), &Cyclotomic::zero()).scale(&coef);
                ensure(lhs == rhs, || format!("twisted multiplication n={n} m={m} r={r}"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `H_n(x,-1)` against Bernoulli differences, as polynomials and as periodic functions.
pub fn euler_bernoulli_relation() -> Check {
    let mut count = 0;
    let minus_one = int(-1);
    let table = FrobeniusEuler::new(&minus_one, 8).map_err(|e| e.to_string())?;
    for n in 0..=8usize {
        let c = int(2).pow(n as i32 + 1) / int(n as i64 + 1);
        let b = bernoulli_polynomial(n + 1);
        let rhs = &compose_affine(&b, &rat(1, 2), &rat(1, 2)) - &compose_affine(&b, &rat(1, 2), &int(0));
        let rhs = rhs.scale(&c);
        ensure(table.polynomial(n) == rhs, || format!("polynomial relation n={n}"))?;
        count += 1;
        for x in sample_xs() {
            if n == 0 && reciplab::arith::scalar::is_integer(&x) {
                continue;
            }
            let half = |y: Rational| bernoulli_function(n + 1, &(y / int(2))).map_err(|e| e.to_string());
            let rhs = c.clone() * (half(x.clone() + int(1))? - half(x.clone())?);
            let lhs = table.function(n, &x).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("function relation n={n} x={x}: {lhs} != {rhs}"))?;
            count += 1;
        }
        let hn = fe_number(n, &minus_one).map_err(|e| e.to_string())?;
        ensure(n == 0 || n % 2 == 1 || hn.is_zero(), || format!("H_{n}(-1) = {hn}"))?;
    }
    Ok(count)
}

/// Both orthogonality relations plus distinctness and count for every modulus up to `f_max`.
pub fn character_orthogonality(f_max: u64) -> Check {
    let mut count = 0;
    for f in 1..=f_max {
        let chars = enumerate_characters(f).map_err(|e| e.to_string())?;
        let phi = reciplab::arith::euler_phi(f) as usize;
        ensure(chars.len() == phi, || format!("f={f}: {} characters", chars.len()))?;
        let fi = f as i64;
        let conj = |c: Cyclotomic| c.galois(-1).expect("galois -1");
        for (i, chi) in chars.iter().enumerate() {
            for (j, psi) in chars.iter().enumerate() {
                let s = (0..fi).fold(Cyclotomic::zero(), |acc, a| acc + &(chi.eval(a) * &conj(psi.eval(a))));
                let expect = if i == j { Cyclotomic::from_int(phi as i64) } else { Cyclotomic::zero() };
                ensure(s == expect, || format!("f={f} row sum ({i},{j}) = {s}"))?;
                ensure(i == j || chi != psi, || format!("f={f}: characters {i} and {j} coincide"))?;
                count += 1;
            }
        }
        for a in 0..fi {
            for b in 0..fi {
                let s = chars
                    .iter()
                    .fold(Cyclotomic::zero(), |acc, chi| acc + &(chi.eval(a) * &conj(chi.eval(b))));
                let unit = num_integer::Integer::gcd(&a, &fi) == 1;
                let expect = if a == b && unit { Cyclotomic::from_int(phi as i64) } else { Cyclotomic::zero() };
                ensure(s == expect, || format!("f={f} column sum ({a},{b}) = {s}"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn egf_bernoulli_oracle(order: usize) -> Check {
    let shifted = EgfSeries::new((0..=order).map(|n| rat(1, n as i64 + 1)).collect());
    let b = shifted.reciprocal().map_err(|e| e.to_string())?;
    for n in 0..=order {
        let direct = reciplab::classical::bernoulli_number(n);
        ensure(b.coeff(n) == &direct, || format!("B_{n}: series {} vs {direct}", b.coeff(n)))?;
    }
    Ok(order + 1)
}

fn fe_generating<F: Scalar>(u: &F, order: usize) -> Result<EgfSeries<F>, String> {
    let mut den = EgfSeries::exp(&F::one(), order).into_coeffs();
    den[0] = den[0].clone() - u;
    let recip = EgfSeries::new(den).reciprocal().map_err(|e| e.to_string())?;
    Ok(EgfSeries::new(recip.coeffs().iter().map(|c| c.clone() * &(F::one() - u)).collect()))
}

pub fn egf_frobenius_euler_oracle(order: usize) -> Check {
    let mut count = 0;
    for u in sample_us() {
        let series = fe_generating(&u, order)?;
        let table = fe_numbers(order, &u).map_err(|e| e.to_string())?;
        ensure(series.coeffs() == &table[..], || format!("H_n({u}) disagrees with its series"))?;
        count += order + 1;
    }
    Ok(count)
}

pub fn egf_frobenius_euler_poly_oracle(order: usize) -> Check {
    let mut count = 0;
    for u in sample_us() {
        for x in sample_xs() {
            let xs = Cyclotomic::rational(x.clone());
            let series = fe_generating(&u, order)?
                .multiply(&EgfSeries::exp(&xs, order))
                .map_err(|e| e.to_string())?;
            for n in 0..=order {
                let direct = fe_poly(n, &xs, &u).map_err(|e| e.to_string())?;
                ensure(series.coeff(n) == &direct, || format!("H_{n}({x}, {u}) disagrees with its series"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| {
        prop::collection::vec(small_rational(), m as usize).prop_map(move |raw| Cyclotomic::from_powers(m, &raw))
    })
}

/// Field axioms, inverses and embeddings on random elements.
pub fn cyclotomic_field_sample(cases: u32) -> Check {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let strategy = (cyclotomic(), cyclotomic(), cyclotomic(), 1u64..=4);
    runner
        .run(&strategy, |(a, b, c, k)| {
            prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
            prop_assert_eq!(a.clone() + &b, b.clone() + &a);
            if !a.is_zero() {
                prop_assert!((a.clone() * &a.invert().unwrap()).is_one());
            }
            let target = reciplab::arith::scalar::lcm_u64(a.conductor(), b.conductor()) * k;
            let (ea, eb) = (a.embed(target).unwrap(), b.embed(target).unwrap());
            prop_assert_eq!(&ea, &a);
            prop_assert_eq!(ea * &eb, (a * &b).embed(target).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases as usize)
}
