use num_bigint::BigInt;
use proptest::prelude::*;

mod common;
use common::{cyclotomic, small_rational};

use reciplab::arith::{rat, Cyclotomic, EgfSeries, Poly, PowerAccumulator, RatFunc, Rational, Scalar};
use reciplab::characters::enumerate_characters;
use reciplab::padic::{teichmuller, PAdic};

fn egf(order: usize) -> impl Strategy<Value = EgfSeries<Rational>> {
    prop::collection::vec(small_rational(), order + 1).prop_map(EgfSeries::new)
}

fn poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(small_rational(), 1..5).prop_map(Poly::new)
}

fn nonzero_poly() -> impl Strategy<Value = Poly<Rational>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() + &Cyclotomic::zero(), a.clone());
        prop_assert_eq!(a.clone() * &Cyclotomic::one(), a.clone());
        prop_assert!((a.clone() - &a).is_zero());
    }

    #[test]
    fn cyclotomic_inverse_round_trip(a in cyclotomic()) {
        prop_assume!(!a.is_zero());
        let inv = a.invert().unwrap();
        prop_assert!((a.clone() * &inv).is_one());
        prop_assert_eq!(inv.invert().unwrap(), a);
    }

    #[test]
    fn embedding_round_trip(a in cyclotomic(), b in cyclotomic(), k in 1u64..=4) {
        let target = reciplab::arith::scalar::lcm_u64(a.conductor(), b.conductor()) * k;
        let ea = a.embed(target).unwrap();
        let eb = b.embed(target).unwrap();
        prop_assert_eq!(ea.conductor(), target);
        prop_assert_eq!(&ea, &a);
        prop_assert_eq!(ea.clone() * &eb, (a.clone() * &b).embed(target).unwrap());
        prop_assert_eq!(ea + &eb, (a + &b).embed(target).unwrap());
    }

    #[test]
    fn galois_is_a_ring_map(a in cyclotomic(), b in cyclotomic(), j in 1i64..60) {
        let m = reciplab::arith::scalar::lcm_u64(a.conductor(), b.conductor());
        prop_assume!(num_integer::Integer::gcd(&j, &(m as i64)) == 1);
        let a = a.embed(m).unwrap();
        let b = b.embed(m).unwrap();
        let g = |x: &Cyclotomic| x.galois(j).unwrap();
        prop_assert_eq!(g(&(a.clone() * &b)), g(&a) * &g(&b));
        prop_assert_eq!(g(&(a.clone() + &b)), g(&a) + &g(&b));
    }

    #[test]
    fn power_accumulator_matches_direct_sum(
        terms in prop::collection::vec((cyclotomic(), 0u64..120, small_rational()), 0..6)
    ) {
        let big_m = 120;
        let mut acc = PowerAccumulator::new(big_m);
        let mut direct = Cyclotomic::zero();
        for (z, s, c) in &terms {
            acc.add_rotated(z, *s, c).unwrap();
            direct = direct + &(Cyclotomic::root_of_unity(big_m, *s as i64) * z).scale(c);
        }
        prop_assert_eq!(acc.finish(), direct);
    }

    #[test]
    fn egf_product_laws(a in egf(6), b in egf(6), c in egf(6)) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.multiply(&b.add(&c).unwrap()).unwrap(),
            a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&EgfSeries::identity(6)).unwrap(), a.clone());
    }

    #[test]
    fn egf_reciprocal_and_exp(a in egf(6), x in small_rational(), y in small_rational()) {
        prop_assume!(!a.coeff(0).is_zero());
        prop_assert_eq!(a.multiply(&a.reciprocal().unwrap()).unwrap(), EgfSeries::identity(6));
        let sum = x.clone() + &y;
        prop_assert_eq!(
            EgfSeries::exp(&x, 6).multiply(&EgfSeries::exp(&y, 6)).unwrap(),
            EgfSeries::exp(&sum, 6)
        );
    }

    #[test]
    fn ratfunc_field_laws(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert!((x.clone() * &y).cross_eq(&(y.clone() * &x)));
        prop_assert!(((x.clone() + &y) - &y).cross_eq(&x));
        prop_assert_eq!(x.normalize(), x.clone());
        let unreduced = RatFunc::new(&a * &b, &b * &b).unwrap();
        prop_assert!(unreduced.cross_eq(&x));
        if !x.is_zero() {
            prop_assert!((x.clone() * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfunc_eval_is_a_homomorphism(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly(), q in small_rational()) {
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        let (Ok(xq), Ok(yq)) = (x.eval(&q), y.eval(&q)) else { return Ok(()); };
        prop_assert_eq!((x.clone() * &y).eval(&q).unwrap(), xq.clone() * &yq);
        prop_assert_eq!((x.clone() + &y).eval(&q).unwrap(), xq + &yq);
        if let Ok(sq) = x.substitute(2).eval(&q) {
            prop_assert_eq!(sq, x.eval(&(q.clone() * &q)).unwrap());
        }
    }

    #[test]
    fn character_multiplicativity(f in 1u64..=60, a in -100i64..100, b in -100i64..100) {
        for chi in enumerate_characters(f).unwrap() {
            prop_assert_eq!(chi.eval(a * b), chi.eval(a) * &chi.eval(b));
            prop_assert_eq!(chi.eval(a + f as i64), chi.eval(a));
        }
    }

    #[test]
    fn padic_precision_is_honest(
        xn in -500i64..500, xd in 1i64..60, yn in -500i64..500, yd in 1i64..60,
        p in prop::sample::select(vec![3u64, 5, 7, 11]), n in 2i64..8
    ) {
        let x = rat(xn, xd);
        let y = rat(yn, yd);
        let lo = |r: &Rational| PAdic::from_rational(r, p, n);
        let hi = |r: &Rational| PAdic::from_rational(r, p, n + 12);
        let check = |low: PAdic, high: PAdic| {
            low.is_zero() && high.valuation() >= low.precision()
                || low == high.with_precision(low.precision())
        };
        prop_assert!(check(&lo(&x) + &lo(&y), &hi(&x) + &hi(&y)));
        prop_assert!(check(&lo(&x) - &lo(&y), &hi(&x) - &hi(&y)));
        prop_assert!(check(&lo(&x) * &lo(&y), &hi(&x) * &hi(&y)));
        prop_assert!(check(lo(&x).pow(3), hi(&x).pow(3)));
        if let (Ok(a), Ok(b)) = (lo(&x).div(&lo(&y)), hi(&x).div(&hi(&y))) {
            prop_assert!(check(a, b));
        }
        prop_assert!(check(lo(&(x.clone() * &y)), &hi(&x) * &hi(&y)));
    }

    #[test]
    fn teichmuller_is_multiplicative(
        a in 1i64..200, b in 1i64..200, p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), n in 1i64..8
    ) {
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let wa = teichmuller(a, p, n).unwrap();
        let wb = teichmuller(b, p, n).unwrap();
        let wab = teichmuller(a * b, p, n).unwrap();
        prop_assert_eq!(&wa * &wb, wab);
        prop_assert_eq!(wa.pow(p - 1), PAdic::from_int(1, p, n));
        prop_assert_eq!(wa.residue().unwrap() % BigInt::from(p), BigInt::from(a) % BigInt::from(p));
    }
}

#[test]
fn egf_reciprocal_reproduces_bernoulli_numbers() {
    common::egf_bernoulli_oracle(12).unwrap();
}

#[test]
fn egf_product_reproduces_frobenius_euler_numbers() {
    common::egf_frobenius_euler_oracle(8).unwrap();
}

#[test]
fn egf_product_reproduces_frobenius_euler_polynomials() {
    common::egf_frobenius_euler_poly_oracle(8).unwrap();
}
