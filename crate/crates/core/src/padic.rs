//! Capped-precision p-adic numbers, Volkenborn sums and the p-adic side of
//! the `(h,q)`-Bernoulli and Dedekind-type constructions (twist `zeta = 1`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::arith::scalar::{factorial, fract, gcd_i64};
use crate::arith::{int, rat, Poly, Rational};
use crate::classical::bernoulli_poly;
use crate::error::{Error, Result};
use crate::hq::{dedekind_frac, poly_frac};

/// `p^val * unit + O(p^prec)`; zero is stored as `unit = 0`, `val = prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: i64,
}

fn ppow(p: u64, e: i64) -> BigInt {
    assert!(e >= 0, "negative exponent");
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `(v_p(n), n / p^{v_p(n)})` for `n != 0`.
fn split_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    (v, n)
}

fn ipow(b: i64, e: u64) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(b), e as usize))
}

fn qpow(q: &Rational, e: i64) -> Result<Rational> {
    crate::arith::Scalar::powi(q, e)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadModulus(format!("{p} is not an odd prime")));
    }
    Ok(())
}

impl PAdic {
    pub fn zero(p: u64, prec: i64) -> Self {
        PAdic { p, val: prec, unit: BigInt::zero(), prec }
    }

    fn normalize(p: u64, v0: i64, x: BigInt, prec: i64) -> Self {
        if prec <= v0 {
            return Self::zero(p, prec);
        }
        let x = x.mod_floor(&ppow(p, prec - v0));
        if x.is_zero() {
            return Self::zero(p, prec);
        }
        let (k, u) = split_p(&x, p);
        PAdic { p, val: v0 + k, unit: u, prec }
    }

    pub fn from_rational(r: &Rational, p: u64, prec: i64) -> Self {
        if r.is_zero() {
            return Self::zero(p, prec);
        }
        let (a, num) = split_p(r.numer(), p);
        let (b, den) = split_p(r.denom(), p);
        let val = a - b;
        if prec <= val {
            return Self::zero(p, prec);
        }
        let m = ppow(p, prec - val);
        let inv = den.modinv(&m).expect("denominator is a unit");
        PAdic { p, val, unit: (num * inv).mod_floor(&m), prec }
    }

    pub fn from_int(n: i64, p: u64, prec: i64) -> Self {
        Self::from_rational(&int(n), p, prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Equals the precision for a value indistinguishable from zero.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Absolute precision: the value is known modulo `p^precision`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn with_precision(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalize(self.p, self.val, self.unit.clone(), prec)
    }

    /// Representative in `[0, p^prec)` when the valuation is nonnegative.
    pub fn residue(&self) -> Option<BigInt> {
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * ppow(self.p, self.val))
    }

    fn same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic numbers over different primes");
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let rel = self.prec - self.val;
        let unit = self.unit.modinv(&ppow(self.p, rel)).expect("unit");
        Ok(PAdic { p: self.p, val: -self.val, unit, prec: rel - self.val })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PAdic::from_int(1, self.p, self.prec.max(0) + e as i64 * self.val.abs() + 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "valuation": self.val,
            "unit": self.unit.to_string(),
            "precision": self.prec,
        })
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.prec);
        }
        match self.val {
            0 => write!(f, "{} + O({}^{})", self.unit, self.p, self.prec),
            v => write!(f, "{}*{}^{} + O({}^{})", self.unit, self.p, v, self.p, self.prec),
        }
    }
}

impl Add<&PAdic> for &PAdic {
    type Output = PAdic;
    fn add(self, rhs: &PAdic) -> PAdic {
        self.same_prime(rhs);
        let prec = self.prec.min(rhs.prec);
        let v0 = self.val.min(rhs.val).min(prec);
        let lift = |x: &PAdic| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                &x.unit * ppow(x.p, x.val - v0)
            }
        };
        PAdic::normalize(self.p, v0, lift(self) + lift(rhs), prec)
    }
}

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.prec - self.val);
        PAdic { unit: &m - &self.unit, ..self.clone() }
    }
}

impl Sub<&PAdic> for &PAdic {
    type Output = PAdic;
    fn sub(self, rhs: &PAdic) -> PAdic {
        self + &(-rhs)
    }
}

impl Mul<&PAdic> for &PAdic {
    type Output = PAdic;
    fn mul(self, rhs: &PAdic) -> PAdic {
        self.same_prime(rhs);
        let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
        if self.is_zero() || rhs.is_zero() {
            return PAdic::zero(self.p, prec);
        }
        let val = self.val + rhs.val;
        PAdic::normalize(self.p, val, &self.unit * &rhs.unit, prec)
    }
}

/// The `(p-1)`-st root of unity congruent to `a` mod `p`.
pub fn teichmuller(a: i64, p: u64, prec: i64) -> Result<PAdic> {
    check_odd_prime(p)?;
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime(a, p as i64));
    }
    let m = ppow(p, prec);
    let mut x = BigInt::from(a).mod_floor(&m);
    for _ in 0..prec {
        x = x.modpow(&BigInt::from(p), &m);
    }
    Ok(PAdic::normalize(p, 0, x, prec))
}

/// `omega^i` as a character mod `p` with values in `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TeichmullerCharacter {
    pub p: u64,
    pub power: u64,
}

impl TeichmullerCharacter {
    pub fn new(p: u64, power: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(TeichmullerCharacter { p, power: power % (p - 1) })
    }

    pub fn eval(&self, a: i64, prec: i64) -> PAdic {
        match teichmuller(a, self.p, prec) {
            Ok(w) => w.pow(self.power),
            Err(_) => PAdic::zero(self.p, prec),
        }
    }
}

/// Iwasawa logarithm on `1 + pZ_p`.
pub fn padic_log(x: &PAdic) -> Result<PAdic> {
    let p = x.p;
    let one = PAdic::from_int(1, p, x.prec);
    let y = x - &one;
    if x.val != 0 || y.val < 1 {
        return Err(Error::OutOfDomain(format!("log_p needs x = 1 mod {p}, got {x}")));
    }
    let target = x.prec;
    if y.is_zero() {
        return Ok(PAdic::zero(p, target));
    }
    let v = y.val;
    let mut acc = PAdic::zero(p, target);
    let mut power = y.clone();
    let mut k: i64 = 1;
    loop {
        let ilog = (k as f64).log(p as f64).floor() as i64;
        if k * v - ilog >= target {
            break;
        }
        let kk = PAdic::from_int(k, p, target + ilog + 1);
        let term = power.div(&kk)?;
        acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
        power = &power * &y;
        k += 1;
    }
    Ok(acc.with_precision(target))
}

/// `exp(x)` for `v_p(x) >= 1`.
pub fn padic_exp(x: &PAdic) -> Result<PAdic> {
    let p = x.p;
    if x.val < 1 {
        return Err(Error::OutOfDomain(format!("exp_p needs v_p(x) >= 1, got {x}")));
    }
    let target = x.prec;
    let mut acc = PAdic::from_int(1, p, target);
    if x.is_zero() {
        return Ok(acc);
    }
    let mut term = PAdic::from_int(1, p, target + 64);
    let mut k: i64 = 1;
    loop {
        if k * x.val - (k - 1) / (p as i64 - 1) >= target {
            break;
        }
        term = (&term * x).div(&PAdic::from_int(k, p, target + 64))?;
        acc = &acc + &term;
        k += 1;
    }
    Ok(acc)
}

/// `C(s, k)` for `s` in `Z_p`.
fn padic_binomial(s: &PAdic, k: u64) -> Result<PAdic> {
    let p = s.p;
    let big = s.prec + 64;
    let mut acc = PAdic::from_int(1, p, big);
    for i in 0..k {
        acc = &acc * &(s - &PAdic::from_int(i as i64, p, big));
    }
    let fact = PAdic::from_rational(&Rational::from_integer(factorial(k)), p, big);
    acc.div(&fact)
}

/// `q^{hx} poly(x)` on `Z_p`, with `q = 1 mod p`.
#[derive(Clone, Debug)]
pub struct VolkenbornIntegrand {
    pub poly: Poly<Rational>,
    pub q: PAdic,
    pub h: i64,
}

/// Level-`N` sum `p^{-N} sum_{x<p^N} g(x)`; with `weighted` the sum is
/// `sum g(x) q^x / [p^N]_q` instead.
pub fn volkenborn(g: &VolkenbornIntegrand, level: u32, weighted: bool) -> Result<PAdic> {
    let p = g.q.p;
    check_odd_prime(p)?;
    let one = PAdic::from_int(1, p, g.q.prec);
    if g.q.val != 0 || (&g.q - &one).val < 1 {
        return Err(Error::OutOfDomain(format!("q = {} is not 1 mod {p}", g.q)));
    }
    let w = g.q.prec;
    let m = ppow(p, w);
    let qq = g.q.residue().expect("unit");
    let qh = if g.h >= 0 {
        qq.modpow(&BigInt::from(g.h), &m)
    } else {
        qq.modinv(&m).expect("unit").modpow(&BigInt::from(-g.h), &m)
    };
    let step = if weighted { (&qh * &qq).mod_floor(&m) } else { qh };
    let deg = g.poly.degree().unwrap_or(0);
    let count = num_traits::pow(BigInt::from(p), level as usize).to_u64().expect("level fits");
    let mut sums = vec![BigInt::zero(); deg + 1];
    let mut weight_sum = BigInt::zero();
    let mut qx = BigInt::one();
    let mut qplain = BigInt::one();
    for x in 0..count {
        let bx = BigInt::from(x);
        let mut xi = qx.clone();
        for s in sums.iter_mut() {
            *s += &xi;
            xi = (xi * &bx).mod_floor(&m);
        }
        if weighted {
            weight_sum += &qplain;
            qplain = (qplain * &qq).mod_floor(&m);
        }
        qx = (qx * &step).mod_floor(&m);
    }
    let mut total = PAdic::zero(p, w);
    for (i, c) in g.poly.coeffs().iter().enumerate() {
        let s = PAdic::normalize(p, 0, sums[i].clone(), w);
        total = &total + &(&PAdic::from_rational(c, p, w + 64) * &s);
    }
    let norm = if weighted {
        PAdic::normalize(p, 0, weight_sum, w)
    } else {
        PAdic::from_rational(&Rational::from_integer(BigInt::from(count)), p, w + 64)
    };
    total.div(&norm)
}

fn check_q(q: &Rational, p: u64) -> Result<()> {
    let d = q - int(1);
    let ok = !(q.denom() % BigInt::from(p)).is_zero() && (d.is_zero() || split_p(d.numer(), p).0 >= 1);
    if !ok {
        return Err(Error::OutOfDomain(format!("q = {q} is not in 1 + {p}Z_{p}")));
    }
    Ok(())
}

/// p-adic evaluation of `B^{(h)}_n(x, q)` (`zeta = 1`) at a rational `q` in `1 + pZ_(p)`.
#[derive(Clone, Debug)]
pub struct HqEvaluator {
    p: u64,
    h: i64,
    q: Rational,
}

impl HqEvaluator {
    pub fn new(h: i64, q: &Rational, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        check_q(q, p)?;
        if h == 0 && !q.is_one() {
            return Err(Error::DegenerateParams("q^h = 1 for h = 0".into()));
        }
        Ok(HqEvaluator { p, h, q: q.clone() })
    }

    /// `q = 1` leaves `t/(e^t - 1)`.
    fn classical(&self) -> bool {
        self.q.is_one()
    }

    pub fn log_q(&self, prec: i64) -> Result<PAdic> {
        padic_log(&PAdic::from_rational(&self.q, self.p, prec))
    }

    /// `c + L l` with `L = log_p q`, to absolute precision `prec`.
    fn combine(&self, c: &Rational, l: &Rational, prec: i64) -> Result<PAdic> {
        let base = PAdic::from_rational(c, self.p, prec);
        if l.is_zero() {
            return Ok(base);
        }
        let vl = PAdic::from_rational(l, self.p, prec + 64).valuation();
        let log = self.log_q(prec - vl.min(0) + 1)?;
        Ok((&base + &(&log * &PAdic::from_rational(l, self.p, prec + 64))).with_precision(prec))
    }

    pub fn number(&self, n: usize, prec: i64) -> Result<PAdic> {
        self.poly(n, &Rational::zero(), prec)
    }

    pub fn poly(&self, n: usize, x: &Rational, prec: i64) -> Result<PAdic> {
        if self.classical() {
            return Ok(PAdic::from_rational(&bernoulli_poly(n, x), self.p, prec));
        }
        let (c, l) = poly_frac(n, x, self.h).eval(&qpow(&self.q, self.h)?)?;
        self.combine(&c, &l, prec)
    }

    /// `s^{(h)}_m(a, b : q) = sum_{j<b} (j/b) B^{(h)}_m({ja/b}, q)`.
    pub fn dedekind(&self, m: usize, a: i64, b: i64, prec: i64) -> Result<PAdic> {
        if self.classical() {
            if gcd_i64(a, b) != 1 {
                return Err(Error::NotCoprime(a, b));
            }
            let mut acc = Rational::zero();
            for j in 1..b {
                acc += rat(j, b) * bernoulli_poly(m, &fract(&rat(j * a, b)));
            }
            return Ok(PAdic::from_rational(&acc, self.p, prec));
        }
        let (c, l) = dedekind_frac(m, a, b, self.h)?.eval(&qpow(&self.q, self.h)?)?;
        self.combine(&c, &l, prec)
    }
}

/// Values computed two ways and their difference.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicResidual {
    pub lhs: PAdic,
    pub rhs: PAdic,
    pub residual: PAdic,
}

impl PadicResidual {
    fn new(lhs: PAdic, rhs: PAdic) -> Self {
        let residual = &lhs - &rhs;
        PadicResidual { lhs, rhs, residual }
    }

    pub fn valuation(&self) -> i64 {
        self.residual.valuation()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "residual": self.residual.to_json(),
            "valuation": self.valuation(),
        })
    }
}

/// Extra digits carried through lossy steps.
const GUARD: i64 = 8;

/// `int_{Z_p} q^{hx} x^n dmu_1` at level `N` against `B^{(h)}_n(q)`.
pub fn witt_residual(n: usize, h: i64, q: &Rational, p: u64, level: u32) -> Result<PadicResidual> {
    let eval = HqEvaluator::new(h, q, p)?;
    let target = level as i64 + GUARD;
    let g = VolkenbornIntegrand {
        poly: Poly::monomial(int(1), n),
        q: PAdic::from_rational(q, p, target + level as i64),
        h,
    };
    let lhs = volkenborn(&g, level, false)?;
    let rhs = eval.number(n, target)?;
    Ok(PadicResidual::new(lhs, rhs))
}

fn check_dedekind(a: i64, b: i64, p: u64) -> Result<()> {
    check_odd_prime(p)?;
    if b <= 0 || b % p as i64 != 0 {
        return Err(Error::BadModulus(format!("{p} does not divide b = {b}")));
    }
    if gcd_i64(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    Ok(())
}

/// `s^{(h)}_{m,1}(a, b : q)` in `Q_p` to absolute precision `prec`.
pub fn padic_dedekind(m: usize, a: i64, b: i64, h: i64, q: &Rational, p: u64, prec: i64) -> Result<PAdic> {
    check_dedekind(a, b, p)?;
    if prec < 1 {
        return Err(Error::PrecisionExhausted(format!("requested precision {prec}")));
    }
    HqEvaluator::new(h, q, p)?.dedekind(m, a, b, prec)
}

/// `omega^{-1}(j) (<j>^s / b) sum_{k<=K} C(s,k) (b/j)^k B_k`, for given `B_k`.
fn interpolant_with(s: &PAdic, j: i64, b: i64, numbers: &[PAdic]) -> Result<PAdic> {
    let p = s.p;
    if j.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime(j, p as i64));
    }
    if b % p as i64 != 0 {
        return Err(Error::BadModulus(format!("{p} does not divide b = {b}")));
    }
    let work = s.prec + GUARD;
    let omega_inv = teichmuller(j, p, work)?.inv()?;
    let jj = PAdic::from_int(j, p, work + 64);
    let bracket = &jj * &omega_inv;
    let power = padic_exp(&(s * &padic_log(&bracket)?))?;
    let ratio = PAdic::from_rational(&rat(b, j), p, work + 64);
    let mut sum = PAdic::zero(p, work + 64);
    let mut rk = PAdic::from_int(1, p, work + 64);
    for (k, bk) in numbers.iter().enumerate() {
        sum = &sum + &(&(&padic_binomial(s, k as u64)? * &rk) * bk);
        rk = &rk * &ratio;
    }
    let inv_b = PAdic::from_int(b, p, work + 64).inv()?;
    Ok(&(&(&omega_inv * &power) * &inv_b) * &sum)
}

/// `T^{(h)}(s; j, b : q)` with the series cut after `k = K`.
pub fn interpolant_t(s: &PAdic, j: i64, b: i64, h: i64, q: &Rational, k_max: usize) -> Result<PAdic> {
    let eval = HqEvaluator::new(h, q, s.p)?;
    let numbers: Vec<PAdic> =
        (0..=k_max).map(|k| eval.number(k, s.prec + GUARD)).collect::<Result<_>>()?;
    interpolant_with(s, j, b, &numbers)
}

fn check_congruence(m: usize, p: u64) -> Result<()> {
    if (m as i64 + 1) % (p as i64 - 1) != 0 {
        return Err(Error::CongruenceViolation(m as i64 + 1, p as i64 - 1));
    }
    Ok(())
}

/// `sum_{j<b} j T(m; (aj)_b, b : q)` against `b^m s^{(h)}_m(a, b : q)`.
/// Residues `(aj)_b` divisible by `p` lie outside the domain of `T`; their
/// terms use the interpolated value `b^{m-1} B^{(h)}_m((aj)_b / b, q)` directly.
#[allow(clippy::too_many_arguments)]
pub fn th13_residual(
    m: usize,
    a: i64,
    b: i64,
    h: i64,
    q: &Rational,
    p: u64,
    prec: i64,
    k_max: usize,
) -> Result<PadicResidual> {
    check_congruence(m, p)?;
    check_dedekind(a, b, p)?;
    let eval = HqEvaluator::new(h, q, p)?;
    let work = prec + GUARD;
    let numbers: Vec<PAdic> = (0..=k_max).map(|k| eval.number(k, work)).collect::<Result<_>>()?;
    let s = PAdic::from_int(m as i64, p, work);
    let bm1 = PAdic::from_rational(&ipow(b, m as u64 - 1), p, work + 64);
    let mut lhs = PAdic::zero(p, work);
    for j in 1..b {
        let r = (a * j).rem_euclid(b);
        let t = if r % p as i64 == 0 {
            &bm1 * &eval.poly(m, &rat(r, b), work)?
        } else {
            interpolant_with(&s, r, b, &numbers)?
        };
        lhs = &lhs + &(&PAdic::from_int(j, p, work + 64) * &t);
    }
    let bm = PAdic::from_rational(&ipow(b, m as u64), p, work + 64);
    let rhs = &bm * &padic_dedekind(m, a, b, h, q, p, prec)?;
    Ok(PadicResidual::new(lhs.with_precision(prec.max(1) + GUARD), rhs))
}

/// `B^{(h)}_{n,chi}(x, q) = f^{n-1} sum_{j=1}^{f} chi(j) q^{hj} B^{(h)}_n((j+x)/f, q^f)` for `chi = omega^i`.
pub fn hq_char_padic(
    n: usize,
    x: &Rational,
    h: i64,
    q: &Rational,
    chi: &TeichmullerCharacter,
    prec: i64,
) -> Result<PAdic> {
    let p = chi.p;
    let f = p as i64;
    let inner = HqEvaluator::new(h, &qpow(q, f)?, p)?;
    let work = prec + GUARD;
    let mut acc = PAdic::zero(p, work);
    for j in 1..=f {
        let c = chi.eval(j, work);
        if c.is_zero() {
            continue;
        }
        let qhj = PAdic::from_rational(&qpow(q, h * j)?, p, work + 64);
        let b = inner.poly(n, &((x + int(j)) / int(f)), work)?;
        acc = &acc + &(&(&c * &qhj) * &b);
    }
    let scale = PAdic::from_rational(&qpow(&int(f), n as i64 - 1)?, p, work + 64);
    Ok((&acc * &scale).with_precision(prec))
}

/// `sum_{j<fb} j chi(j) T_chi(m; (aj)_b, b : q)` against `f b^m s^{(h)}_m(a, b : q, chi)`
/// for `chi = omega^i` of conductor `f = p`.
#[allow(clippy::too_many_arguments)]
pub fn th19_residual(
    m: usize,
    a: i64,
    b: i64,
    h: i64,
    q: &Rational,
    p: u64,
    prec: i64,
    k_max: usize,
    power: u64,
) -> Result<PadicResidual> {
    check_congruence(m, p)?;
    check_dedekind(a, b, p)?;
    let chi = TeichmullerCharacter::new(p, power)?;
    let f = p as i64;
    let work = prec + GUARD;
    let numbers: Vec<PAdic> = (0..=k_max)
        .map(|k| hq_char_padic(k, &Rational::zero(), h, q, &chi, work))
        .collect::<Result<_>>()?;
    let s = PAdic::from_int(m as i64, p, work);
    let mut lhs = PAdic::zero(p, work);
    let mut sum = PAdic::zero(p, work);
    for j in 1..f * b {
        let c = chi.eval(j, work);
        if c.is_zero() {
            continue;
        }
        let r = (a * j).rem_euclid(b);
        let t = interpolant_with(&s, r, b, &numbers)?;
        lhs = &lhs + &(&(&PAdic::from_int(j, p, work + 64) * &c) * &t);
        let bx = hq_char_padic(m, &rat(r, b), h, q, &chi, work)?;
        sum = &sum + &(&(&c * &PAdic::from_rational(&rat(j, f * b), p, work + 64)) * &bx);
    }
    let fbm = PAdic::from_rational(&(int(f) * ipow(b, m as u64)), p, work + 64);
    Ok(PadicResidual::new(lhs.with_precision(work), (&fbm * &sum).with_precision(work)))
}

/// `v_p(n)` for a positive integer.
pub fn valuation_of(n: u64, p: u64) -> i64 {
    split_p(&BigInt::from(n), p).0
}
