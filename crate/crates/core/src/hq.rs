//! Twisted `(h,q)`-Bernoulli numbers and polynomials as exact elements of
//! `Q(zeta)(q)[L]`, where `L` is a formal symbol for `log q`.
//!
//! Every object here is a rational function of `w = zeta q^h` alone, so the
//! work happens in `Q(w)[L]` and `w = zeta q^h` is substituted at the end.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Map, Value};

use crate::arith::scalar::{fract, gcd_i64, pascal};
use crate::arith::{int, rat, Cyclotomic, Poly, QRationalFunction, RatFunc, Rational, Scalar};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// Polynomial in `L` with rational-function coefficients; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly<F> {
    coeffs: BTreeMap<usize, RatFunc<F>>,
}

/// `LogPoly` over `Q(zeta)(q)`.
pub type LogPolynomial = LogPoly<Cyclotomic>;

impl<F: Scalar> LogPoly<F> {
    pub fn zero() -> Self {
        LogPoly { coeffs: BTreeMap::new() }
    }

    pub fn from_map(coeffs: BTreeMap<usize, RatFunc<F>>) -> Self {
        LogPoly { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn constant(c: RatFunc<F>) -> Self {
        Self::from_map(BTreeMap::from([(0, c)]))
    }

    /// The symbol `L` itself.
    pub fn log() -> Self {
        Self::from_map(BTreeMap::from([(1, RatFunc::one())]))
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, RatFunc<F>> {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> RatFunc<F> {
        self.coeffs.get(&d).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn log_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, r: &RatFunc<F>) -> Self {
        Self::from_map(self.coeffs.iter().map(|(&d, c)| (d, c.clone() * r)).collect())
    }

    /// `L -> c L`.
    pub fn rescale_log(&self, c: &Rational) -> Self {
        Self::from_map(
            self.coeffs
                .iter()
                .map(|(&d, v)| (d, v.scale(&Scalar::pow(c, d as u64))))
                .collect(),
        )
    }

    /// `q -> q^e` together with `L -> e L`.
    pub fn substitute_power(&self, e: usize) -> Self {
        Self::from_map(self.coeffs.iter().map(|(&d, c)| (d, c.substitute(e))).collect())
            .rescale_log(&int(e as i64))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})*L"),
                _ => format!("({c})*L^{d}"),
            })
            .collect();
        parts.join(" + ")
    }

    /// `{"<L degree>": "<rational function of q>"}`.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| (d.to_string(), Value::String(c.render())))
            .collect();
        Value::Object(map)
    }
}

impl<F: Scalar> fmt::Display for LogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Scalar> Add<&LogPoly<F>> for LogPoly<F> {
    type Output = LogPoly<F>;
    fn add(mut self, rhs: &LogPoly<F>) -> LogPoly<F> {
        for (&d, c) in &rhs.coeffs {
            let sum = self.coeff(d) + c;
            self.coeffs.insert(d, sum);
        }
        LogPoly::from_map(self.coeffs)
    }
}

impl<F: Scalar> Sub<&LogPoly<F>> for LogPoly<F> {
    type Output = LogPoly<F>;
    fn sub(self, rhs: &LogPoly<F>) -> LogPoly<F> {
        self + &(-rhs.clone())
    }
}

impl<F: Scalar> Neg for LogPoly<F> {
    type Output = LogPoly<F>;
    fn neg(self) -> LogPoly<F> {
        LogPoly { coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect() }
    }
}

impl<F: Scalar> Mul<&LogPoly<F>> for LogPoly<F> {
    type Output = LogPoly<F>;
    fn mul(self, rhs: &LogPoly<F>) -> LogPoly<F> {
        let mut out: BTreeMap<usize, RatFunc<F>> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                let term = a.clone() * b;
                let acc = out.remove(&(i + j)).unwrap_or_else(RatFunc::zero);
                out.insert(i + j, acc + &term);
            }
        }
        LogPoly::from_map(out)
    }
}

/// Shift `h` and twist `zeta`; `zeta` must be a root of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct HqParams {
    pub h: i64,
    pub zeta: Cyclotomic,
}

impl HqParams {
    pub fn new(h: i64, zeta: Cyclotomic) -> Result<Self> {
        let p = HqParams { h, zeta };
        p.validate()?;
        Ok(p)
    }

    pub fn untwisted(h: i64) -> Result<Self> {
        Self::new(h, Cyclotomic::one())
    }

    fn validate(&self) -> Result<()> {
        if self.zeta.is_zero() || self.zeta.pow(self.zeta.conductor()) != Cyclotomic::one() {
            return Err(Error::invalid(format!("{} is not a root of unity", self.zeta)));
        }
        if self.h == 0 && self.zeta.is_one() {
            return Err(Error::DegenerateParams("zeta q^h = 1 for zeta = 1, h = 0".into()));
        }
        Ok(())
    }

    /// Parameters of the inner objects after `q -> q^m`, `zeta -> zeta^m`.
    fn power(&self, m: u64) -> Result<Self> {
        let p = HqParams { h: self.h, zeta: self.zeta.pow(m) };
        if p.h == 0 && p.zeta.is_one() {
            return Err(Error::DegenerateParams(format!("zeta^{m} = 1 with h = 0")));
        }
        Ok(p)
    }
}

/// `(num[0] + L num[1]) / den` in the variable `w`.
#[derive(Clone, Debug)]
pub(crate) struct WFrac<F> {
    pub(crate) num: [Poly<F>; 2],
    pub(crate) den: Poly<F>,
}

impl<F: Scalar> WFrac<F> {
    pub(crate) fn to_log_poly(&self) -> Result<LogPoly<F>> {
        let mut out = BTreeMap::new();
        for (d, num) in self.num.iter().enumerate() {
            if !num.is_zero() {
                out.insert(d, RatFunc::new(num.clone(), self.den.clone())?);
            }
        }
        Ok(LogPoly::from_map(out))
    }

    /// Value at a concrete `w`, as `(constant part, coefficient of L)`.
    pub(crate) fn eval(&self, w: &F) -> Result<(F, F)> {
        let den = self.den.eval(w);
        if den.is_zero() {
            return Err(Error::pole("w = zeta q^h hits a pole"));
        }
        Ok((self.num[0].eval(w).div(&den)?, self.num[1].eval(w).div(&den)?))
    }
}

fn rat_poly(c: &[Rational]) -> Poly<Rational> {
    Poly::new(c.to_vec())
}

/// `(w^m - 1)^e`.
fn wm1_pow(m: usize, e: usize) -> Poly<Rational> {
    let mut c = vec![Rational::zero(); m + 1];
    c[0] = int(-1);
    c[m] = int(1);
    rat_poly(&c).pow(e as u32)
}

fn w() -> Poly<Rational> {
    Poly::x()
}

/// Numerators `[A_k, C_k]` with `B_k = (A_k + L C_k)/(w-1)^{k+1}` from
/// `B_0 = hL/(w-1)` and `(w-1) B_n = delta_{n1} - w sum_{k<n} C(n,k) B_k`.
fn number_numerators(n_max: usize, h: i64) -> Vec<[Poly<Rational>; 2]> {
    let binom = pascal(n_max);
    let wm1 = wm1_pow(1, 1);
    let mut out: Vec<[Poly<Rational>; 2]> = vec![[Poly::zero(), Poly::constant(int(h))]];
    for n in 1..=n_max {
        let mut next = [Poly::zero(), Poly::zero()];
        for (d, slot) in next.iter_mut().enumerate() {
            let mut s = Poly::zero();
            for (k, prev) in out.iter().enumerate() {
                s = &s + &(&prev[d] * &wm1.pow((n - 1 - k) as u32)).scale(&binom[n][k]);
            }
            let mut v = -(&w() * &s);
            if n == 1 && d == 0 {
                v = &v + &wm1;
            }
            *slot = v;
        }
        out.push(next);
    }
    out
}

/// `B_n(x)` in the variable `w` over the denominator `(w-1)^{n+1}`.
pub(crate) fn poly_frac(n: usize, x: &Rational, h: i64) -> WFrac<Rational> {
    let nums = number_numerators(n, h);
    let binom = pascal(n);
    let wm1 = wm1_pow(1, 1);
    let mut num = [Poly::zero(), Poly::zero()];
    for (k, nk) in nums.iter().enumerate() {
        let c = &binom[n][k] * Scalar::pow(x, (n - k) as u64);
        let shift = wm1.pow((n - k) as u32);
        for d in 0..2 {
            num[d] = &num[d] + &(&nk[d] * &shift).scale(&c);
        }
    }
    WFrac { num, den: wm1_pow(1, n + 1) }
}

/// Substitutes `w = zeta q^h` into a reduced fraction of `w`.
fn substitute_twist<F: Scalar>(
    r: &RatFunc<F>,
    p: &HqParams,
    lift: &impl Fn(&F) -> Cyclotomic,
) -> Result<QRationalFunction> {
    let lift_eval = |poly: &Poly<F>| {
        poly.coeffs()
            .iter()
            .rev()
            .fold(Cyclotomic::zero(), |acc, c| acc * &p.zeta + &lift(c))
    };
    if p.h == 0 {
        let den = lift_eval(r.denominator());
        if den.is_zero() {
            return Err(Error::DegenerateParams("denominator vanishes at w = zeta".into()));
        }
        return Ok(RatFunc::from_poly(Poly::constant(lift_eval(r.numerator()).div(&den)?)));
    }
    let e = p.h.unsigned_abs() as usize;
    let spread = |poly: &Poly<F>| -> Poly<Cyclotomic> {
        let deg = poly.degree().unwrap_or(0);
        let mut c = vec![Cyclotomic::zero(); deg * e + 1];
        let mut z = Cyclotomic::one();
        for (i, ci) in poly.coeffs().iter().enumerate() {
            let pos = if p.h > 0 { i * e } else { (deg - i) * e };
            c[pos] = lift(ci) * &z;
            z = z * &p.zeta;
        }
        Poly::new(c)
    };
    let mut num = spread(r.numerator());
    let mut den = spread(r.denominator());
    if p.h < 0 && !num.is_zero() {
        let dn = r.numerator().degree().unwrap_or(0);
        let dd = r.denominator().degree().unwrap_or(0);
        if dd > dn {
            num = num.shift((dd - dn) * e);
        } else {
            den = den.shift((dn - dd) * e);
        }
    }
    RatFunc::from_coprime(num, den)
}

fn to_q<F: Scalar>(frac: &WFrac<F>, p: &HqParams, lift: impl Fn(&F) -> Cyclotomic) -> Result<LogPolynomial> {
    let reduced = frac.to_log_poly()?;
    let mut out = BTreeMap::new();
    for (&d, c) in reduced.coeffs() {
        out.insert(d, substitute_twist(c, p, &lift)?);
    }
    Ok(LogPoly::from_map(out))
}

fn lift_rational(r: &Rational) -> Cyclotomic {
    Cyclotomic::rational(r.clone())
}

/// `B^{(h)}_{n,zeta}(q)`: the `n`-th EGF coefficient of `(hL + t)/(zeta q^h e^t - 1)`.
pub fn hq_bernoulli_number(n: usize, p: &HqParams) -> Result<LogPolynomial> {
    hq_bernoulli_poly(n, &Rational::zero(), p)
}

/// `B^{(h)}_{n,zeta}(x, q) = sum_k C(n,k) B^{(h)}_{k,zeta}(q) x^{n-k}`.
pub fn hq_bernoulli_poly(n: usize, x: &Rational, p: &HqParams) -> Result<LogPolynomial> {
    p.validate()?;
    to_q(&poly_frac(n, x, p.h), p, lift_rational)
}

fn embed(poly: &Poly<Rational>) -> Poly<Cyclotomic> {
    poly.map(lift_rational)
}

/// `f^{n-1} sum_{j=1}^{f} chi(j) w^j B_n((j+x)/f)(w^f)` with `L -> fL`,
/// over the denominator `(w^f - 1)^{n+1}`.
pub(crate) fn char_frac(n: usize, x: &Rational, h: i64, chi: &DirichletCharacter) -> WFrac<Cyclotomic> {
    let f = chi.modulus();
    let fr = int(f as i64);
    let scale = if n == 0 { fr.recip() } else { Scalar::pow(&fr, n as u64 - 1) };
    let mut num = [Poly::zero(), Poly::zero()];
    for j in 1..=f {
        let c = chi.eval(j as i64);
        if c.is_zero() {
            continue;
        }
        let inner = poly_frac(n, &((x + int(j as i64)) / &fr), h);
        for d in 0..2 {
            let part = embed(&inner.num[d].substitute_power(f as usize))
                .shift(j as usize)
                .scale(&c.scale(&(&scale * Scalar::pow(&fr, d as u64))));
            num[d] = &num[d] + &part;
        }
    }
    WFrac { num, den: embed(&wm1_pow(f as usize, n + 1)) }
}

/// `B^{(h)}_{n,zeta,chi}(x, q) = f^{n-1} sum_{j=1}^{f} chi(j) zeta^j q^{hj} B^{(h)}_{n,zeta^f}((j+x)/f, q^f)`.
pub fn hq_bernoulli_char(
    n: usize,
    x: Option<&Rational>,
    p: &HqParams,
    chi: &DirichletCharacter,
) -> Result<LogPolynomial> {
    p.validate()?;
    p.power(chi.modulus())?;
    let zero = Rational::zero();
    to_q(&char_frac(n, x.unwrap_or(&zero), p.h, chi), p, Cyclotomic::clone)
}

/// Both sides of an identity in `Q(zeta)(q)[L]` and their difference.
#[derive(Clone, Debug, PartialEq)]
pub struct LogResidual {
    pub lhs: LogPolynomial,
    pub rhs: LogPolynomial,
    pub residual: LogPolynomial,
}

impl LogResidual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "residual": self.residual.to_json(),
        })
    }
}

/// `B^{(h)}_{n,zeta}(x,q)` against
/// `m^{n-1} sum_{a<m} zeta^a q^{ha} B^{(h)}_{n,zeta^m}((a+x)/m, q^m)`.
pub fn distribution_residual(n: usize, x: &Rational, p: &HqParams, m: u64) -> Result<LogResidual> {
    p.validate()?;
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    p.power(m)?;
    let mu = m as usize;
    let lhs = poly_frac(n, x, p.h);
    let mr = int(m as i64);
    let scale = if n == 0 { mr.recip() } else { Scalar::pow(&mr, n as u64 - 1) };
    let mut rhs = [Poly::zero(), Poly::zero()];
    for a in 0..mu {
        let inner = poly_frac(n, &((x + int(a as i64)) / &mr), p.h);
        for d in 0..2 {
            let part = inner.num[d]
                .substitute_power(mu)
                .shift(a)
                .scale_rational(&(&scale * Scalar::pow(&mr, d as u64)));
            rhs[d] = &rhs[d] + &part;
        }
    }
    let den = wm1_pow(mu, n + 1);
    // (w^m - 1)/(w - 1) = 1 + w + ... + w^{m-1}
    let lift = rat_poly(&vec![int(1); mu]).pow(n as u32 + 1);
    let lhs_scaled = [&lhs.num[0] * &lift, &lhs.num[1] * &lift];
    let residual = WFrac { num: [&lhs_scaled[0] - &rhs[0], &lhs_scaled[1] - &rhs[1]], den: den.clone() };
    let rhs = WFrac { num: rhs, den };
    Ok(LogResidual {
        lhs: to_q(&lhs, p, lift_rational)?,
        rhs: to_q(&rhs, p, lift_rational)?,
        residual: to_q(&residual, p, lift_rational)?,
    })
}

/// `zeta q^h (B + 1)^n - B_n - delta_{n1}` computed in `Q(zeta)(q)[L]`;
/// for `n = 0` the seed `hL` is subtracted instead.
pub fn recursion_residual(n: usize, p: &HqParams) -> Result<LogPolynomial> {
    let nums: Vec<LogPolynomial> = (0..=n).map(|k| hq_bernoulli_number(k, p)).collect::<Result<_>>()?;
    let binom = pascal(n);
    let mut sum = LogPoly::zero();
    for (k, b) in nums.iter().enumerate() {
        sum = sum + &b.scale(&RatFunc::from_poly(Poly::constant(Cyclotomic::rational(binom[n][k].clone()))));
    }
    let wq = if p.h >= 0 {
        RatFunc::from_poly(Poly::monomial(p.zeta.clone(), p.h as usize))
    } else {
        RatFunc::from_coprime(Poly::constant(p.zeta.clone()), Poly::monomial(Cyclotomic::one(), p.h.unsigned_abs() as usize))?
    };
    let mut out = sum.scale(&wq) - &nums[n];
    match n {
        0 => out = out - &LogPoly::log().scale(&RatFunc::from_int(p.h)),
        1 => out = out - &LogPoly::constant(RatFunc::one()),
        _ => {}
    }
    Ok(out)
}

/// `s^{(h)}_{m,zeta}(a, b : q) = sum_{j<b} (j/b) B^{(h)}_{m,zeta}({ja/b}, q)`.
pub fn hq_dedekind_formal(m: usize, a: i64, b: i64, p: &HqParams) -> Result<LogPolynomial> {
    p.validate()?;
    to_q(&dedekind_frac(m, a, b, p.h)?, p, lift_rational)
}

pub(crate) fn dedekind_frac(m: usize, a: i64, b: i64, h: i64) -> Result<WFrac<Rational>> {
    if b < 1 {
        return Err(Error::invalid(format!("b = {b} must be positive")));
    }
    if gcd_i64(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    let mut num = [Poly::zero(), Poly::zero()];
    for j in 1..b {
        let term = poly_frac(m, &fract(&rat(j * a, b)), h);
        for d in 0..2 {
            num[d] = &num[d] + &term.num[d].scale_rational(&rat(j, b));
        }
    }
    Ok(WFrac { num, den: wm1_pow(1, m + 1) })
}

/// Exact value at a rational `q != 1` with `zeta = 1`, split as
/// `(constant part, coefficient of log q)`.
pub fn hq_rational_parts(n: usize, x: &Rational, h: i64, q: &Rational) -> Result<(Rational, Rational)> {
    if h == 0 {
        return Err(Error::DegenerateParams("zeta q^h = 1 for zeta = 1, h = 0".into()));
    }
    let w = q.powi(h)?;
    poly_frac(n, x, h).eval(&w)
}
