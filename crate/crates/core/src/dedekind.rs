//! Classical Dedekind sums, the Frobenius-Euler Dedekind-type sums and the
//! residuals of their reciprocity laws.

use num_integer::Integer;
use serde_json::json;

use crate::arith::scalar::{fract, gcd_i64, is_integer, lcm_u64, pascal};
use crate::arith::{euler_phi, int, Cyclotomic, PowerAccumulator, Rational, Scalar};
use crate::barnes::BarnesSeries;
use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::classical::FrobeniusEuler;
use crate::error::{Error, Result};

/// Both sides of an identity; the identity holds iff `lhs == rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<F> {
    pub lhs: F,
    pub rhs: F,
}

impl<F: Scalar> Residual<F> {
    pub fn residual(&self) -> F {
        self.lhs.clone() - &self.rhs
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "residual": self.residual().to_json(),
        })
    }
}

/// `((x))`.
pub fn sawtooth(x: &Rational) -> Rational {
    if is_integer(x) {
        Rational::zero()
    } else {
        fract(x) - Rational::new(1.into(), 2.into())
    }
}

fn check_coprime(h: i64, k: i64) -> Result<()> {
    if k <= 0 {
        return Err(Error::invalid(format!("modulus k = {k} must be positive")));
    }
    if gcd_i64(h, k) != 1 {
        return Err(Error::NotCoprime(h, k));
    }
    Ok(())
}

/// `s(h, k) = sum_{a=1}^{k-1} ((a/k)) ((ha/k))`.
pub fn classical_dedekind(h: i64, k: i64) -> Result<Rational> {
    check_coprime(h, k)?;
    Ok((1..k).fold(Rational::zero(), |acc, a| {
        acc + sawtooth(&Rational::new(a.into(), k.into())) * sawtooth(&Rational::new((h * a).into(), k.into()))
    }))
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn nonzero_root<F: Scalar>(root: &F, k: u64) -> Result<F> {
    if root.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let u = root.pow(k);
    if u.is_one() {
        return Err(Error::pole(format!("root^{k} = 1")));
    }
    Ok(u)
}

fn sum_with_table<F: Scalar>(n: usize, h: i64, k: i64, root: &F, table: &FrobeniusEuler<F>) -> Result<F> {
    // root^{-ha} u^{floor(ha/k)} = root^{-(ha mod k)}
    let inv = root.inv()?;
    let inv_pows: Vec<F> = (0..k).map(|r| inv.pow(r as u64)).collect();
    let mut acc = F::zero();
    for a in 1..k {
        let r = (h * a).rem_euclid(k);
        let term = table.poly_at(n, &frac(r, k)) * &inv_pows[r as usize];
        acc = acc + &term.scale(&frac(a, k));
    }
    Ok(acc)
}

/// `S_{n, root^k}(h, k) = sum_{a<k} root^{-ha} (a/k) Hbar_n(ha/k, root^k)`.
pub fn fe_dedekind_sum<F: Scalar>(n: usize, h: i64, k: i64, root: &F) -> Result<F> {
    check_coprime(h, k)?;
    let u = nonzero_root(root, k as u64)?;
    let table = FrobeniusEuler::new(&u, n)?;
    sum_with_table(n, h, k, root, &table)
}

fn check_char_params(h: u64, k: u64, chi: &DirichletCharacter) -> Result<()> {
    if h == 0 || k == 0 {
        return Err(Error::invalid("h and k must be positive"));
    }
    check_coprime(h as i64, k as i64)?;
    if !(h * k).is_multiple_of(chi.modulus()) {
        return Err(Error::invalid(format!(
            "character modulus {} does not divide hk = {}",
            chi.modulus(),
            h * k
        )));
    }
    Ok(())
}

/// Character-independent weights at fixed `(n, h, k, u)`.
struct CharWeights {
    n: usize,
    h: u64,
    k: u64,
    u: Cyclotomic,
    /// `u^{-r} H_n(r/hk, u^{hk})` for `0 <= r < hk`.
    sums: Vec<Cyclotomic>,
}

impl CharWeights {
    fn new(n: usize, h: u64, k: u64, u: &Cyclotomic) -> Result<Self> {
        let hk = h * k;
        let big_u = nonzero_root(u, hk)?;
        let table = FrobeniusEuler::new(&big_u, n)?;
        let sums = inverse_powers(u, hk)?
            .into_iter()
            .enumerate()
            .map(|(r, p)| p * &table.poly_at(n, &frac(r as i64, hk as i64)))
            .collect();
        Ok(CharWeights { n, h, k, u: u.clone(), sums })
    }

    fn accumulator(&self, chi: &DirichletCharacter) -> (PowerAccumulator, u64) {
        let lambda = chi.value_conductor();
        let m = lcm_u64(self.u.conductor(), lambda);
        (PowerAccumulator::new(m), m / lambda)
    }

    /// `h^n sum_a sum_b chi(kb+ha) u^{-(kb+ha)} (a/k) Hbar_n(a/k + b/h, u^{hk})`;
    /// `u^{-m} Hbar_n(m/hk, u^{hk}) = u^{-(m mod hk)} H_n((m mod hk)/hk, u^{hk})`.
    fn sum(&self, chi: &DirichletCharacter) -> Result<Cyclotomic> {
        let (h, k) = (self.h, self.k);
        let (mut acc, step) = self.accumulator(chi);
        for a in 1..k {
            let w = frac(a as i64, k as i64);
            for b in 0..h {
                let m = k * b + h * a;
                if let Some(e) = chi.log(m as i64) {
                    acc.add_rotated(&self.sums[(m % (h * k)) as usize], e * step, &w)?;
                }
            }
        }
        Ok(acc.finish().scale(&int(h as i64).pow(self.n as i32)))
    }
}

fn inverse_powers(u: &Cyclotomic, count: u64) -> Result<Vec<Cyclotomic>> {
    let inv = u.inv()?;
    let mut out = Vec::with_capacity(count as usize);
    let mut p = Cyclotomic::one();
    for _ in 0..count {
        out.push(p.clone());
        p = p * &inv;
    }
    Ok(out)
}

/// `S_{n,u^k}(h, k | chi)`.
pub fn fe_dedekind_sum_char(n: usize, h: u64, k: u64, u: &Cyclotomic, chi: &DirichletCharacter) -> Result<Cyclotomic> {
    check_char_params(h, k, chi)?;
    CharWeights::new(n, h, k, u)?.sum(chi)
}

fn ratio<F: Scalar>(v: &F) -> Result<F> {
    // v / (1 - v)
    v.div(&(F::one() - v))
}

/// Both sides of the reciprocity law for `S_{n,u^k}(h,k)`.
pub fn th11_residual<F: Scalar>(n: usize, h: i64, k: i64, u: &F) -> Result<Residual<F>> {
    if h <= 0 {
        return Err(Error::invalid("h must be positive"));
    }
    check_coprime(h, k)?;
    if u.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if u.is_one() {
        return Err(Error::pole("u = 1"));
    }
    let uk = nonzero_root(u, k as u64)?;
    let uh = nonzero_root(u, h as u64)?;
    let tk = FrobeniusEuler::new(&uk, n)?;
    let th = FrobeniusEuler::new(&uh, n)?;
    let tu = FrobeniusEuler::new(u, n + 1)?;
    let ck = ratio(&uk)?;
    let ch = ratio(&uh)?;
    let cu = ratio(u)?;
    let nk = int(k).pow(n as i32);
    let nh = int(h).pow(n as i32);
    let lhs = (ck.clone() * &sum_with_table(n, h, k, u, &tk)?).scale(&nk)
        + &(ch.clone() * &sum_with_table(n, k, h, u, &th)?).scale(&nh);
    let binom = pascal(n);
    let mut conv = F::zero();
    for j in 0..=n {
        let term = tk.number(j).clone() * th.number(n - j);
        let w = &binom[n][j] * int(k).pow(j as i32) * int(h).pow((n - j) as i32);
        conv = conv + &term.scale(&w);
    }
    let rhs = ck * &ch * &conv
        + &(cu.clone() * tu.number(n + 1)).scale(&frac(1, h * k))
        + &(cu * tu.number(n));
    Ok(Residual { lhs, rhs })
}

/// Verifier for the character reciprocity law at fixed `(n, h, k, u)`,
/// reusable across characters.
pub struct Th4Context {
    n: usize,
    h: u64,
    k: u64,
    u: Cyclotomic,
    /// `u^{hk}`.
    big_u: Cyclotomic,
    /// `u^{-r} H_n(r/hk, u^{hk})`.
    sums: Vec<Cyclotomic>,
    /// `u^{-m} H_{2,n}(m, u | hk, hk)` at `m = kb + ha`.
    barnes: Vec<Option<Cyclotomic>>,
    /// For each `f | hk`: `u^{f-a} H_j(a/f, u^f)` for `j = n, n+1`, or the
    /// reason the pole `u^f = 1` is hit.
    char_fe: Vec<(u64, std::result::Result<[Vec<Cyclotomic>; 2], Error>)>,
}

impl Th4Context {
    pub fn new(n: usize, h: u64, k: u64, u: &Cyclotomic) -> Result<Self> {
        if h == 0 || k == 0 {
            return Err(Error::invalid("h and k must be positive"));
        }
        check_coprime(h as i64, k as i64)?;
        if u.is_one() {
            return Err(Error::pole("u = 1"));
        }
        let hk = h * k;
        let weights = CharWeights::new(n, h, k, u)?;
        let inv = inverse_powers(u, 2 * hk)?;
        let series = BarnesSeries::new(&[hk, hk], u, n)?;
        let mut barnes = vec![None; 2 * hk as usize];
        for a in 0..k {
            for b in 0..h {
                let m = (k * b + h * a) as usize;
                barnes[m] = Some(inv[m].clone() * &series.value(n, &Cyclotomic::from_int(m as i64)));
            }
        }
        let mut char_fe = Vec::new();
        for f in (1..=hk).filter(|f| hk.is_multiple_of(*f)) {
            let entry = (|| {
                let uf = nonzero_root(u, f)?;
                let table = FrobeniusEuler::new(&uf, n + 1)?;
                let upow: Vec<Cyclotomic> = (0..f).map(|a| u.pow(f - a)).collect();
                let row = |j: usize| -> Vec<Cyclotomic> {
                    (0..f)
                        .map(|a| upow[a as usize].clone() * &table.poly_at(j, &frac(a as i64, f as i64)))
                        .collect()
                };
                Ok([row(n), row(n + 1)])
            })();
            char_fe.push((f, entry));
        }
        Ok(Th4Context { n, h, k, u: u.clone(), big_u: u.pow(hk), sums: weights.sums, barnes, char_fe })
    }

    fn parts(&self, chi: &DirichletCharacter) -> Result<(Cyclotomic, Cyclotomic, Cyclotomic, Cyclotomic)> {
        let (n, h, k) = (self.n, self.h, self.k);
        check_char_params(h, k, chi)?;
        let hk = h * k;
        let f = chi.modulus();
        let rows = match self.char_fe.iter().find(|(g, _)| *g == f) {
            Some((_, Ok(rows))) => rows,
            Some((_, Err(e))) => return Err(e.clone()),
            None => unreachable!("f divides hk"),
        };
        let lambda = chi.value_conductor();
        let m = lcm_u64(self.u.conductor(), lambda);
        let step = m / lambda;
        let one = int(1);

        // k^n S(h,k|chi) + h^n S(k,h|chi) = (hk)^n sum (a/k + b/h) chi(m) u^{-m} Hbar_n(m/hk)
        let mut lhs = PowerAccumulator::new(m);
        for a in 0..k {
            for b in 0..h {
                let idx = k * b + h * a;
                if let Some(e) = chi.log(idx as i64) {
                    let w = frac(a as i64, k as i64) + frac(b as i64, h as i64);
                    lhs.add_rotated(&self.sums[(idx % hk) as usize], e * step, &w)?;
                }
            }
        }
        let lhs = lhs.finish().scale(&int(hk as i64).pow(n as i32));

        // (1/hk) H_{n+1,chi}(u) + H_{n,chi}(u)
        let mut hchi = PowerAccumulator::new(m);
        let c_n = int(f as i64).pow(n as i32);
        let c_n1 = int(f as i64).pow(n as i32 + 1) / int(hk as i64);
        for a in 0..f {
            if let Some(e) = chi.log(a as i64) {
                hchi.add_rotated(&rows[0][a as usize], e * step, &c_n)?;
                hchi.add_rotated(&rows[1][a as usize], e * step, &c_n1)?;
            }
        }

        let mut barnes = PowerAccumulator::new(m);
        for (idx, w) in self.barnes.iter().enumerate() {
            if let (Some(w), Some(e)) = (w, chi.log(idx as i64)) {
                barnes.add_rotated(w, e * step, &one)?;
            }
        }
        Ok((lhs, hchi.finish(), barnes.finish(), self.u.pow(f)))
    }

    /// `k^n S(h,k|chi) + h^n S(k,h|chi)` against
    /// `((u^{hk}-1)/u^{hk}) (1/(u^f-1)) ((1/hk) H_{n+1,chi} + H_{n,chi})
    ///  - (u^{hk}/(u^{hk}-1)) sum chi(kb+ha) u^{-(kb+ha)} H_{2,n}(kb+ha, u | hk, hk)`.
    pub fn residual(&self, chi: &DirichletCharacter) -> Result<Residual<Cyclotomic>> {
        let (lhs, hchi, barnes_sum, uf) = self.parts(chi)?;
        let one = Cyclotomic::one();
        let bu = &self.big_u;
        let c1 = (bu.clone() - &one).div(bu)?.div(&(uf - &one))?;
        let c2 = bu.div(&(bu.clone() - &one))?;
        Ok(Residual { lhs, rhs: c1 * &hchi - &(c2 * &barnes_sum) })
    }

    /// The same comparison with the right side exactly as printed:
    /// `((1-u^{hk})/u^{hk}) (u^f/(1-u^f)) (...) + (u^{hk}/(u^{hk}-1)) sum ...`.
    pub fn residual_printed(&self, chi: &DirichletCharacter) -> Result<Residual<Cyclotomic>> {
        let (lhs, hchi, barnes_sum, uf) = self.parts(chi)?;
        let one = Cyclotomic::one();
        let bu = &self.big_u;
        let c1 = (one.clone() - bu).div(bu)? * &uf.div(&(one.clone() - &uf))?;
        let c2 = bu.div(&(bu.clone() - &one))?;
        Ok(Residual { lhs, rhs: c1 * &hchi + &(c2 * &barnes_sum) })
    }
}

pub fn th4_residual(n: usize, h: u64, k: u64, u: &Cyclotomic, chi: &DirichletCharacter) -> Result<Residual<Cyclotomic>> {
    Th4Context::new(n, h, k, u)?.residual(chi)
}

pub fn th4_residual_printed(
    n: usize,
    h: u64,
    k: u64,
    u: &Cyclotomic,
    chi: &DirichletCharacter,
) -> Result<Residual<Cyclotomic>> {
    Th4Context::new(n, h, k, u)?.residual_printed(chi)
}

/// Outcome of one twisted evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum TwistOutcome {
    Evaluated(Residual<Cyclotomic>),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedEntry {
    /// `zeta = zeta_d^j`.
    pub j: u64,
    /// `None` for the character-free law, else `(modulus, index)`.
    pub character: Option<(u64, usize)>,
    pub outcome: TwistOutcome,
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Both reciprocity laws at every primitive `d`-th root of unity with
/// `d | hk - 1`.
pub fn twisted_residuals(n: usize, h: u64, k: u64, d: u64) -> Result<Vec<TwistedEntry>> {
    if h == 0 || k == 0 {
        return Err(Error::invalid("h and k must be positive"));
    }
    check_coprime(h as i64, k as i64)?;
    let hk = h * k;
    if d <= 1 || !(hk - 1).is_multiple_of(d) {
        return Err(Error::invalid(format!("d = {d} must be a divisor > 1 of hk - 1 = {}", hk - 1)));
    }
    let mut chars = Vec::new();
    for f in divisors(hk) {
        chars.extend(enumerate_characters(f)?);
    }
    let mut out = Vec::with_capacity((euler_phi(d) as usize) * (chars.len() + 1));
    for j in (1..d).filter(|j| j.gcd(&d) == 1) {
        let zeta = Cyclotomic::root_of_unity(d, j as i64);
        let pole = if zeta.pow(h).is_one() {
            Some(format!("zeta^h = 1 (h = {h})"))
        } else if zeta.pow(k).is_one() {
            Some(format!("zeta^k = 1 (k = {k})"))
        } else {
            None
        };
        let outcome = match &pole {
            Some(why) => TwistOutcome::Skipped(why.clone()),
            None => TwistOutcome::Evaluated(th11_residual(n, h as i64, k as i64, &zeta)?),
        };
        out.push(TwistedEntry { j, character: None, outcome });
        let ctx = Th4Context::new(n, h, k, &zeta)?;
        for chi in &chars {
            let f = chi.modulus();
            let outcome = if zeta.pow(f).is_one() {
                TwistOutcome::Skipped(format!("zeta^f = 1 (f = {f})"))
            } else {
                TwistOutcome::Evaluated(ctx.residual(chi)?)
            };
            out.push(TwistedEntry { j, character: Some((f, chi.index())), outcome });
        }
    }
    Ok(out)
}
