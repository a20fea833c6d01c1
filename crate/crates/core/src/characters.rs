//! Dirichlet characters modulo `f` with values in `Q(zeta_lambda)`.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::arith::{euler_phi, Cyclotomic, Scalar};
use crate::arith::scalar::{gcd_i64, lcm_u64};
use crate::error::{Error, Result};

/// One cyclic factor of `(Z/fZ)^x`: a generator (as a residue mod `f`) and
/// its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFactor {
    pub generator: u64,
    pub order: u64,
}

/// Shared structure of the unit group mod `f`.
#[derive(Debug)]
struct UnitGroup {
    modulus: u64,
    exponent: u64,
    factors: Vec<CyclicFactor>,
    /// Discrete logs w.r.t. `factors`; `None` on non-units.
    logs: Vec<Option<Vec<u64>>>,
}

#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    index: usize,
    /// `chi(g_i) = zeta_{ord_i}^{images[i]}`.
    images: Vec<u64>,
    /// `chi(a) = zeta_lambda^{table[a]}` for units, `None` otherwise.
    table: Vec<Option<u64>>,
    powers: Arc<Vec<Cyclotomic>>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

/// Smallest primitive root modulo an odd prime power.
fn primitive_root(p: u64, pe: u64) -> u64 {
    let phi = pe / p * (p - 1);
    (2..pe)
        .find(|&g| g % p != 0 && mult_order(g, pe) == phi)
        .expect("odd prime powers are cyclic")
}

/// `x = r mod m1`, `x = 1 mod m2` with coprime moduli.
fn crt_lift(r: u64, m1: u64, m2: u64) -> u64 {
    let f = m1 * m2;
    (0..f).step_by(m2 as usize).map(|x| x + 1).find(|x| x % m1 == r % m1).unwrap_or(1) % f
}

impl UnitGroup {
    fn new(f: u64) -> Self {
        let mut factors = Vec::new();
        for (p, e) in factorize(f) {
            let pe = p.pow(e);
            let rest = f / pe;
            let local: Vec<(u64, u64)> = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![(3, 2)],
                    _ => vec![(pe - 1, 2), (5, pe / 4)],
                }
            } else {
                vec![(primitive_root(p, pe), pe / p * (p - 1))]
            };
            for (g, order) in local {
                factors.push(CyclicFactor { generator: crt_lift(g, pe, rest), order });
            }
        }
        let exponent = factors.iter().fold(1, |acc, c| lcm_u64(acc, c.order));
        let mut logs = vec![None; f as usize];
        let mut exps = vec![0u64; factors.len()];
        loop {
            let a = factors
                .iter()
                .zip(&exps)
                .fold(1 % f, |acc, (c, &e)| acc * pow_mod(c.generator, e, f) % f);
            logs[a as usize] = Some(exps.clone());
            // odometer over the exponent box, last factor fastest
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return UnitGroup { modulus: f, exponent, factors, logs };
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < factors[i].order {
                    break;
                }
                exps[i] = 0;
            }
        }
    }
}

/// All `phi(f)` characters mod `f`, lexicographic in the generator images;
/// index 0 is the principal character.
pub fn enumerate_characters(f: u64) -> Result<Vec<DirichletCharacter>> {
    if f == 0 {
        return Err(Error::BadModulus("character modulus must be positive".into()));
    }
    let group = Arc::new(UnitGroup::new(f));
    let lambda = group.exponent;
    let powers: Arc<Vec<Cyclotomic>> =
        Arc::new((0..lambda).map(|k| Cyclotomic::root_of_unity(lambda, k as i64)).collect());
    let count = euler_phi(f) as usize;
    let mut out = Vec::with_capacity(count);
    let mut images = vec![0u64; group.factors.len()];
    for index in 0..count {
        let table = group
            .logs
            .iter()
            .map(|log| {
                log.as_ref().map(|e| {
                    group
                        .factors
                        .iter()
                        .zip(e)
                        .zip(&images)
                        .map(|((c, &ei), &ci)| ei * ci * (lambda / c.order))
                        .sum::<u64>()
                        % lambda
                })
            })
            .collect();
        out.push(DirichletCharacter {
            group: group.clone(),
            index,
            images: images.clone(),
            table,
            powers: powers.clone(),
        });
        for i in (0..images.len()).rev() {
            images[i] += 1;
            if images[i] < group.factors[i].order {
                break;
            }
            images[i] = 0;
        }
    }
    Ok(out)
}

/// The character with the given position in [`enumerate_characters`].
pub fn character(f: u64, index: usize) -> Result<DirichletCharacter> {
    let mut all = enumerate_characters(f)?;
    if index >= all.len() {
        return Err(Error::invalid(format!("character index {index} out of range for modulus {f}")));
    }
    Ok(all.swap_remove(index))
}

/// The trivial character mod 1.
pub fn principal() -> DirichletCharacter {
    character(1, 0).expect("modulus 1")
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Exponent of the unit group; all values live in `Q(zeta_lambda)`.
    pub fn value_conductor(&self) -> u64 {
        self.group.exponent
    }

    pub fn generators(&self) -> &[CyclicFactor] {
        &self.group.factors
    }

    pub fn generator_images(&self) -> Vec<Cyclotomic> {
        self.group
            .factors
            .iter()
            .map(|c| self.eval(c.generator as i64))
            .collect()
    }

    /// `Some(e)` with `chi(a) = zeta_lambda^e`, or `None` when `gcd(a, f) > 1`.
    pub fn log(&self, a: i64) -> Option<u64> {
        self.table[a.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn eval(&self, a: i64) -> Cyclotomic {
        match self.log(a) {
            Some(e) => self.powers[e as usize].clone(),
            None => Cyclotomic::zero(),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.images.iter().all(|&c| c == 0)
    }

    pub fn is_real(&self) -> bool {
        self.table.iter().flatten().all(|&e| (2 * e) % self.group.exponent == 0)
    }

    /// Smallest `d | f` such that `chi` is trivial on units `= 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus();
        (1..=f)
            .filter(|d| f.is_multiple_of(*d))
            .find(|&d| {
                (1..f.max(2))
                    .step_by(d as usize)
                    .filter(|&a| gcd_i64(a as i64, f as i64) == 1)
                    .all(|a| self.table[(a % f) as usize] == Some(0))
            })
            .unwrap_or(f)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "modulus": self.modulus(),
            "index": self.index,
            "generators": self.group.factors.iter().map(|c| c.generator).collect::<Vec<_>>(),
            "images": self.generator_images().iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn conductor_of(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

pub fn char_eval(chi: &DirichletCharacter, a: i64) -> Cyclotomic {
    chi.eval(a)
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.table == other.table
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{} mod {}]", self.index, self.modulus())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.generator_images().iter().map(|c| c.render()).collect();
        write!(f, "chi mod {} #{} [{}]", self.modulus(), self.index, imgs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn counts_and_principal() {
        for f in 1..=30 {
            let chars = enumerate_characters(f).unwrap();
            assert_eq!(chars.len() as u64, euler_phi(f));
            assert!(chars[0].is_principal());
            assert_eq!(chars[0].conductor(), 1);
        }
        let one = principal();
        assert_eq!(one.eval(0), Cyclotomic::one());
        assert_eq!(one.eval(-7), Cyclotomic::one());
    }

    #[test]
    fn mod_four_and_eight() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars[1].eval(3), Cyclotomic::from_int(-1));
        assert_eq!(chars[1].conductor(), 4);
        let eight = enumerate_characters(8).unwrap();
        assert!(eight.iter().all(DirichletCharacter::is_real));
        let induced: Vec<_> = eight
            .iter()
            .filter(|c| (1..8).all(|a| c.eval(a) == chars[1].eval(a) || a % 2 == 0))
            .collect();
        assert_eq!(induced.len(), 1);
        assert_eq!(induced[0].conductor(), 4);
        assert_eq!(enumerate_characters(6).unwrap()[0].conductor(), 1);
    }

    #[test]
    fn mod_three_real() {
        let c = &enumerate_characters(3).unwrap()[1];
        assert_eq!(c.eval(1).as_rational(), Some(int(1)));
        assert_eq!(c.eval(2).as_rational(), Some(int(-1)));
        assert!(c.eval(3).is_zero());
        assert!(c.is_primitive());
    }

    #[test]
    fn distinct_characters() {
        for f in [5, 12, 15, 16, 21] {
            let chars = enumerate_characters(f).unwrap();
            for i in 0..chars.len() {
                for j in 0..i {
                    assert_ne!(chars[i], chars[j]);
                }
            }
        }
    }

    #[test]
    fn conductors_mod_twelve() {
        let mut seen: Vec<u64> = enumerate_characters(12).unwrap().iter().map(|c| c.conductor()).collect();
        seen.sort();
        assert_eq!(seen, vec![1, 3, 4, 12]);
    }
}
