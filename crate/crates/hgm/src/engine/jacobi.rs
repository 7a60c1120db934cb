//! Jacobi motives `J(theta)` for `theta = sum n_i <theta_i>`.
//!
//! Convention: `J(theta)(p) = (-1)^{sum n_i} prod g(psi, theta_i, p)^{n_i}`
//! where `g(psi, theta, p)` is the Gauss sum of `chi_p^{N theta}`. Under the
//! fixed embedding, `g(psi, theta, p) = g_p(-theta)` (Gross–Koblitz).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime, mult_order};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ffield::{chi_p, jacobi_sum, FqTable};
use crate::hgdata::{den, fmt_q, frac, parse_q, units, Q};
use crate::padic::{GammaCtx, PadicNum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDatum {
    /// `(theta_i mod 1, n_i)`, merged and sorted, zero multiplicities dropped
    theta: Vec<(Q, i64)>,
    n: u64,
}

impl JacobiDatum {
    pub fn new(entries: Vec<(Q, i64)>) -> Result<Self> {
        let mut merged: BTreeMap<Q, i64> = BTreeMap::new();
        for (t, m) in entries {
            *merged.entry(frac(t)).or_insert(0) += m;
        }
        let theta: Vec<(Q, i64)> = merged.into_iter().filter(|(_, m)| *m != 0).collect();
        let total: Q = theta
            .iter()
            .fold(Q::zero(), |a, (t, m)| a + t * Q::from_integer(*m));
        if !total.is_integer() {
            return Err(Error::JacobiCondition(fmt_q(&total)));
        }
        let n = theta.iter().fold(1u64, |a, (t, _)| a.lcm(&den(*t)));
        Ok(JacobiDatum { theta, n })
    }

    /// `+1` on each entry of `plus`, `-1` on each of `minus`.
    pub fn from_lists(plus: &[Q], minus: &[Q]) -> Result<Self> {
        let mut v: Vec<(Q, i64)> = plus.iter().map(|t| (*t, 1)).collect();
        v.extend(minus.iter().map(|t| (*t, -1)));
        Self::new(v)
    }

    /// `"1/3:1,2/3:1,1/5:-1"`; a bare entry means multiplicity 1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (t, m) = match part.split_once(':') {
                Some((t, m)) => (
                    t,
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Malformed(part.to_string()))?,
                ),
                None => (part, 1),
            };
            v.push((parse_q(t)?, m));
        }
        if v.is_empty() {
            return Err(Error::Malformed(text.to_string()));
        }
        Self::new(v)
    }

    pub fn theta(&self) -> &[(Q, i64)] {
        &self.theta
    }
    pub fn n(&self) -> u64 {
        self.n
    }

    fn sign(&self) -> i64 {
        let s: i64 = self.theta.iter().map(|(_, m)| m).sum();
        if s.is_odd() {
            -1
        } else {
            1
        }
    }

    /// Sum of multiplicities over non-integral entries.
    pub fn weight(&self) -> i64 {
        self.theta
            .iter()
            .filter(|(t, _)| !t.is_zero())
            .map(|(_, m)| m)
            .sum()
    }

    /// `sum n_i {j theta_i}` for `gcd(j, N) = 1`.
    pub fn infinity_type_at(&self, j: u64) -> Q {
        self.theta.iter().fold(Q::zero(), |a, (t, m)| {
            a + frac(t * Q::from_integer(j as i64)) * Q::from_integer(*m)
        })
    }

    pub fn infinity_type(&self) -> Vec<(u64, Q)> {
        units(self.n)
            .into_iter()
            .map(|j| (j, self.infinity_type_at(j)))
            .collect()
    }

    /// `(p, q)` at the embedding `sigma_j`.
    pub fn hodge_at(&self, j: u64) -> (Q, Q) {
        let p = self.infinity_type_at(j);
        (p, Q::from_integer(self.weight()) - p)
    }

    pub fn hodge_info(&self) -> JacobiHodge {
        JacobiHodge {
            weight: self.weight(),
            hodge: units(self.n)
                .into_iter()
                .map(|j| {
                    let (p, q) = self.hodge_at(j);
                    (j, fmt_q(&p), fmt_q(&q))
                })
                .collect(),
            infinity_type: self
                .infinity_type()
                .into_iter()
                .map(|(j, v)| (j, fmt_q(&v)))
                .collect(),
        }
    }

    fn check_prime(&self, p: u64, f: u32) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.n.is_multiple_of(p) {
            return Err(Error::WildPrime(p));
        }
        let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
        if (q - 1) % self.n != 0 {
            return Err(Error::CharOrder {
                order: self.n,
                qm1: q - 1,
            });
        }
        Ok(q)
    }

    /// Least `f` with `N | p^f - 1`.
    pub fn default_f(&self, p: u64) -> u32 {
        if self.n <= 2 {
            1
        } else {
            mult_order(p % self.n, self.n) as u32
        }
    }

    /// p-adic value through Gross–Koblitz.
    pub fn padic_value(&self, p: u64, f: u32, k: u32) -> Result<PadicNum> {
        self.check_prime(p, f)?;
        let ctx = GammaCtx::new(p, k)?;
        let mut acc = PadicNum::from_int(self.sign() as i128, p, k);
        for (t, m) in &self.theta {
            let g = ctx.gauss_padic(-*t, f)?;
            acc = acc.mul(&g.pow(*m)?);
        }
        if acc.pi_exp() % (p as i64 - 1) != 0 {
            return Err(Error::PiExponent(acc.pi_exp()));
        }
        Ok(acc)
    }

    /// Exact value in `Z[zeta_N]` (times a power of `q`) by reducing the
    /// Gauss-sum product with `g(u) g(v) = J(u, v) g(u + v)`,
    /// `g(u) g(-u) = chi^u(-1) q` and `g(0) = -1`.
    pub fn exact_value(&self, p: u64, f: u32) -> Result<JacobiExact> {
        let q = self.check_prime(p, f)?;
        let tbl = FqTable::build(p, f)?;
        self.exact_value_in(&tbl, q)
    }

    pub fn exact_value_in(&self, tbl: &FqTable, q: u64) -> Result<JacobiExact> {
        let n = self.n;
        let chi = chi_p(tbl, n)?;
        let ni = n as i64;
        let mut counts = vec![0i64; n as usize];
        for (t, m) in &self.theta {
            let u = (t * Q::from_integer(ni)).to_integer().rem_euclid(ni);
            counts[u as usize] += m;
        }
        let chi_m1 = |u: i64| chi.pow(u).at_minus_one(tbl);
        let mut sign = self.sign();
        let mut q_exp = 0i64;
        // g(0) = -1
        if counts[0].is_odd() {
            sign = -sign;
        }
        counts[0] = 0;
        // g(u)^-1 = chi^u(-1) g(-u) / q
        for u in 1..ni {
            let c = counts[u as usize];
            if c < 0 {
                if (c.unsigned_abs() % 2 == 1) && chi_m1(u) == -1 {
                    sign = -sign;
                }
                q_exp += c;
                counts[u as usize] = 0;
                counts[(ni - u) as usize] -= c;
            }
        }
        let mut acc = CycInt::one(n);
        let mut cache: HashMap<(i64, i64), CycInt> = HashMap::new();
        loop {
            let Some(u) = (1..ni).find(|&u| counts[u as usize] > 0) else {
                break;
            };
            let neg = (ni - u) % ni;
            counts[u as usize] -= 1;
            if counts[neg as usize] > 0 {
                counts[neg as usize] -= 1;
                sign *= chi_m1(u);
                q_exp += 1;
                continue;
            }
            let Some(v) = (1..ni).find(|&v| counts[v as usize] > 0) else {
                return Err(Error::JacobiCondition("unpaired Gauss sum".into()));
            };
            counts[v as usize] -= 1;
            let key = (u.min(v), u.max(v));
            let j = match cache.get(&key) {
                Some(j) => j.clone(),
                None => {
                    let j = jacobi_sum(tbl, &chi.pow(u), &chi.pow(v))?;
                    cache.insert(key, j.clone());
                    j
                }
            };
            acc = acc.try_mul(&j)?;
            counts[((u + v) % ni) as usize] += 1;
        }
        Ok(JacobiExact {
            num: acc.scale(sign as i128),
            q,
            q_exp,
        })
    }
}

impl fmt::Display for JacobiDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .theta
            .iter()
            .map(|(t, m)| format!("{}:{m}", fmt_q(t)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiHodge {
    pub weight: i64,
    /// `(j, p, q)`
    pub hodge: Vec<(u64, String, String)>,
    pub infinity_type: Vec<(u64, String)>,
}

/// `num * q^q_exp` with `num` in `Z[zeta_N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiExact {
    pub num: CycInt,
    pub q: u64,
    pub q_exp: i64,
}

impl JacobiExact {
    pub fn embed(&self, p: u64, k: u32, root_index: u64) -> Result<PadicNum> {
        let r = self.num.embed_padic(p, k, root_index)?;
        let f = (self.q as f64).log(p as f64).round() as i64;
        Ok(PadicNum::from_parts(p, k, f * self.q_exp, r))
    }

    /// Rational value if the numerator is an integer.
    pub fn as_rational(&self) -> Option<Q> {
        let c = self.num.as_int()?;
        Some(Q::from_integer(c as i64) * Q::from_integer(self.q as i64).pow(self.q_exp as i32))
    }
}

impl fmt::Display for JacobiExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q_exp {
            0 => write!(f, "{}", self.num),
            e => write!(f, "({}) * {}^{e}", self.num, self.q),
        }
    }
}
