//! The q-adic finite hypergeometric sum
//!
//! `H_q(alpha, beta | z) = 1/(1-q) sum_m (-p)^{e_m} U_m Teich(z)^m`
//!
//! where `U_m` is a product of p-adic Pochhammer symbols and `e_m` the
//! matching eta-exponent. The coefficients do not depend on `z`, so they are
//! computed once per `(datum, p, f, k)` and reused.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::arith::{inv_mod, is_prime, lcm_all, mul_mod, pow_mod, teichmuller};
use crate::error::{Error, Result};
use crate::hgdata::{frac, q_valuation, HgData, Q};
use crate::padic::{GammaCtx, PadicNum};

/// Above this many Gamma arguments per modulus entry, a full table is used.
const TABLE_LIMIT: u64 = 1 << 25;

/// Integer description of the sum shared by the stored and streaming paths.
struct SumPlan {
    p: u64,
    f: u32,
    q: u64,
    ctx: GammaCtx,
    /// common denominator of `alpha`, `beta` and `m/(q-1)`
    den: u64,
    inv_den: u64,
    step: u64,
    alpha: Vec<u64>,
    beta: Vec<u64>,
    /// eta numerators (times `den`) at `m = 0`
    eta0: i128,
    /// `Gamma_q^0(beta) / Gamma_q^inf(alpha)` at `m = 0`
    base_unit: u64,
}

/// Per-term Gamma arguments: alpha reps (multiply) and reflected beta reps
/// (multiply, with a sign) so that no modular inverse is needed per term.
struct TermReps {
    e: i64,
    integral: bool,
    eta: i128,
    reps: Vec<u64>,
    sign_flip: bool,
}

impl SumPlan {
    fn new(alpha: &[Q], beta: &[Q], p: u64, f: u32, k: u32) -> Result<Self> {
        let ctx = GammaCtx::new(p, k)?;
        let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
        let n = lcm_all(alpha.iter().chain(beta).map(|x| crate::hgdata::den(*x)));
        let den = n.lcm(&(q - 1));
        let m = ctx.modulus();
        let inv_den = inv_mod(den as i128, m as i128).ok_or(Error::WildPrime(p))? as u64;
        let scale = |x: &Q| -> u64 {
            let x = frac(*x);
            (*x.numer() as u64) * (den / *x.denom() as u64)
        };
        let mut plan = SumPlan {
            p,
            f,
            q,
            ctx,
            den,
            inv_den,
            step: den / (q - 1),
            alpha: alpha.iter().map(scale).collect(),
            beta: beta.iter().map(scale).collect(),
            eta0: 0,
            base_unit: 1,
        };
        // m = 0 normalisation
        let m0 = plan.reps(0);
        plan.eta0 = m0.eta;
        let g: Vec<u64> = plan.ctx.eval_many(&m0.reps);
        let mut prod = g.iter().fold(1u64, |a, &b| mul_mod(a, b, m));
        if m0.sign_flip {
            prod = (m - prod) % m;
        }
        // the term at m = 0 must be 1, so the base unit is its inverse
        plan.base_unit = inv_mod(prod as i128, m as i128).expect("unit") as u64;
        Ok(plan)
    }

    /// Numerators `y` of `{p^j (x - m/(q-1))}` with denominator `den`.
    #[inline]
    fn orbit(&self, x: u64, m: u64) -> impl Iterator<Item = u64> + '_ {
        let shift = (m % (self.q - 1)) * self.step;
        let mut y = (x + self.den - shift % self.den) % self.den;
        (0..self.f).map(move |_| {
            let cur = y;
            y = mul_mod(y, self.p, self.den);
            cur
        })
    }

    fn reps(&self, m: u64) -> TermReps {
        let modulus = self.ctx.modulus();
        let mut reps = Vec::with_capacity(self.f as usize * (self.alpha.len() + self.beta.len()));
        let mut eta = 0i128;
        let mut flips = 0u32;
        for &a in &self.alpha {
            for y in self.orbit(a, m) {
                eta += y as i128;
                reps.push(mul_mod(y, self.inv_den, modulus));
            }
        }
        for &b in &self.beta {
            for y in self.orbit(b, m) {
                let y0 = if y == 0 { self.den } else { y };
                eta -= y0 as i128;
                // 1/Gamma(x) = (-1)^{x_0} Gamma(1 - x), x_0 in 1..p the residue of x
                let r = if y == 0 {
                    1 % modulus
                } else {
                    mul_mod(y, self.inv_den, modulus)
                };
                let x0 = match r % self.p {
                    0 => self.p,
                    v => v,
                };
                if x0 % 2 == 1 {
                    flips += 1;
                }
                reps.push((1 + modulus - r) % modulus);
            }
        }
        let diff = eta - self.eta0;
        TermReps {
            e: diff.div_euclid(self.den as i128) as i64,
            integral: diff.rem_euclid(self.den as i128) == 0,
            eta,
            reps,
            sign_flip: flips % 2 == 1,
        }
    }

    fn checked(&self, m: u64) -> Result<TermReps> {
        let t = self.reps(m);
        if !t.integral {
            return Err(Error::NonIntegralExponent(format!(
                "m = {m}, q = {}: eta difference {}/{}",
                self.q,
                t.eta - self.eta0,
                self.den
            )));
        }
        Ok(t)
    }

    /// Signed unit `(-1)^e * U_m` given the Gamma values of `reps`.
    #[inline]
    fn unit(&self, t: &TermReps, gammas: impl Iterator<Item = u64>) -> u64 {
        let m = self.ctx.modulus();
        let mut u = self.base_unit;
        for g in gammas {
            u = mul_mod(u, g, m);
        }
        if t.sign_flip ^ (t.e.rem_euclid(2) == 1) {
            u = (m - u) % m;
        }
        u
    }
}

/// Precomputed coefficients of `H_q` for one datum, prime and precision.
#[derive(Clone, Debug)]
pub struct HgmSum {
    p: u64,
    f: u32,
    q: u64,
    k: u32,
    modulus: u64,
    /// `(e_m, (-1)^{e_m} U_m mod p^k)` for `m = 0..q-1`
    terms: Vec<(i32, u64)>,
}

impl HgmSum {
    pub fn new(d: &HgData, p: u64, f: u32, k: u32) -> Result<Self> {
        Self::from_params(d.alpha(), d.beta(), p, f, k)
    }

    /// As [`HgmSum::new`] for parameters taken as given (any order, any
    /// integer representatives).
    pub fn from_params(alpha: &[Q], beta: &[Q], p: u64, f: u32, k: u32) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::RankMismatch(alpha.len(), beta.len()));
        }
        check_prime(alpha.iter().chain(beta), p)?;
        let plan = SumPlan::new(alpha, beta, p, f, k)?;
        let q = plan.q;
        let modulus = plan.ctx.modulus();
        let all: Vec<TermReps> = (0..q - 1).map(|m| plan.checked(m)).collect::<Result<_>>()?;
        let n_args: u64 = all.iter().map(|t| t.reps.len() as u64).sum();
        let terms = if modulus <= TABLE_LIMIT && n_args > modulus / 8 {
            let table = plan.ctx.table();
            all.iter()
                .map(|t| {
                    let u = plan.unit(t, t.reps.iter().map(|&r| table[r as usize] as u64));
                    (t.e as i32, u)
                })
                .collect()
        } else {
            let flat: Vec<u64> = all.iter().flat_map(|t| t.reps.iter().copied()).collect();
            let vals = plan.ctx.eval_many(&flat);
            let mut off = 0;
            all.iter()
                .map(|t| {
                    let len = t.reps.len();
                    let u = plan.unit(t, vals[off..off + len].iter().copied());
                    off += len;
                    (t.e as i32, u)
                })
                .collect()
        };
        Ok(HgmSum {
            p,
            f,
            q,
            k,
            modulus,
            terms,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Smallest exponent `e_m`.
    pub fn e_min(&self) -> i64 {
        self.terms.iter().map(|t| t.0 as i64).min().unwrap_or(0)
    }

    /// Evaluate at a rational `z` that is a p-adic unit.
    pub fn eval(&self, z: Q) -> Result<PadicNum> {
        let t = teich_of(z, self.p, self.k)?;
        Ok(self.eval_teich(t))
    }

    /// Evaluate given `Teich(z)` modulo `p^k`.
    pub fn eval_teich(&self, t: u64) -> PadicNum {
        let mut buckets: BTreeMap<i64, u64> = BTreeMap::new();
        let m = self.modulus;
        let mut tm = 1 % m;
        for &(e, u) in &self.terms {
            let s = buckets.entry(e as i64).or_insert(0);
            *s = (*s + mul_mod(u, tm, m)) % m;
            tm = mul_mod(tm, t, m);
        }
        finish(self.p, self.q, self.k, buckets)
    }
}

fn finish(p: u64, q: u64, k: u32, buckets: BTreeMap<i64, u64>) -> PadicNum {
    let m = p.pow(k);
    let e_min = *buckets.keys().next().unwrap_or(&0);
    let mut s = 0u64;
    for (e, v) in buckets {
        let shift = (e - e_min) as u32;
        if shift >= k {
            continue;
        }
        s = (s + mul_mod(v, p.pow(shift), m)) % m;
    }
    let inv = inv_mod(1 - q as i128, m as i128).expect("1 - q is a unit") as u64;
    PadicNum::from_parts(p, k, e_min, mul_mod(s, inv, m))
}

/// Single-pass evaluation without storing the coefficients; uses a full
/// Gamma table, so `p^k` must be at most the table limit. Intended for very
/// large `q` where only one value of `z` is needed.
pub fn hgm_padic_streaming(d: &HgData, z: Q, p: u64, f: u32, k: u32) -> Result<PadicNum> {
    check_prime(d.alpha().iter().chain(d.beta()), p)?;
    let plan = SumPlan::new(d.alpha(), d.beta(), p, f, k)?;
    let modulus = plan.ctx.modulus();
    if modulus > TABLE_LIMIT {
        return Err(Error::PrecisionCap { p, k });
    }
    let table = plan.ctx.table();
    let t = teich_of(z, p, k)?;
    let mut buckets: BTreeMap<i64, u64> = BTreeMap::new();
    let mut tm = 1 % modulus;
    for mm in 0..plan.q - 1 {
        let tr = plan.checked(mm)?;
        let u = plan.unit(&tr, tr.reps.iter().map(|&r| table[r as usize] as u64));
        let s = buckets.entry(tr.e).or_insert(0);
        *s = (*s + mul_mod(u, tm, modulus)) % modulus;
        tm = mul_mod(tm, t, modulus);
    }
    Ok(finish(p, plan.q, k, buckets))
}

fn check_prime<'a>(params: impl Iterator<Item = &'a Q>, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PrimeTwo);
    }
    if params.map(|x| crate::hgdata::den(*x)).any(|n| n % p == 0) {
        return Err(Error::WildPrime(p));
    }
    Ok(())
}

/// Teichmüller lift of a rational p-adic unit.
pub fn teich_of(z: Q, p: u64, k: u32) -> Result<u64> {
    if z == Q::from_integer(0) || q_valuation(z, p) != 0 {
        return Err(Error::Degenerate(format!(
            "z = {} is not a {p}-adic unit",
            crate::hgdata::fmt_q(&z)
        )));
    }
    let zp = (z.numer().rem_euclid(p as i64) as u64)
        * pow_mod(z.denom().rem_euclid(p as i64) as u64, p - 2, p)
        % p;
    Ok(teichmuller(zp, p, k))
}

/// Degree `f` used for `H_q`: the order of `p` in `(Z/N)^x / H`.
pub fn choose_f(d: &HgData, p: u64) -> u32 {
    let n = d.n();
    // wild primes never reach H; callers reject them
    if n <= 2 || n.is_multiple_of(p) {
        return 1;
    }
    let h = d.symmetry_group().h;
    let mut x = p % n;
    let mut f = 1;
    while !h.contains(&x) {
        x = x * p % n;
        f += 1;
    }
    f
}

/// Precision from the default policy for a datum at `q`.
pub fn default_k(d: &HgData, p: u64, q: u64) -> Result<u32> {
    let r = d.weight() + 1;
    let t = d.effective_offset().unwrap_or(0).max(1);
    let w = (r - 1) + 2 * (t - 1);
    crate::padic::default_precision(p, q, w)
}

/// `H_q(alpha, beta | z)` with the default degree `f` unless given.
pub fn hgm_padic(d: &HgData, z: Q, p: u64, f: Option<u32>, k: Option<u32>) -> Result<PadicNum> {
    check_prime(d.alpha().iter().chain(d.beta()), p)?;
    let f = f.unwrap_or_else(|| choose_f(d, p));
    let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    let k = match k {
        Some(k) => k,
        None => default_k(d, p, q)?,
    };
    HgmSum::new(d, p, f, k)?.eval(z)
}
