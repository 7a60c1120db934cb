//! Trace congruences between data related by `~_l`.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::hgdata::{congruent_mod_l, fmt_q, q_valuation, HgData, Q};
use crate::recognize::recognize_rational;

use super::hsum::{choose_f, default_k, HgmSum};

/// Extra precision steps tried when a trace does not reconstruct.
const RETRIES: u32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct PrimeCongruence {
    pub p: u64,
    pub q: u64,
    pub k: u32,
    pub trace1: String,
    pub trace2: String,
    /// power of `q` both traces were multiplied by
    pub scale: i64,
    pub congruent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub params1: String,
    pub params2: String,
    pub l: u64,
    pub xi: String,
    pub primes: Vec<PrimeCongruence>,
    /// primes skipped as bad for either datum (or equal to `l`)
    pub skipped: Vec<u64>,
    pub all_congruent: bool,
}

/// `p` is odd and prime to `N`, and `xi`, `xi - 1` are `p`-adic units.
pub fn is_good(d: &HgData, xi: Q, p: u64) -> bool {
    let one = Q::from_integer(1);
    p != 2
        && !d.n().is_multiple_of(p)
        && xi != one
        && *xi.numer() != 0
        && q_valuation(xi, p) == 0
        && q_valuation(xi - one, p) == 0
}

fn rational_trace(d: &HgData, xi: Q, p: u64, f: u32, k: u32) -> Result<(Q, u32)> {
    let mut k = k;
    let mut last = None;
    for _ in 0..=RETRIES {
        let v = HgmSum::new(d, p, f, k)?.eval(xi)?;
        match recognize_rational(&v) {
            Ok(x) => return Ok((x, k)),
            Err(e) => last = Some(e),
        }
        k += 2;
    }
    Err(last.unwrap_or_else(|| Error::Recognition("no attempt".into())))
}

/// `l`-adic divisibility of a rational with denominator prime to `l`.
fn divisible(x: Q, l: u64) -> bool {
    let l = l as i64;
    x.denom() % l != 0 && x.numer() % l == 0
}

/// Compare traces of `d1` and `d2` at one good prime.
pub fn congruence_at(
    d1: &HgData,
    d2: &HgData,
    l: u64,
    xi: Q,
    p: u64,
    k: Option<u32>,
) -> Result<PrimeCongruence> {
    let f = num_integer::lcm(choose_f(d1, p), choose_f(d2, p));
    let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    let k0 = match k {
        Some(k) => k,
        None => default_k(d1, p, q)?.max(default_k(d2, p, q)?),
    };
    let (t1, k1) = rational_trace(d1, xi, p, f, k0)?;
    let (t2, k2) = rational_trace(d2, xi, p, f, k0)?;
    let pv = |x: Q| {
        if *x.numer() == 0 {
            0
        } else {
            q_valuation(x, p)
        }
    };
    let scale = (-pv(t1).min(pv(t2))).max(0);
    let s = Q::from_integer(p as i64).pow(scale as i32);
    Ok(PrimeCongruence {
        p,
        q,
        k: k1.max(k2),
        trace1: fmt_q(&t1),
        trace2: fmt_q(&t2),
        scale,
        congruent: divisible((t1 - t2) * s, l),
    })
}

/// Check trace congruences mod `l` at every good prime in `primes`.
/// The `~_l` precondition is checked before any arithmetic.
pub fn congruence_check(
    d1: &HgData,
    d2: &HgData,
    l: u64,
    xi: Q,
    primes: &[u64],
    k: Option<u32>,
) -> Result<CongruenceReport> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if !congruent_mod_l(d1, d2, l) {
        return Err(Error::Precondition(format!(
            "{d1} and {d2} are not congruent mod {l}"
        )));
    }
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        if !is_prime(p) || p == l || !is_good(d1, xi, p) || !is_good(d2, xi, p) {
            skipped.push(p);
            continue;
        }
        out.push(congruence_at(d1, d2, l, xi, p, k)?);
    }
    Ok(CongruenceReport {
        params1: d1.to_string(),
        params2: d2.to_string(),
        l,
        xi: fmt_q(&xi),
        all_congruent: out.iter().all(|c| c.congruent),
        primes: out,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_mod_three() {
        let a = HgData::parse("1/2,1/2;1,1").unwrap();
        let b = HgData::parse("1/6,-1/6;1,1").unwrap();
        let primes: Vec<u64> = (3..60).collect();
        let r = congruence_check(&a, &b, 3, Q::from_integer(2), &primes, None).unwrap();
        assert!(r.all_congruent, "{r:#?}");
        assert!(r.primes.len() >= 14);
        assert!(r.skipped.contains(&3));
    }

    #[test]
    fn precondition_and_self() {
        let a = HgData::parse("1/2,1/2;1,1").unwrap();
        let b = HgData::parse("1/6,-1/6;1,1").unwrap();
        let e = congruence_check(&a, &b, 5, Q::from_integer(2), &[7], None).unwrap_err();
        assert_eq!(e.code(), "precondition");
        let r = congruence_check(&a, &a, 7, Q::from_integer(2), &[5, 11, 13], None).unwrap();
        assert!(r.all_congruent);
    }
}
