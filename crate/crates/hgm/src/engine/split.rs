//! Degree-2 Euler factors over the base field of the datum, and their
//! comparison with products of rank-1 Jacobi-motive factors.
//!
//! The determinant comes from the second trace `H_{q^2}` when that sum is
//! small enough; otherwise from purity: `lambda_i conj(lambda_i) = q^w`
//! gives `c2 = q^w t1 / conj(t1)`, with `conj = sigma_{-1}` realised as the
//! sum for `-d` (or `t1` itself when `-1` lies in `<p> H`).

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime, lcm_all};
use crate::error::{Error, Result};
use crate::hgdata::{fmt_q, q_valuation, HgData, Q};
use crate::padic::PadicNum;

use super::hsum::{choose_f, hgm_padic_streaming, HgmSum};
use super::jacobi::JacobiDatum;

/// Sums with more terms than this are streamed rather than stored.
const STORE_LIMIT: u64 = 1 << 20;
/// Largest `q^2` for which the determinant is read off the second trace.
const SECOND_TRACE_LIMIT: u64 = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetMethod {
    SecondTrace,
    Purity,
}

#[derive(Clone, Debug)]
pub struct BaseFieldFactor {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub k: u32,
    pub t1: PadicNum,
    pub c2: PadicNum,
    pub det_method: DetMethod,
}

fn h_sum(d: &HgData, xi: Q, p: u64, f: u32, k: u32) -> Result<PadicNum> {
    let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    if q <= STORE_LIMIT {
        HgmSum::new(d, p, f, k)?.eval(xi)
    } else {
        hgm_padic_streaming(d, xi, p, f, k)
    }
}

/// `1 - t1 T + c2 T^2` at `q = p^f`; `f` defaults to the residue degree of
/// `p` in the base field.
pub fn base_field_factor(
    d: &HgData,
    xi: Q,
    p: u64,
    f: Option<u32>,
    k: u32,
) -> Result<BaseFieldFactor> {
    if d.rank() != 2 {
        return Err(Error::Rank(d.rank()));
    }
    let f = f.unwrap_or_else(|| choose_f(d, p));
    let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    let t1 = h_sum(d, xi, p, f, k)?;
    let (c2, det_method) = match q.checked_mul(q).filter(|&q2| q2 <= SECOND_TRACE_LIMIT) {
        Some(_) => {
            let t2 = h_sum(d, xi, p, 2 * f, k)?;
            let half = PadicNum::from_rational(Q::new(1, 2), p, k)?;
            (t1.mul(&t1).sub(&t2)?.mul(&half), DetMethod::SecondTrace)
        }
        None => {
            if t1.is_zero() {
                return Err(Error::Precondition(format!(
                    "trace vanishes mod {p}^{k} at q = {q}; the determinant needs H at q^2"
                )));
            }
            let n = d.n();
            let h = d.symmetry_group().h;
            let mut x = 1 % n;
            let mut real = false;
            for _ in 0..n {
                real |= h.iter().any(|&j| (x * j) % n == (n - 1) % n);
                x = x * (p % n) % n;
            }
            let conj = if real {
                t1
            } else {
                h_sum(&d.scale(-1), xi, p, f, k)?
            };
            let qw =
                PadicNum::from_rational(Q::from_integer(q as i64).pow(d.weight() as i32), p, k)?;
            (qw.mul(&t1).div(&conj)?, DetMethod::Purity)
        }
    };
    Ok(BaseFieldFactor {
        p,
        f,
        q,
        k,
        t1,
        c2,
        det_method,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub k: u32,
    pub det_method: DetMethod,
    /// `(t1, c2)` of the hypergeometric factor
    pub hgm: [String; 2],
    /// elementary symmetric functions of the Jacobi-motive values
    pub jacobi: [String; 2],
    pub ok: bool,
}

/// Whether `p` is good for `d` at `xi` and for every part.
pub fn split_prime_ok(d: &HgData, xi: Q, parts: &[JacobiDatum], p: u64) -> bool {
    let n = lcm_all(std::iter::once(d.n()).chain(parts.iter().map(|j| j.n())));
    let one = Q::from_integer(1);
    is_prime(p)
        && p != 2
        && n % p != 0
        && xi != one
        && !xi.is_zero()
        && q_valuation(xi, p) == 0
        && q_valuation(xi - one, p) == 0
}

/// Compare the factor of `d` with `prod (1 - J_i T)` over the common field
/// of definition at `p`.
pub fn jacobi_split_check(
    d: &HgData,
    xi: Q,
    parts: &[JacobiDatum; 2],
    p: u64,
    k: u32,
) -> Result<SplitReport> {
    if !split_prime_ok(d, xi, parts, p) {
        return Err(Error::BadPrime(format!(
            "{p} is not good for xi = {}",
            fmt_q(&xi)
        )));
    }
    let f = parts
        .iter()
        .map(|j| j.default_f(p) as u64)
        .fold(choose_f(d, p) as u64, num_integer::lcm) as u32;
    let fac = base_field_factor(d, xi, p, Some(f), k)?;
    let j: Vec<PadicNum> = parts
        .iter()
        .map(|jd| jd.padic_value(p, f, k))
        .collect::<Result<_>>()?;
    let e1 = j[0].add(&j[1])?;
    let e2 = j[0].mul(&j[1]);
    let ok = fac.t1.eq_mod(&e1)? && fac.c2.eq_mod(&e2)?;
    Ok(SplitReport {
        p,
        f,
        q: fac.q,
        k,
        det_method: fac.det_method,
        hgm: [fac.t1.to_string(), fac.c2.to_string()],
        jacobi: [e1.to_string(), e2.to_string()],
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shimura() -> (HgData, [JacobiDatum; 2]) {
        let q = Q::new;
        (
            HgData::parse("1/5,4/5;3/5,1").unwrap(),
            [
                JacobiDatum::from_lists(&[q(1, 5), q(7, 10)], &[q(4, 5), q(1, 10)]).unwrap(),
                JacobiDatum::from_lists(&[q(1, 5), q(7, 10)], &[q(3, 10), q(3, 5)]).unwrap(),
            ],
        )
    }

    #[test]
    fn purity_agrees_with_second_trace() {
        // (1/8,7/8),(3/8,5/8) at p = 7 (f = 1, weight -1): both determinant routes
        let d = HgData::parse("1/8,7/8;3/8,5/8").unwrap();
        let xi = Q::from_integer(9);
        let a = base_field_factor(&d, xi, 7, None, 4).unwrap();
        assert_eq!(a.det_method, DetMethod::SecondTrace);
        let t1 = a.t1;
        let conj = HgmSum::new(&d.scale(-1), 7, a.f, 4)
            .unwrap()
            .eval(xi)
            .unwrap();
        let qw = PadicNum::from_rational(Q::new(1, a.q as i64), 7, 4).unwrap();
        assert!(qw.mul(&t1).div(&conj).unwrap().eq_mod(&a.c2).unwrap());
        // non-real trace: conj(t1) is the sum for -d
        let (d, _) = shimura();
        for p in [11u64, 31, 41] {
            let a = base_field_factor(&d, Q::new(1, 2), p, None, 4).unwrap();
            assert_eq!(a.det_method, DetMethod::SecondTrace);
            let conj = HgmSum::new(&d.scale(-1), p, 1, 4)
                .unwrap()
                .eval(Q::new(1, 2))
                .unwrap();
            assert!(!conj.eq_mod(&a.t1).unwrap());
            assert!(a.t1.div(&conj).unwrap().eq_mod(&a.c2).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn shimura_small_primes() {
        let (d, parts) = shimura();
        for p in [3u64, 7, 11, 13, 19, 31] {
            let r = jacobi_split_check(&d, Q::new(1, 2), &parts, p, 3).unwrap();
            assert!(r.ok, "{r:?}");
        }
        assert!(jacobi_split_check(&d, Q::new(1, 2), &parts, 5, 3).is_err());
    }
}
