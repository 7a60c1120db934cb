//! Lifting p-adic results back to exact values: rational reconstruction,
//! coefficient-wise polynomial recognition, and real-quadratic recognition
//! from a conjugate pair of embeddings.

use std::fmt;

use num_integer::{Integer, Roots};
use num_traits::Zero;

use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::hgdata::{fmt_q, Q};
use crate::padic::PadicNum;

/// Wang reconstruction of `r mod m` with `|a|, b <= sqrt(m/2)`.
pub fn rational_reconstruct(r: u64, m: u64) -> Option<(i128, i128)> {
    let bound = ((m / 2) as u128).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, (r % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    let (mut a, mut b) = (r1, s1);
    if b < 0 {
        a = -a;
        b = -b;
    }
    if b == 0 || b > bound || a.gcd(&b) != 1 {
        return None;
    }
    // re-encode check
    let back = (a.rem_euclid(m as i128) * inv_mod(b, m as i128)?).rem_euclid(m as i128);
    (back == (r % m) as i128).then_some((a, b))
}

pub fn recognize_rational(x: &PadicNum) -> Result<Q> {
    let (v, r) = x.to_parts()?;
    if x.is_zero() {
        return Ok(Q::zero());
    }
    let p = x.p();
    let m = p.pow(x.rel_prec());
    let (a, b) = rational_reconstruct(r, m)
        .filter(|(_, b)| b % p as i128 != 0)
        .ok_or_else(|| Error::Recognition(format!("no small rational matches {x}")))?;
    let base = Q::new(a as i64, b as i64);
    let pv = Q::from_integer(p as i64).pow(v as i32);
    Ok(base * pv)
}

/// Coefficient-wise recognition; fails if any coefficient fails.
pub fn recognize_poly(coeffs: &[PadicNum]) -> Result<Vec<Q>> {
    coeffs.iter().map(recognize_rational).collect()
}

/// Square root of `a` modulo `p^k` (`p` odd, `a` a nonzero square mod `p`),
/// normalised so that its residue mod `p` is the smaller of the two.
pub fn sqrt_mod_pk(a: i64, p: u64, k: u32) -> Option<u64> {
    let a0 = a.rem_euclid(p as i64) as u64;
    if a0 == 0 || pow_mod(a0, (p - 1) / 2, p) != 1 {
        return None;
    }
    // Tonelli–Shanks mod p
    let (mut s, mut qq) = (0u32, p - 1);
    while qq % 2 == 0 {
        qq /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, qq, p);
    let mut t = pow_mod(a0, qq, p);
    let mut r = pow_mod(a0, qq.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    let r = r.min(p - r);
    // Hensel lift: x <- x - (x^2 - a) / (2x)
    let pk = p.pow(k);
    let am = a.rem_euclid(pk as i64) as u64;
    let mut x = r;
    let mut mod_now = p;
    while mod_now < pk {
        mod_now = (mod_now.saturating_mul(mod_now)).min(pk);
        let fx = (mul_mod(x, x, mod_now) + mod_now - am % mod_now) % mod_now;
        let inv2x = inv_mod(2 * x as i128, mod_now as i128)? as u64;
        x = (x + mod_now - mul_mod(fx, inv2x, mod_now)) % mod_now;
    }
    Some(x)
}

/// `a + b sqrt(d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticValue {
    pub a: Q,
    pub b: Q,
    pub d: i64,
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_q(&self.a));
        }
        let b = if self.b == Q::from_integer(1) {
            String::new()
        } else if self.b == Q::from_integer(-1) {
            "-".to_string()
        } else {
            format!("{}*", fmt_q(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else {
            write!(f, "{} + {b}sqrt({})", fmt_q(&self.a), self.d)
        }
    }
}

/// Recognise `x1 = a + b s`, `x2 = a - b s` where `s` is the chosen square
/// root of `disc` modulo `p^k` (see [`sqrt_mod_pk`]).
pub fn recognize_quadratic(x1: &PadicNum, x2: &PadicNum, disc: i64) -> Result<QuadraticValue> {
    let p = x1.p();
    if x2.p() != p {
        return Err(Error::Precondition("values at different primes".into()));
    }
    let half = PadicNum::from_rational(Q::new(1, 2), p, x1.rel_prec().max(x2.rel_prec()))?;
    let sum = x1.add(x2)?.mul(&half);
    let diff = x1.sub(x2)?.mul(&half);
    let a = recognize_rational(&sum)?;
    if diff.is_zero() {
        return Ok(QuadraticValue {
            a,
            b: Q::zero(),
            d: disc,
        });
    }
    let k = diff.rel_prec().max(1);
    let s = sqrt_mod_pk(disc, p, k + 2)
        .ok_or_else(|| Error::Recognition(format!("{disc} is not a square mod {p}")))?;
    let sp = PadicNum::from_parts(p, k + 2, 0, s);
    let b = recognize_rational(&diff.div(&sp)?)?;
    Ok(QuadraticValue { a, b, d: disc })
}
