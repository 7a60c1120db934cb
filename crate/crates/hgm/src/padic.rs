//! Fixed-precision p-adic numbers with a `pi`-grading (`pi^(p-1) = -p`),
//! Morita's p-adic Gamma function, bracket and eta functions, p-adic
//! Pochhammer symbols and Gauss sums through Gross–Koblitz.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{inv_mod, modp, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::hgdata::{fmt_q, Q};

/// Largest modulus `p^k` the Gamma sweep will accept.
pub const PRECISION_CAP: u64 = 100_000_000;

/// Which bracket / Gamma variant is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Star {
    /// `{x}` in `[0, 1)`.
    Inf,
    /// `1 - {-x}` in `(0, 1]`.
    Zero,
}

pub fn bracket(x: Q, star: Star) -> Q {
    match star {
        Star::Inf => x - x.floor(),
        Star::Zero => {
            let y = -x;
            Q::from_integer(1) - (y - y.floor())
        }
    }
}

/// `eta_q^*(x) = sum_{i<f} {p^i x}^*`.
pub fn eta_star(x: Q, p: u64, f: u32, star: Star) -> Q {
    let mut acc = Q::zero();
    let mut y = x;
    for _ in 0..f {
        acc += bracket(y, star);
        y *= Q::from_integer(p as i64);
    }
    acc
}

/// `eta_{q,m}^*(x) = eta_q^*(x + m/(1-q)) - eta_q^*(x)`.
pub fn eta_qm(x: Q, m: i64, p: u64, f: u32, star: Star) -> Q {
    let q = (p as i64).pow(f);
    eta_star(x + Q::new(m, 1 - q), p, f, star) - eta_star(x, p, f, star)
}

/// Smallest `k` with `p^k` above the bound, with the cap enforced.
pub fn precision_for(p: u64, bound: f64) -> Result<u32> {
    let mut k = 1u32;
    let mut pk = p as f64;
    while pk <= bound {
        k += 1;
        pk *= p as f64;
    }
    if pk > PRECISION_CAP as f64 {
        return Err(Error::PrecisionCap { p, k });
    }
    Ok(k)
}

/// Default precision for a value of motivic weight `w` over `F_q`:
/// the least `k` with `p^k > 8 B^2`, `B = ceil(2 q^((w+2)/2))`.
pub fn default_precision(p: u64, q: u64, w: i64) -> Result<u32> {
    let b = (2.0 * (q as f64).powf((w as f64 + 2.0) / 2.0)).ceil();
    precision_for(p, 8.0 * b * b)
}

/// Evaluation context for Morita's `Gamma_p` modulo `p^k`.
#[derive(Clone, Debug)]
pub struct GammaCtx {
    p: u64,
    k: u32,
    m: u64,
}

impl GammaCtx {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::PrimeTwo);
        }
        let m = p
            .checked_pow(k)
            .filter(|&m| m <= PRECISION_CAP)
            .ok_or(Error::PrecisionCap { p, k })?;
        Ok(GammaCtx { p, k, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Representative in `[0, p^k)` of a rational with denominator prime to `p`.
    pub fn rep(&self, x: Q) -> Result<u64> {
        let d = *x.denom() as i128;
        let inv =
            inv_mod(d, self.m as i128).ok_or_else(|| Error::NotIntegral(fmt_q(&x), self.p))?;
        Ok(modp(*x.numer() as i128 * inv, self.m))
    }

    /// `Gamma_p(n)` by the defining product; for tests and tiny inputs.
    pub fn gamma_direct(&self, n: u64) -> u64 {
        let mut r = 1u64;
        for i in 1..n {
            if i % self.p != 0 {
                r = mul_mod(r, i % self.m, self.m);
            }
        }
        if n % 2 == 1 {
            (self.m - r) % self.m
        } else {
            r
        }
    }

    /// `Gamma_p` at many integer representatives by one sorted sweep.
    pub fn eval_many(&self, reps: &[u64]) -> Vec<u64> {
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_unstable_by_key(|&i| reps[i]);
        let mut out = vec![0u64; reps.len()];
        let (mut n, mut g) = (0u64, 1u64);
        for i in order {
            let target = reps[i];
            while n < target {
                g = self.step(n, g);
                n += 1;
            }
            out[i] = g;
        }
        out
    }

    #[inline]
    fn step(&self, n: u64, g: u64) -> u64 {
        // Gamma(n+1) = -n Gamma(n) if p does not divide n, else -Gamma(n)
        let t = if n.is_multiple_of(self.p) {
            g
        } else {
            g * n % self.m
        };
        (self.m - t) % self.m
    }

    /// `Gamma_p(n)` for every `n` in `[0, p^k)`.
    pub fn table(&self) -> Vec<u32> {
        let mut t = Vec::with_capacity(self.m as usize);
        let mut g = 1u64;
        for n in 0..self.m {
            t.push(g as u32);
            g = self.step(n, g);
        }
        t
    }

    pub fn gamma_p(&self, x: Q) -> Result<u64> {
        Ok(self.eval_many(&[self.rep(x)?])[0])
    }

    /// `Gamma_q^*(x) = prod_{i<f} Gamma_p({p^i x}^*)`.
    pub fn gamma_q_star(&self, x: Q, f: u32, star: Star) -> Result<u64> {
        let mut reps = Vec::with_capacity(f as usize);
        let mut y = x;
        for _ in 0..f {
            reps.push(self.rep(bracket(y, star))?);
            y *= Q::from_integer(self.p as i64);
        }
        Ok(self
            .eval_many(&reps)
            .into_iter()
            .fold(1 % self.m, |a, b| mul_mod(a, b, self.m)))
    }

    /// `(x)^*_{q,m} = Gamma_q^*(x + m/(1-q)) / Gamma_q^*(x)`.
    pub fn pochhammer_padic(&self, x: Q, m: i64, f: u32, star: Star) -> Result<u64> {
        let q = (self.p as i64).pow(f);
        let num = self.gamma_q_star(x + Q::new(m, 1 - q), f, star)?;
        let den = self.gamma_q_star(x, f, star)?;
        let inv = inv_mod(den as i128, self.m as i128).expect("Gamma values are units");
        Ok(mul_mod(num, inv as u64, self.m))
    }

    /// Gauss sum via Gross–Koblitz. The `Inf` direction is `g(psi, a, q)`;
    /// the `Zero` direction is `q / g(psi^-1, -a, q)`.
    pub fn gauss_sum_gk(&self, a: Q, f: u32, star: Star) -> Result<PadicNum> {
        let q = (self.p as i64).pow(f);
        if !(a * Q::from_integer(q - 1)).is_integer() {
            return Err(Error::Precondition(format!(
                "(q-1) * {} is not an integer",
                fmt_q(&a)
            )));
        }
        let eta = eta_star(a, self.p, f, star) * Q::from_integer(self.p as i64 - 1);
        debug_assert!(eta.is_integer());
        let g = self.gamma_q_star(a, f, star)?;
        Ok(PadicNum::graded(
            self.p,
            self.k,
            eta.to_integer(),
            (self.m - g) % self.m,
        ))
    }

    /// `Gauss sum g_p(a)` in the normalisation `iota(g(psi, varpi^((q-1)a))) = g_p(a)`.
    pub fn gauss_padic(&self, a: Q, f: u32) -> Result<PadicNum> {
        self.gauss_sum_gk(a, f, Star::Inf)
    }
}

/// A p-adic number `pi^pi_exp * unit`, `unit` known modulo `p^k`. When
/// `pi_exp` is a multiple of `p - 1` this is an element of `Q_p`.
/// Zero is stored with `unit = 0` and absolute precision `p^(v + k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicNum {
    p: u64,
    k: u32,
    pi_exp: i64,
    unit: u64,
}

impl PadicNum {
    pub fn graded(p: u64, k: u32, pi_exp: i64, unit: u64) -> Self {
        let m = p.pow(k);
        let unit = unit % m;
        assert!(
            k == 0 || !unit.is_multiple_of(p),
            "unit part must be a unit"
        );
        PadicNum { p, k, pi_exp, unit }
    }

    /// `p^v * r` with `r` known modulo `p^k` (not necessarily a unit).
    pub fn from_parts(p: u64, k: u32, v: i64, r: u64) -> Self {
        let m = p.pow(k);
        let mut r = r % m;
        if r == 0 {
            return Self::zero(p, v + k as i64);
        }
        let (mut v, mut k) = (v, k);
        while r.is_multiple_of(p) {
            r /= p;
            v += 1;
            k -= 1;
        }
        let unit = if v.is_odd() {
            (p.pow(k) - r) % p.pow(k)
        } else {
            r
        };
        PadicNum {
            p,
            k,
            pi_exp: v * (p as i64 - 1),
            unit,
        }
    }

    /// Zero known modulo `p^abs`.
    pub fn zero(p: u64, abs: i64) -> Self {
        PadicNum {
            p,
            k: 0,
            pi_exp: abs * (p as i64 - 1),
            unit: 0,
        }
    }

    pub fn from_rational(x: Q, p: u64, k: u32) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::zero(p, k as i64));
        }
        let m = p.pow(k) as i128;
        let (mut n, mut d) = (*x.numer() as i128, *x.denom() as i128);
        let mut v = 0i64;
        while n % p as i128 == 0 {
            n /= p as i128;
            v += 1;
        }
        while d % p as i128 == 0 {
            d /= p as i128;
            v -= 1;
        }
        let r = n.rem_euclid(m) * inv_mod(d, m).unwrap() % m;
        Ok(Self::from_parts(p, k, v, r as u64))
    }

    pub fn from_int(n: i128, p: u64, k: u32) -> Self {
        Self::from_rational(Q::from_integer(n as i64), p, k).unwrap()
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rel_prec(&self) -> u32 {
        self.k
    }
    pub fn pi_exp(&self) -> i64 {
        self.pi_exp
    }
    pub fn unit(&self) -> u64 {
        self.unit
    }
    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    /// `p`-adic valuation (for zero: the absolute precision).
    pub fn valuation(&self) -> Result<i64> {
        self.check_qp()?;
        Ok(self.pi_exp / (self.p as i64 - 1))
    }

    pub fn abs_prec(&self) -> Result<i64> {
        Ok(self.valuation()? + self.k as i64)
    }

    fn check_qp(&self) -> Result<()> {
        if self.pi_exp % (self.p as i64 - 1) != 0 {
            Err(Error::PiExponent(self.pi_exp))
        } else {
            Ok(())
        }
    }

    /// `(v, r)` with value `p^v r`, `r` a unit (or 0) modulo `p^k`.
    pub fn to_parts(&self) -> Result<(i64, u64)> {
        self.check_qp()?;
        let t = self.pi_exp / (self.p as i64 - 1);
        if self.is_zero() {
            return Ok((t, 0));
        }
        let m = self.p.pow(self.k);
        let r = if t.is_odd() {
            (m - self.unit) % m
        } else {
            self.unit
        };
        Ok((t, r))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p);
        if self.is_zero() || o.is_zero() {
            // a zero factor stores its absolute precision in pi_exp
            let v1 = self.pi_exp.div_euclid(self.p as i64 - 1);
            let v2 = o.pi_exp.div_euclid(o.p as i64 - 1);
            let abs = v1 + v2;
            return Self::zero(self.p, abs);
        }
        let k = self.k.min(o.k);
        let m = self.p.pow(k);
        PadicNum {
            p: self.p,
            k,
            pi_exp: self.pi_exp + o.pi_exp,
            unit: mul_mod(self.unit % m, o.unit % m, m),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        let m = self.p.pow(self.k);
        Ok(PadicNum {
            p: self.p,
            k: self.k,
            pi_exp: -self.pi_exp,
            unit: inv_mod(self.unit as i128, m as i128).unwrap() as u64,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let m = self.p.pow(self.k);
        PadicNum {
            unit: (m - self.unit) % m,
            ..*self
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { *self };
        let mut acc = Self::from_int(1, self.p, self.k);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Sum of two elements of `Q_p`.
    pub fn add(&self, o: &Self) -> Result<Self> {
        assert_eq!(self.p, o.p);
        let (v1, r1) = self.to_parts()?;
        let (v2, r2) = o.to_parts()?;
        let abs = (v1 + self.k as i64).min(v2 + o.k as i64);
        let v = v1.min(v2);
        if abs <= v {
            return Ok(Self::zero(self.p, abs));
        }
        let kk = (abs - v) as u32;
        let m = self.p.pow(kk);
        let lift =
            |vi: i64, r: u64| -> u64 { mul_mod(r % m, pow_mod(self.p, (vi - v) as u64, m), m) };
        let a = if self.is_zero() { 0 } else { lift(v1, r1) };
        let b = if o.is_zero() { 0 } else { lift(v2, r2) };
        Ok(Self::from_parts(self.p, kk, v, (a + b) % m))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Equality up to the smaller absolute precision.
    pub fn eq_mod(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// Reduce the relative precision to `k`.
    pub fn truncate(&self, k: u32) -> Self {
        if k >= self.k {
            return *self;
        }
        PadicNum {
            k,
            unit: self.unit % self.p.pow(k),
            ..*self
        }
    }
}

impl fmt::Display for PadicNum {
    /// Digit expansion such as `3*7^-1 + 6 + 6*7 + O(7^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, r) = match self.to_parts() {
            Ok(x) => x,
            Err(_) => return write!(f, "pi^{} * {} + O(p^{})", self.pi_exp, self.unit, self.k),
        };
        let p = self.p;
        let pw = |e: i64| match e {
            0 => String::new(),
            1 => format!("{p}"),
            _ => format!("{p}^{e}"),
        };
        let mut terms = Vec::new();
        let mut r = r;
        for i in 0..self.k as i64 {
            let c = r % p;
            r /= p;
            if c == 0 {
                continue;
            }
            let e = v + i;
            terms.push(match (c, e) {
                (c, 0) => c.to_string(),
                (1, e) => pw(e),
                (c, e) => format!("{c}*{}", pw(e)),
            });
        }
        let abs = v + self.k as i64;
        terms.push(format!("O({p}^{abs})"));
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn gamma_examples() {
        let c = GammaCtx::new(7, 3).unwrap();
        assert_eq!(c.gamma_p(Q::from_integer(1)).unwrap(), 343 - 1);
        assert_eq!(c.gamma_p(Q::from_integer(3)).unwrap(), 343 - 2);
        assert_eq!(c.gamma_p(Q::from_integer(0)).unwrap(), 1);
        assert!(GammaCtx::new(2, 3).is_err());
        assert!(GammaCtx::new(97, 5).is_err());
        let t = c.table();
        for n in 0..343u64 {
            assert_eq!(t[n as usize] as u64, c.gamma_direct(n));
        }
    }

    #[test]
    fn reflection_formula_sign() {
        // Gamma(x) Gamma(1-x) = (-1)^{x0}, x0 in {1..p} the residue of x
        for p in [5u64, 7, 11] {
            let c = GammaCtx::new(p, 3).unwrap();
            let m = c.modulus();
            for (n, d) in [(1, 3), (2, 5), (3, 4), (1, 2), (5, 6)] {
                let x = q(n, d);
                if (d as u64).is_multiple_of(p) {
                    continue;
                }
                let g = mul_mod(c.gamma_p(x).unwrap(), c.gamma_p(q(1, 1) - x).unwrap(), m);
                let x0 = c.rep(x).unwrap() % p;
                let x0 = if x0 == 0 { p } else { x0 };
                let expect = if x0 % 2 == 1 { m - 1 } else { 1 };
                assert_eq!(g, expect, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(Q::zero(), Star::Inf), Q::zero());
        assert_eq!(bracket(Q::zero(), Star::Zero), Q::from_integer(1));
        assert_eq!(bracket(q(-1, 3), Star::Inf), q(2, 3));
        assert_eq!(bracket(q(2, 3), Star::Zero), q(2, 3));
        assert_eq!(bracket(Q::from_integer(1), Star::Zero), Q::from_integer(1));
    }

    #[test]
    fn eta_examples() {
        for p in [3u64, 5, 7, 11] {
            assert_eq!(eta_star(q(1, 2), p, 1, Star::Inf), q(1, 2));
        }
        assert_eq!(eta_qm(q(1, 3), 0, 7, 2, Star::Zero), Q::zero());
        assert_eq!(eta_star(Q::zero(), 5, 3, Star::Zero), Q::from_integer(3));
    }

    #[test]
    fn gamma_q_orbit() {
        let c = GammaCtx::new(7, 4).unwrap();
        let m = c.modulus();
        let lhs = c.gamma_q_star(q(1, 8), 2, Star::Inf).unwrap();
        let rhs = mul_mod(c.gamma_p(q(1, 8)).unwrap(), c.gamma_p(q(7, 8)).unwrap(), m);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pochhammer_examples() {
        let c = GammaCtx::new(5, 4).unwrap();
        assert_eq!(c.pochhammer_padic(q(1, 3), 0, 1, Star::Inf).unwrap(), 1);
        // m = 1 at q = 5: Gamma(1/2 - 1/4) / Gamma(1/2)
        let direct = {
            let a = c.gamma_p(q(1, 4)).unwrap();
            let b = c.gamma_p(q(1, 2)).unwrap();
            mul_mod(
                a,
                inv_mod(b as i128, c.modulus() as i128).unwrap() as u64,
                c.modulus(),
            )
        };
        assert_eq!(
            c.pochhammer_padic(q(1, 2), 1, 1, Star::Inf).unwrap(),
            direct
        );
    }

    #[test]
    fn gauss_sum_trivial_and_product() {
        for p in [5u64, 7, 13] {
            let c = GammaCtx::new(p, 4).unwrap();
            let g0 = c.gauss_sum_gk(Q::zero(), 1, Star::Inf).unwrap();
            assert_eq!(g0.to_parts().unwrap(), (0, p.pow(4) - 1));
            for j in 1..(p as i64 - 1) {
                let a = q(j, p as i64 - 1);
                let g = c.gauss_sum_gk(a, 1, Star::Inf).unwrap();
                let g0 = c.gauss_sum_gk(a, 1, Star::Zero).unwrap();
                // g(a) * (q / g(psi^-1, -a)) ... with g(a) g(psi^-1,-a) = q
                let prod = g.div(&g0).unwrap();
                assert!(prod.eq_mod(&PadicNum::from_int(1, p, 4)).unwrap());
            }
        }
    }

    #[test]
    fn padic_display_and_arith() {
        let x = PadicNum::from_rational(q(-4, 7), 7, 4).unwrap();
        assert_eq!(x.to_string(), "3*7^-1 + 6 + 6*7 + 6*7^2 + O(7^3)");
        let y = PadicNum::from_rational(q(1, 7), 7, 3).unwrap();
        assert_eq!(y.to_string(), "7^-1 + O(7^2)");
        let s = x.add(&y).unwrap();
        assert!(s
            .eq_mod(&PadicNum::from_rational(q(-3, 7), 7, 5).unwrap())
            .unwrap());
        let z = PadicNum::from_rational(q(22, 7), 11, 8).unwrap();
        assert_eq!(z.valuation().unwrap(), 1);
        assert!(z
            .mul(&z.inv().unwrap())
            .eq_mod(&PadicNum::from_int(1, 11, 8))
            .unwrap());
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn default_precision_examples() {
        // weight 1 at q = 7: B = 38, 8 B^2 = 11552 < 7^5
        assert_eq!(default_precision(7, 7, 1).unwrap(), 5);
        assert!(default_precision(97, 97 * 97, 1).is_err());
    }
}
