//! Exact arithmetic in `Z[zeta_N]` modulo the cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{euler_phi, is_prime, mul_mod, pow_mod, primitive_root, teichmuller};
use crate::error::{Error, Result};

pub const MAX_CONDUCTOR: u64 = 120;

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = r[i + dn];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn cyclotomic_table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = MAX_CONDUCTOR as usize;
        let mut tab: Vec<Vec<i64>> = vec![Vec::new(); n_max + 1];
        for n in 1..=n_max {
            let mut p = vec![0i64; n + 1];
            p[0] = -1;
            p[n] = 1;
            for d in 1..n {
                if n % d == 0 {
                    p = poly_divexact(&p, &tab[d]);
                }
            }
            tab[n] = p;
        }
        tab
    })
}

/// The cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> &'static [i64] {
    assert!((1..=MAX_CONDUCTOR).contains(&n), "conductor out of range");
    &cyclotomic_table()[n as usize]
}

/// An element of `Z[zeta_N]` in the power basis `1, zeta, .., zeta^(phi(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: u64,
    coeffs: Vec<i128>,
}

impl CycInt {
    fn check_n(n: u64) -> Result<()> {
        if n == 0 || n > MAX_CONDUCTOR {
            Err(Error::ConductorCap(n))
        } else {
            Ok(())
        }
    }

    pub fn zero(n: u64) -> Self {
        Self::check_n(n).expect("conductor");
        CycInt {
            n,
            coeffs: vec![0; euler_phi(n) as usize],
        }
    }

    pub fn from_int(n: u64, c: i128) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = c;
        x
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// Build from a coefficient vector in the power basis (length `phi(N)`).
    pub fn from_coeffs(n: u64, coeffs: Vec<i128>) -> Result<Self> {
        Self::check_n(n)?;
        if coeffs.len() != euler_phi(n) as usize {
            return Err(Error::Precondition(format!(
                "expected {} coefficients for N = {n}",
                euler_phi(n)
            )));
        }
        Ok(CycInt { n, coeffs })
    }

    /// `sum_e counts[e] * zeta^e` for a vector indexed by `e mod N`.
    pub fn from_exponent_counts(n: u64, counts: &[i128]) -> Self {
        assert_eq!(counts.len() as u64, n);
        Self::reduce(n, counts.to_vec())
    }

    /// `zeta_N^e`.
    pub fn zeta_pow(n: u64, e: i64) -> Self {
        let mut v = vec![0i128; n as usize];
        v[e.rem_euclid(n as i64) as usize] = 1;
        Self::reduce(n, v)
    }

    /// Reduce a polynomial in `zeta` of any length modulo `Phi_N`.
    fn reduce(n: u64, mut v: Vec<i128>) -> Self {
        Self::check_n(n).expect("conductor");
        let nn = n as usize;
        // first fold modulo x^N - 1
        if v.len() > nn {
            for i in nn..v.len() {
                let c = v[i];
                v[i % nn] += c;
            }
            v.truncate(nn);
        }
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    v[i - d + j] -= c * pj as i128;
                }
            }
        }
        v.resize(d, 0);
        CycInt { n, coeffs: v }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if any.
    pub fn as_int(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_n(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.n, o.n))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_n(o)?;
        Ok(CycInt {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_n(o)?;
        Ok(CycInt {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_n(o)?;
        let nn = self.n as usize;
        let mut v = vec![0i128; nn];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[(i + j) % nn] += a * b;
            }
        }
        Ok(Self::reduce(self.n, v))
    }

    pub fn scale(&self, c: i128) -> Self {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division by a rational integer, if every coefficient is divisible.
    pub fn div_exact(&self, c: i128) -> Option<Self> {
        if c == 0 || self.coeffs.iter().any(|a| a % c != 0) {
            return None;
        }
        Some(CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `sigma_j : zeta -> zeta^j`.
    pub fn galois_apply(&self, j: i64) -> Result<Self> {
        let n = self.n as i64;
        if j.gcd(&n) != 1 {
            return Err(Error::NotCoprime(j, n));
        }
        let mut v = vec![0i128; self.n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[(i as i64 * j).rem_euclid(n) as usize] += c;
        }
        Ok(Self::reduce(self.n, v))
    }

    /// Complex conjugation `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    pub fn fixed_by(&self, h: &[u64]) -> bool {
        h.iter().all(|&j| {
            self.galois_apply(j as i64)
                .map(|y| &y == self)
                .unwrap_or(false)
        })
    }

    /// View in `Z[zeta_m]` via `zeta_N = zeta_m^(m/N)`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        Self::check_n(m)?;
        let s = (m / self.n) as usize;
        let mut v = vec![0i128; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * s] += c;
        }
        Ok(Self::reduce(m, v))
    }

    /// Image of `zeta_N` under the embedding indexed by `root_index`
    /// (`zeta_N -> Teich(u)^root_index`, `u = g^((p-1)/N)`).
    pub fn zeta_image(n: u64, p: u64, k: u32, root_index: u64) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(p - 1).is_multiple_of(n) {
            return Err(Error::NotSplit { p, n });
        }
        if root_index.gcd(&n) != 1 {
            return Err(Error::NotCoprime(root_index as i64, n as i64));
        }
        let g = primitive_root(p);
        let u = pow_mod(g, (p - 1) / n, p);
        let m = p.pow(k);
        Ok(pow_mod(teichmuller(u, p, k), root_index, m))
    }

    /// Ring homomorphism `Z[zeta_N] -> Z/p^k`.
    pub fn embed_padic(&self, p: u64, k: u32, root_index: u64) -> Result<u64> {
        let m = p.pow(k);
        let z = Self::zeta_image(self.n, p, k, root_index)?;
        let mut acc = 0u64;
        let mut zp = 1 % m;
        for &c in &self.coeffs {
            let cm = c.rem_euclid(m as i128) as u64;
            acc = (acc + mul_mod(cm, zp, m)) % m;
            zp = mul_mod(zp, z, m);
        }
        Ok(acc)
    }

    /// `max_sigma |sigma(x)|^2`. The flag is `true` when the value is exact,
    /// i.e. every `sigma_j(x) sigma_{-j}(x)` is rational; otherwise an upper
    /// bound from coefficient norms is returned.
    pub fn complex_abs_sq_bound(&self) -> (i128, bool) {
        let y = self * &self.conj();
        let mut best = 0i128;
        for j in 1..=self.n as i64 {
            if let Ok(z) = y.galois_apply(j) {
                match z.as_int() {
                    Some(v) => best = best.max(v),
                    None => {
                        let s: i128 = self.coeffs.iter().map(|c| c.abs()).sum();
                        return (s * s, false);
                    }
                }
            }
        }
        (best, true)
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        self.try_add(o).expect("conductor mismatch")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        self.try_sub(o).expect("conductor mismatch")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        self.try_mul(o).expect("conductor mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, m) => m.to_string(),
                (false, 1) => mono,
                (false, m) => format!("{m}*{mono}"),
            };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field(
            "coeffs",
            &self.coeffs.iter().map(|c| *c as i64).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        let i = CycInt::zeta_pow(4, 1);
        assert_eq!(&i * &i, CycInt::from_int(4, -1));
        let w = CycInt::zeta_pow(3, 1);
        assert_eq!(&w + &CycInt::zeta_pow(3, 2), CycInt::from_int(3, -1));
        assert_eq!(CycInt::zeta_pow(7, 7), CycInt::one(7));
    }

    #[test]
    fn phi_table() {
        assert_eq!(cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
        for n in 1..=120 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn galois_examples() {
        let z = CycInt::zeta_pow(8, 1);
        assert_eq!(z.galois_apply(3).unwrap(), CycInt::zeta_pow(8, 3));
        assert_eq!(z.galois_apply(1).unwrap(), z);
        assert!(z.galois_apply(2).is_err());
        let sqrt2 = &z + &CycInt::zeta_pow(8, -1);
        assert!(sqrt2.fixed_by(&[1, 7]));
        assert!(!z.fixed_by(&[1, 7]));
        assert!(z.fixed_by(&[1]));
        assert_eq!(&sqrt2 * &sqrt2, CycInt::from_int(8, 2));
    }

    #[test]
    fn embedding_examples() {
        let m1 = CycInt::from_int(5, -1);
        assert_eq!(m1.embed_padic(11, 3, 1).unwrap(), 11u64.pow(3) - 1);
        let i = CycInt::zeta_pow(4, 1).embed_padic(5, 1, 1).unwrap();
        // smallest primitive root of 5 is 2, so zeta_4 -> 2
        assert_eq!(i, 2);
        assert!(CycInt::zeta_pow(4, 1).embed_padic(7, 1, 1).is_err());
    }

    #[test]
    fn abs_examples() {
        assert_eq!(CycInt::zeta_pow(9, 2).complex_abs_sq_bound(), (1, true));
        let x = &CycInt::one(4) + &CycInt::zeta_pow(4, 1);
        assert_eq!(x.complex_abs_sq_bound(), (2, true));
        assert_eq!(CycInt::from_int(6, 3).complex_abs_sq_bound(), (9, true));
    }

    #[test]
    fn lift_and_display() {
        let z = CycInt::zeta_pow(4, 1);
        assert_eq!(z.lift(8).unwrap(), CycInt::zeta_pow(8, 2));
        assert_eq!(CycInt::from_int(3, 0).to_string(), "0");
        let x = &CycInt::from_int(5, 2) - &CycInt::zeta_pow(5, 2);
        assert_eq!(x.to_string(), "2 - z^2");
        assert_eq!(
            serde_json::to_string(&CycInt::zeta_pow(4, 1)).unwrap(),
            r#"{"N":4,"coeffs":[0,1]}"#
        );
    }
}
