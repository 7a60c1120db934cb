//! Hypergeometric data: parsing, genericity, the symmetry group `H`,
//! Euler-curve exponents, monodromy orders, zig-zag Hodge polynomials,
//! twists and the `~_l` relation.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{euler_phi, is_prime, lcm_all, valuation};
use crate::error::{Error, Result};

/// Rationals used for parameters.
pub type Q = Ratio<i64>;

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Denominator of `x mod Z` (1 for integers).
pub fn den(x: Q) -> u64 {
    frac(x).denom().unsigned_abs()
}

pub fn is_integral(x: Q) -> bool {
    x.is_integer()
}

/// Format a rational as `a/b` (or `a` for integers).
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse a single fraction such as `-3/8`, `1`, ` 4/3 `.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Malformed(s.to_string()));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: i64 = num.parse().map_err(|_| Error::Malformed(s.to_string()))?;
    let d: i64 = den.parse().map_err(|_| Error::Malformed(s.to_string()))?;
    if d == 0 {
        return Err(Error::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(n, d))
}

/// A hypergeometric datum `(alpha, beta)` with entries reduced into `[0,1)`
/// and sorted ascending within each vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HgData {
    alpha: Vec<Q>,
    beta: Vec<Q>,
    /// Least common denominator `N` of all entries.
    n: u64,
}

impl HgData {
    pub fn new(alpha: Vec<Q>, beta: Vec<Q>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::RankMismatch(alpha.len(), beta.len()));
        }
        if alpha.is_empty() {
            return Err(Error::Malformed("empty parameter list".into()));
        }
        let mut alpha: Vec<Q> = alpha.into_iter().map(frac).collect();
        let mut beta: Vec<Q> = beta.into_iter().map(frac).collect();
        alpha.sort();
        beta.sort();
        let n = lcm_all(alpha.iter().chain(beta.iter()).map(|x| den(*x)));
        Ok(HgData { alpha, beta, n })
    }

    /// Parse the grammar `a1,a2,...;b1,b2,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once(';')
            .ok_or_else(|| Error::Malformed(text.to_string()))?;
        if b.contains(';') {
            return Err(Error::Malformed(text.to_string()));
        }
        let alpha = a.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        let beta = b.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Self::new(alpha, beta)
    }

    pub fn alpha(&self) -> &[Q] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Q] {
        &self.beta
    }

    /// The least common denominator `N`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    /// `(a, b, c, d)` in canonical ascending order, entries in `[0,1)`.
    pub fn abcd(&self) -> Result<(Q, Q, Q, Q)> {
        if self.rank() != 2 {
            return Err(Error::Rank(self.rank()));
        }
        Ok((self.alpha[0], self.alpha[1], self.beta[0], self.beta[1]))
    }

    pub fn is_generic(&self) -> bool {
        self.alpha
            .iter()
            .all(|a| self.beta.iter().all(|b| !is_integral(*a - *b)))
    }

    fn require_generic(&self) -> Result<()> {
        if self.is_generic() {
            Ok(())
        } else {
            Err(Error::NonGeneric)
        }
    }

    /// Multiply every entry by `j` (mod Z).
    pub fn scale(&self, j: i64) -> HgData {
        let j = Q::from_integer(j);
        HgData::new(
            self.alpha.iter().map(|x| *x * j).collect(),
            self.beta.iter().map(|x| *x * j).collect(),
        )
        .expect("same rank")
    }

    /// Hypergeometric twist: shift every entry by `rho`.
    pub fn twist(&self, rho: Q) -> HgData {
        HgData::new(
            self.alpha.iter().map(|x| *x + rho).collect(),
            self.beta.iter().map(|x| *x + rho).collect(),
        )
        .expect("same rank")
    }

    /// `(-beta, -alpha)`, the datum of the inversion identity.
    pub fn inverse(&self) -> HgData {
        HgData::new(
            self.beta.iter().map(|x| -*x).collect(),
            self.alpha.iter().map(|x| -*x).collect(),
        )
        .expect("same rank")
    }

    pub fn symmetry_group(&self) -> SymmetryInfo {
        let n = self.n;
        let h: Vec<u64> = (1..=n.max(1))
            .filter(|j| j.gcd(&n) == 1)
            .filter(|&j| {
                let s = self.scale(j as i64);
                s.alpha == self.alpha && s.beta == self.beta
            })
            .map(|j| j % n.max(1))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let h = if n == 1 { vec![0] } else { h };
        let phi = euler_phi(n);
        SymmetryInfo {
            base_field_degree: phi / h.len() as u64,
            contains_minus_one: n <= 2 || h.contains(&(n - 1)),
            h,
        }
    }

    pub fn euler_exponents(&self) -> Result<EulerExponents> {
        let (a, b, c, d) = self.abcd()?;
        Ok(EulerExponents::from_ordering(a, b, c, d, self.n))
    }

    /// The irreducibility criterion for Euler's curve.
    pub fn irr_condition(&self) -> Result<bool> {
        let (a, b, c, d) = self.abcd()?;
        self.require_generic()?;
        Ok(lcm_all([den(d - b), den(b - c), den(a - d)]) == self.n)
    }

    pub fn monodromy_orders(&self) -> Result<MonodromyInfo> {
        let (a, b, c, d) = self.abcd()?;
        self.require_generic()?;
        let r0 = if is_integral(c - d) {
            Order::Infinite
        } else {
            Order::Finite(den(c).lcm(&den(d)))
        };
        let rinf = if is_integral(a - b) {
            Order::Infinite
        } else {
            Order::Finite(den(a).lcm(&den(b)))
        };
        let delta = a + b - c - d;
        let r1 = if is_integral(delta) {
            Order::Infinite
        } else {
            Order::Finite(den(delta))
        };
        Ok(MonodromyInfo { r0, r1, rinf })
    }

    /// Good / tame / wild classification of `p` for the specialisation `xi`.
    pub fn classify_prime(&self, xi: Q, p: u64, _f: u32) -> Result<PrimeClass> {
        if xi.is_zero() || xi.is_one() {
            return Err(Error::Degenerate(format!("xi = {}", fmt_q(&xi))));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.n.is_multiple_of(p) {
            return Ok(PrimeClass::Wild);
        }
        let v0 = q_valuation(xi, p);
        let v1 = q_valuation(xi - Q::one(), p);
        let orders = if self.rank() == 2 && self.is_generic() {
            Some(self.monodromy_orders()?)
        } else {
            None
        };
        let (place, v, order) = if v0 > 0 {
            (Place::Zero, v0, orders.map(|o| o.r0))
        } else if v1 > 0 {
            (Place::One, v1, orders.map(|o| o.r1))
        } else if v0 < 0 {
            (Place::Infinity, -v0, orders.map(|o| o.rinf))
        } else {
            return Ok(PrimeClass::Good);
        };
        let unramified = matches!(order, Some(Order::Finite(r)) if (v as u64).is_multiple_of(r));
        Ok(PrimeClass::Tame {
            place,
            valuation: v,
            order,
            unramified,
        })
    }

    /// Zig-zag Hodge polynomial of the conjugate datum `j * (alpha, beta)`.
    pub fn zigzag_hodge(&self, j: i64) -> Result<HodgePolynomial> {
        let n = self.n as i64;
        if j.gcd(&n) != 1 {
            return Err(Error::NotCoprime(j, n));
        }
        let d = self.scale(j);
        d.require_generic()?;
        let r = d
            .alpha
            .iter()
            .chain(d.beta.iter())
            .filter(|x| x.is_zero())
            .count() as i64;
        // red entries live in (0,1], blue in [0,1)
        let mut seq: Vec<(Q, bool)> = d
            .alpha
            .iter()
            .map(|a| (if a.is_zero() { Q::one() } else { *a }, false))
            .chain(d.beta.iter().map(|b| (*b, true)))
            .collect();
        seq.sort();
        let mut pos = 0i64;
        let mut terms: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        for (_, blue) in seq {
            if blue {
                *terms.entry((-pos, pos + r - 1)).or_insert(0) += 1;
                pos -= 1;
            } else {
                pos += 1;
            }
        }
        Ok(HodgePolynomial { terms })
    }

    /// Hodge polynomials for every `j` in `(Z/N)^x`.
    pub fn hodge_all_embeddings(&self) -> Result<Vec<(u64, HodgePolynomial)>> {
        units(self.n)
            .into_iter()
            .map(|j| Ok((j, self.zigzag_hodge(j as i64)?)))
            .collect()
    }

    /// Hodge numbers summed over all embeddings of `Q(zeta_N)`.
    pub fn hodge_totals(&self) -> Result<BTreeMap<(i64, i64), u32>> {
        let mut out = BTreeMap::new();
        for (_, h) in self.hodge_all_embeddings()? {
            for (k, m) in h.terms {
                *out.entry(k).or_insert(0) += m;
            }
        }
        Ok(out)
    }

    /// Tate twist of the effective normalization: the shift making every
    /// Hodge exponent of every conjugate non-negative with minimum zero.
    pub fn effective_offset(&self) -> Result<i64> {
        let mut lo = i64::MAX;
        for (_, h) in self.hodge_all_embeddings()? {
            for &(x, y) in h.terms.keys() {
                lo = lo.min(x).min(y);
            }
        }
        Ok(-lo)
    }

    /// Motivic weight `r - 1` of the un-normalized motive.
    pub fn weight(&self) -> i64 {
        self.alpha
            .iter()
            .chain(self.beta.iter())
            .filter(|x| x.is_zero())
            .count() as i64
            - 1
    }
}

impl fmt::Display for HgData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(fmt_q).collect();
        let b: Vec<String> = self.beta.iter().map(fmt_q).collect();
        write!(f, "{};{}", a.join(","), b.join(","))
    }
}

impl Serialize for HgData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HgData", 3)?;
        st.serialize_field("alpha", &self.alpha.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.serialize_field("beta", &self.beta.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.serialize_field("N", &self.n)?;
        st.end()
    }
}

/// `(Z/N)^x` as sorted representatives in `[1, N]`.
pub fn units(n: u64) -> Vec<u64> {
    if n <= 1 {
        return vec![1];
    }
    (1..n).filter(|j| j.gcd(&n) == 1).collect()
}

/// `p`-adic valuation of a nonzero rational.
pub fn q_valuation(x: Q, p: u64) -> i64 {
    assert!(!x.is_zero());
    valuation(*x.numer() as i128, p) as i64 - valuation(*x.denom() as i128, p) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SymmetryInfo {
    #[serde(rename = "H")]
    pub h: Vec<u64>,
    pub base_field_degree: u64,
    pub contains_minus_one: bool,
}

/// Exponents of Euler's curve `y^N = x^A (1-x)^B (1-zx)^C z^D`, in `[0,N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[allow(non_snake_case)]
pub struct EulerExponents {
    pub A: u64,
    pub B: u64,
    pub C: u64,
    pub D: u64,
    pub N: u64,
}

impl EulerExponents {
    pub fn from_ordering(a: Q, b: Q, c: Q, d: Q, n: u64) -> Self {
        let one = Q::one();
        let red = |x: Q| -> u64 {
            let y = x * Q::from_integer(n as i64);
            debug_assert!(y.is_integer());
            y.to_integer().rem_euclid(n as i64) as u64
        };
        EulerExponents {
            A: red(d - b),
            B: red(b + one - c),
            C: red(one + a - d),
            D: red(d - one),
            N: n,
        }
    }
}

/// Order of a local monodromy matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(r) => write!(f, "{r}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(r) => s.serialize_u64(*r),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MonodromyInfo {
    pub r0: Order,
    pub r1: Order,
    pub rinf: Order,
}

/// Which cusp of the parameter line `xi` reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Zero,
    One,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeClass {
    Good,
    Tame {
        place: Place,
        valuation: i64,
        order: Option<Order>,
        unramified: bool,
    },
    Wild,
}

impl PrimeClass {
    pub fn label(&self) -> &'static str {
        match self {
            PrimeClass::Good => "good",
            PrimeClass::Tame {
                unramified: true, ..
            } => "tame, motive unramified",
            PrimeClass::Tame { .. } => "tame",
            PrimeClass::Wild => "wild",
        }
    }
}

/// `sum m * x^a y^b`, keyed by `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HodgePolynomial {
    pub terms: BTreeMap<(i64, i64), u32>,
}

impl HodgePolynomial {
    pub fn rank(&self) -> u32 {
        self.terms.values().sum()
    }

    fn monomial(x: i64, y: i64) -> String {
        let part = |v: &str, e: i64| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let parts: Vec<String> = [part("x", x), part("y", y)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for HodgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(String, u32)> = self
            .terms
            .iter()
            .map(|(&(x, y), &m)| (Self::monomial(x, y), m))
            .collect();
        items.sort();
        let rendered: Vec<String> = items
            .into_iter()
            .map(|(mono, m)| match (mono.is_empty(), m) {
                (true, m) => m.to_string(),
                (false, 1) => mono,
                (false, m) => format!("{m}*{mono}"),
            })
            .collect();
        if rendered.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", rendered.join(" + "))
        }
    }
}

/// `x ~_l y`: the denominator of `x - y` is a power of `l`.
pub fn sim_l(x: Q, y: Q, l: u64) -> bool {
    let mut d = den(x - y);
    while d.is_multiple_of(l) {
        d /= l;
    }
    d == 1
}

fn vec_sim_l(xs: &[Q], ys: &[Q], l: u64) -> bool {
    // bipartite matching by backtracking; ranks are tiny
    fn go(i: usize, xs: &[Q], ys: &[Q], used: &mut Vec<bool>, l: u64) -> bool {
        if i == xs.len() {
            return true;
        }
        for j in 0..ys.len() {
            if !used[j] && sim_l(xs[i], ys[j], l) {
                used[j] = true;
                if go(i + 1, xs, ys, used, l) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    xs.len() == ys.len() && go(0, xs, ys, &mut vec![false; ys.len()], l)
}

/// Entry-wise `~_l` after some pairing of the entries.
pub fn congruent_mod_l(d1: &HgData, d2: &HgData, l: u64) -> bool {
    d1.rank() == d2.rank() && vec_sim_l(&d1.alpha, &d2.alpha, l) && vec_sim_l(&d1.beta, &d2.beta, l)
}

/// Absolute value helper kept local to avoid pulling in more traits.
pub fn q_abs(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn hd(s: &str) -> HgData {
        HgData::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let d = hd("1/8,7/8;3/8,5/8");
        assert_eq!(d.n(), 8);
        let l = hd("1/2,1/2;1,1");
        assert_eq!(l.n(), 2);
        assert!(l.beta().iter().all(|x| x.is_zero()));
        assert_eq!(hd("1/3,4/3;0,1/2"), hd("1/3,1/3;0,1/2"));
        assert_eq!(hd("1/3,4/3;0,1/2").n(), 6);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            HgData::parse("1/0,1;1,1").unwrap_err().code(),
            "zero_denominator"
        );
        assert_eq!(
            HgData::parse("1/2;1,1").unwrap_err().code(),
            "rank_mismatch"
        );
        assert_eq!(
            HgData::parse("a/2,1;1,1").unwrap_err().code(),
            "malformed_fraction"
        );
        assert_eq!(
            HgData::parse("1/2,1/2").unwrap_err().code(),
            "malformed_fraction"
        );
        assert_eq!(
            HgData::parse("1/2,;1,1").unwrap_err().code(),
            "malformed_fraction"
        );
    }

    #[test]
    fn genericity() {
        assert!(hd("1/2,1/2;1,1").is_generic());
        assert!(!hd("1/2,1/3;1/2,1/4").is_generic());
        assert!(hd("1/8,7/8;3/8,5/8").is_generic());
    }

    #[test]
    fn symmetry_examples() {
        let s = hd("1/8,7/8;3/8,5/8").symmetry_group();
        assert_eq!(s.h, vec![1, 7]);
        assert_eq!(s.base_field_degree, 2);
        assert!(s.contains_minus_one);
        let s = hd("1/24,11/24,17/24,19/24;1/4,1/2,3/4,1").symmetry_group();
        assert_eq!(s.h.len(), 4);
        assert_eq!(s.base_field_degree, 2);
        // Q(sqrt(-8)) is imaginary: -1 is not in H
        assert!(!s.contains_minus_one);
        let s = hd("1/2,1/2;1,1").symmetry_group();
        assert_eq!(s.h, vec![1]);
        assert_eq!(s.base_field_degree, 1);
    }

    #[test]
    fn exponents_examples() {
        let e = hd("1/2,1/2;1,1").euler_exponents().unwrap();
        assert_eq!((e.A, e.B, e.C, e.D, e.N), (1, 1, 1, 0, 2));
        let e = hd("1/8,7/8;3/8,5/8").euler_exponents().unwrap();
        assert_eq!((e.A, e.B, e.C, e.D), (6, 4, 4, 5));
        // the Shimura curve uses the ordering c = 3/5, d = 1
        let e = EulerExponents::from_ordering(q(1, 5), q(4, 5), q(3, 5), Q::one(), 5);
        assert_eq!((e.A, e.B, e.C, e.D, e.N), (1, 1, 1, 0, 5));
        // canonical ascending order gives a different (equivalent) model
        let e = hd("1/5,4/5;3/5,1").euler_exponents().unwrap();
        assert_eq!((e.A, e.B, e.C, e.D), (4, 4, 3, 3));
    }

    #[test]
    fn irr_examples() {
        assert!(!hd("1/8,7/8;3/8,5/8").irr_condition().unwrap());
        assert!(hd("1/2,1/2;1,1").irr_condition().unwrap());
        assert!(hd("1/5,4/5;3/5,1").irr_condition().unwrap());
        assert_eq!(
            hd("1/2,1/3;1/2,1/4").irr_condition().unwrap_err(),
            Error::NonGeneric
        );
    }

    #[test]
    fn monodromy_examples() {
        use Order::*;
        let m = hd("1/2,1/2;1,1").monodromy_orders().unwrap();
        assert_eq!((m.r0, m.r1, m.rinf), (Infinite, Infinite, Infinite));
        let m = hd("1/5,4/5;3/5,1").monodromy_orders().unwrap();
        assert_eq!((m.r0, m.r1, m.rinf), (Finite(5), Finite(5), Finite(5)));
        // a + b - c - d = 0 here, so M_1 is unipotent
        let m = hd("1/8,7/8;3/8,5/8").monodromy_orders().unwrap();
        assert_eq!((m.r0, m.r1, m.rinf), (Finite(8), Infinite, Finite(8)));
    }

    #[test]
    fn classify_examples() {
        let d = hd("1/8,7/8;3/8,5/8");
        let nine = Q::from_integer(9);
        assert_eq!(d.classify_prime(nine, 2, 1).unwrap(), PrimeClass::Wild);
        match d.classify_prime(nine, 3, 1).unwrap() {
            PrimeClass::Tame {
                place,
                valuation,
                unramified,
                ..
            } => {
                assert_eq!(place, Place::Zero);
                assert_eq!(valuation, 2);
                assert!(!unramified);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(d.classify_prime(nine, 7, 1).unwrap(), PrimeClass::Good);
        assert!(d.classify_prime(Q::one(), 7, 1).is_err());
        // r0 = 5 divides v_p(xi) = 5
        let s = hd("1/5,4/5;3/5,1");
        let c = s
            .classify_prime(Q::from_integer(3i64.pow(5) * 2), 3, 1)
            .unwrap();
        assert_eq!(c.label(), "tame, motive unramified");
        let c = s.classify_prime(q(1, 11), 11, 1).unwrap();
        assert!(matches!(
            c,
            PrimeClass::Tame {
                place: Place::Infinity,
                valuation: 1,
                ..
            }
        ));
    }

    #[test]
    fn zigzag_examples() {
        assert_eq!(
            hd("1/2,1/2;0,0").zigzag_hodge(1).unwrap().to_string(),
            "x + y"
        );
        assert_eq!(
            hd("1/8,7/8;3/8,5/8").zigzag_hodge(1).unwrap().to_string(),
            "x^-1 + y^-1"
        );
        assert_eq!(
            hd("3/8,5/8;1/8,7/8").zigzag_hodge(1).unwrap().to_string(),
            "x^-1 + y^-1"
        );
        let d = hd("1/2,1/2;0,1/4");
        assert_eq!(d.zigzag_hodge(1).unwrap().to_string(), "1 + x*y^-1");
        assert_eq!(d.zigzag_hodge(3).unwrap().to_string(), "1 + x^-1*y");
        assert_eq!(d.effective_offset().unwrap(), 1);
        assert_eq!(hd("1/8,7/8;3/8,5/8").effective_offset().unwrap(), 1);
        assert_eq!(hd("1/2,1/2;1,1").effective_offset().unwrap(), 0);
        assert!(d.zigzag_hodge(2).is_err());
    }

    #[test]
    fn shimura_tables() {
        let d = hd("1/5,4/5;3/5,1");
        let got: Vec<String> = d
            .hodge_all_embeddings()
            .unwrap()
            .into_iter()
            .map(|(_, h)| h.to_string())
            .collect();
        assert_eq!(got, ["2", "1 + x*y^-1", "1 + x^-1*y", "2"]);
        let tot = d.hodge_totals().unwrap();
        let row: Vec<u32> = (-2..=2)
            .rev()
            .map(|p| *tot.get(&(p, -p)).unwrap_or(&0))
            .collect();
        assert_eq!(row, [0, 1, 6, 1, 0]);
        let d7 = hd("1/7,6/7;5/7,1");
        let got: Vec<String> = d7
            .hodge_all_embeddings()
            .unwrap()
            .into_iter()
            .map(|(_, h)| h.to_string())
            .collect();
        assert_eq!(got, ["2", "2", "1 + x*y^-1", "1 + x^-1*y", "2", "2"]);
    }

    #[test]
    fn twist_examples() {
        let d = hd("1/24,11/24,17/24,19/24;1/4,1/2,3/4,1");
        assert_eq!(d.twist(q(-1, 8)), hd("1/3,7/12,2/3,11/12;1/8,3/8,5/8,7/8"));
        assert_eq!(d.twist(Q::zero()), d);
        assert_eq!(hd("1/2,1/2;1,1").twist(q(1, 2)), hd("1,1;1/2,1/2"));
    }

    #[test]
    fn congruence_examples() {
        let l = hd("1/2,1/2;1,1");
        let m = hd("1/6,-1/6;1,1");
        assert!(congruent_mod_l(&l, &m, 3));
        assert!(congruent_mod_l(&l, &l, 7));
        assert!(!congruent_mod_l(&l, &m, 5));
    }
}
