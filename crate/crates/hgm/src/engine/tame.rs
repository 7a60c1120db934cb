//! Frobenius traces at tame primes where the motive is unramified but the
//! Euler curve is singular: `xi` reduces to `0`, `1` or `infinity` and the
//! corresponding local monodromy order divides the valuation.
//!
//! These formulas are conditional: the gcd side conditions are checked and
//! reported, never assumed.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{is_prime, mult_order};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ffield::{chi_p, jacobi_sum, CharHandle, FqTable};
use crate::hgdata::{fmt_q, q_valuation, units, HgData, Order, Place, Q};
use crate::padic::PadicNum;

use super::exact::CycFrac;
use super::jacobi::JacobiDatum;

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TameReport {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub place: String,
    pub valuation: i64,
    pub xi_tilde: String,
    /// labelling `(a, b, c, d)` the formula was applied to
    pub labelling: [String; 4],
    pub hypotheses: Vec<Hypothesis>,
    pub conditional: bool,
    /// exact trace and its two Frobenius eigenvalues
    pub value: String,
    pub eigenvalues: [String; 2],
    /// `|lambda_i|^2`, equal at every embedding
    pub abs_sq: [String; 2],
    pub weil_ok: bool,
    pub galois_ok: bool,
    pub padic: Option<String>,
    #[serde(skip)]
    pub exact: Option<CycFrac>,
    #[serde(skip)]
    pub padic_value: Option<PadicNum>,
}

type Labelling = (Q, Q, Q, Q);

fn nint(x: Q, n: u64) -> i64 {
    (x * Q::from_integer(n as i64)).to_integer()
}

fn gcd3(n: u64, x: i64, y: i64) -> i64 {
    (n as i64).gcd(&x).gcd(&y)
}

/// The two gcd side conditions for a labelling and place.
pub fn hypotheses(l: Labelling, n: u64, place: Place) -> [(String, bool); 2] {
    let (a, b, c, d) = l;
    let pairs: [(&str, Q, &str, Q); 2] = match place {
        Place::Zero => [("d-b", d - b, "b-c", b - c), ("d-c", d - c, "a-d", a - d)],
        Place::One => [
            ("d-b", d - b, "a+b-c-d", a + b - c - d),
            ("b-c", b - c, "a-d", a - d),
        ],
        Place::Infinity => [("a-b", a - b, "b-c", b - c), ("d-b", d - b, "a-d", a - d)],
    };
    pairs.map(|(sx, x, sy, y)| {
        (
            format!("gcd(N, ({sx})N, ({sy})N) = 1"),
            gcd3(n, nint(x, n), nint(y, n)) == 1,
        )
    })
}

struct Chars<'a> {
    tbl: &'a FqTable,
    chi: CharHandle,
    n: u64,
}

impl Chars<'_> {
    fn at(&self, x: Q, e: i64) -> Result<CycInt> {
        let el = self.tbl.from_q(x)?;
        Ok(self.chi.pow(e).value(self.tbl, el))
    }
    fn minus_one(&self, e: i64) -> i128 {
        self.chi.pow(e).at_minus_one(self.tbl) as i128
    }
    fn j(&self, u: i64, v: i64) -> Result<CycInt> {
        jacobi_sum(self.tbl, &self.chi.pow(u), &self.chi.pow(v))
    }
}

/// Exact Frobenius eigenvalues `(lambda_1, lambda_2)` of the tame formula
/// for one labelling; the trace is their sum.
pub fn tame_eigenvalues(
    l: Labelling,
    n: u64,
    place: Place,
    xi_tilde: Q,
    tbl: &FqTable,
) -> Result<[CycFrac; 2]> {
    let (a, b, c, d) = l;
    let ch = Chars {
        tbl,
        chi: chi_p(tbl, n)?,
        n,
    };
    let e = |x: Q| nint(x, ch.n);
    let (t1, t2) = match place {
        Place::Zero => (
            ch.at(xi_tilde, e(d))?.try_mul(&ch.j(e(d - b), e(b - c))?)?,
            ch.at(xi_tilde, e(c))?
                .try_mul(&ch.j(e(d - c), e(a - d))?)?
                .scale(ch.minus_one(e(b - c))),
        ),
        Place::One => (
            ch.j(e(d - b), e(a + b - c - d))?,
            // colliding branch points 1 and 1/xi carry exponents (b-c)N, (a-d)N
            ch.at(xi_tilde, e(a + b - c - d))?
                .try_mul(&ch.j(e(b - c), e(a - d))?)?
                .scale(ch.minus_one(e(a - d))),
        ),
        Place::Infinity => (
            ch.at(xi_tilde, e(b))?.try_mul(&ch.j(e(d - b), e(a - d))?)?,
            ch.at(xi_tilde, e(a))?
                .try_mul(&ch.j(e(a - b), e(b - c))?)?
                .scale(ch.minus_one(e(a - d))),
        ),
    };
    let jm = JacobiDatum::from_lists(&[-a, -b, c, d], &[c - b, d - a])?;
    let jx = jm.exact_value_in(tbl, tbl.q())?;
    let jv = CycFrac::from(&jx);
    let jinv = CycFrac::new(jv.num.lift(n)?, jv.den)?.inv()?;
    let pref = jinv.mul(&CycFrac::from_int(n, -ch.minus_one(e(d - b))))?;
    Ok([
        pref.mul(&CycFrac::new(t1, 1)?)?,
        pref.mul(&CycFrac::new(t2, 1)?)?,
    ])
}

fn labellings(l: Labelling) -> [Labelling; 4] {
    let (a, b, c, d) = l;
    [(a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c)]
}

fn place_name(p: Place) -> &'static str {
    match p {
        Place::Zero => "0",
        Place::One => "1",
        Place::Infinity => "inf",
    }
}

pub fn parse_place(s: &str) -> Result<Place> {
    match s {
        "0" => Ok(Place::Zero),
        "1" => Ok(Place::One),
        "inf" | "infinity" => Ok(Place::Infinity),
        _ => Err(Error::Malformed(s.to_string())),
    }
}

/// Apply the tame formula at `place`; `f` defaults to the order of `p`
/// modulo `N`, so that `chi_p` is defined over `F_q`.
pub fn tame_trace(
    d: &HgData,
    xi: Q,
    p: u64,
    f: Option<u32>,
    place: Place,
    k: u32,
) -> Result<TameReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = d.n();
    if n.is_multiple_of(p) {
        return Err(Error::WildPrime(p));
    }
    let mono = d.monodromy_orders()?;
    let one = Q::from_integer(1);
    let (v, order, tilde) = match place {
        Place::Zero => {
            let v = q_valuation(xi, p);
            (v, mono.r0, xi / Q::from_integer(p as i64).pow(v as i32))
        }
        Place::One => {
            let v = if xi == one {
                0
            } else {
                q_valuation(xi - one, p)
            };
            (
                v,
                mono.r1,
                (xi - one) / Q::from_integer(p as i64).pow(v as i32),
            )
        }
        Place::Infinity => {
            let v = q_valuation(xi, p);
            (-v, mono.rinf, xi / Q::from_integer(p as i64).pow(v as i32))
        }
    };
    let ok = v > 0 && matches!(order, Order::Finite(r) if (v as u64).is_multiple_of(r));
    if !ok {
        return Err(Error::Precondition(format!(
            "xi = {} at p = {p}: valuation {v} at {} is not a positive multiple of the monodromy order {order}",
            fmt_q(&xi),
            place_name(place)
        )));
    }
    let f = f.unwrap_or(if n <= 2 {
        1
    } else {
        mult_order(p % n, n) as u32
    });
    let tbl = FqTable::build(p, f)?;
    if (tbl.q() - 1) % n != 0 {
        return Err(Error::CharOrder {
            order: n,
            qm1: tbl.q() - 1,
        });
    }
    let base = d.abcd()?;
    let chosen = labellings(base)
        .into_iter()
        .find(|l| hypotheses(*l, n, place).iter().all(|h| h.1));
    let Some(l) = chosen else {
        let hs = hypotheses(base, n, place);
        return Err(Error::Inapplicable(
            hs.iter()
                .filter(|h| !h.1)
                .map(|h| format!("{} fails", h.0))
                .collect::<Vec<_>>()
                .join("; "),
        ));
    };
    let lam = tame_eigenvalues(l, n, place, tilde, &tbl)?;
    let value = lam[0].add(&lam[1])?;
    let expect = Q::from_integer(tbl.q() as i64).pow(d.weight() as i32);
    let abs: Vec<Option<Q>> = lam.iter().map(|x| x.abs_sq()).collect();
    let weil_ok = abs.iter().all(|a| *a == Some(expect));
    let mut galois_ok = true;
    for j in units(n) {
        let jq = Q::from_integer(j as i64);
        let lj = (l.0 * jq, l.1 * jq, l.2 * jq, l.3 * jq);
        let lam_j = tame_eigenvalues(lj, n, place, tilde, &tbl)?;
        let vj = lam_j[0].add(&lam_j[1])?;
        galois_ok &= value.galois_apply(j as i64)? == vj;
    }
    let padic_value = if (p - 1).is_multiple_of(n) && p != 2 {
        Some(value.embed(p, k, 1)?)
    } else {
        None
    };
    let show = |x: Option<Q>| x.map(|q| fmt_q(&q)).unwrap_or_else(|| "irrational".into());
    Ok(TameReport {
        p,
        f,
        q: tbl.q(),
        place: place_name(place).into(),
        valuation: v,
        xi_tilde: fmt_q(&tilde),
        labelling: [fmt_q(&l.0), fmt_q(&l.1), fmt_q(&l.2), fmt_q(&l.3)],
        hypotheses: hypotheses(l, n, place)
            .into_iter()
            .map(|(name, holds)| Hypothesis { name, holds })
            .collect(),
        conditional: true,
        value: value.to_string(),
        eigenvalues: [lam[0].to_string(), lam[1].to_string()],
        abs_sq: [show(abs[0]), show(abs[1])],
        weil_ok,
        galois_ok,
        padic: padic_value.map(|x| x.to_string()),
        exact: Some(value),
        padic_value,
    })
}
