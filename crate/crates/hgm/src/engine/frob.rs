//! Frobenius traces and degree-2 Euler factors.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hgdata::{fmt_q, HgData, Q};
use crate::padic::PadicNum;
use crate::recognize::{recognize_poly, recognize_rational};

use super::hsum::{choose_f, default_k, HgmSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Padic,
    Oracle,
}

/// Euler factor data at one prime: `L(T) = 1 - t1 T + (t1^2 - t2)/2 T^2`.
#[derive(Clone, Debug)]
pub struct FrobData {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub k: u32,
    pub trace1: PadicNum,
    pub trace2: PadicNum,
    pub lpoly: Vec<PadicNum>,
    pub provenance: Provenance,
    /// Tate twist making the motive effective (for `--integral`).
    pub offset: i64,
}

impl FrobData {
    pub fn recognized(&self) -> Result<Vec<Q>> {
        recognize_poly(&self.lpoly)
    }

    /// Recognised polynomial scaled to the integral normalisation
    /// `c_i -> q^{t i} c_i`.
    pub fn integral(&self) -> Result<Vec<Q>> {
        Ok(integral_scale(&self.recognized()?, self.q, self.offset))
    }
}

pub fn integral_scale(c: &[Q], q: u64, t: i64) -> Vec<Q> {
    let qq = Q::from_integer(q as i64);
    c.iter()
        .enumerate()
        .map(|(i, x)| *x * qq.pow((t * i as i64) as i32))
        .collect()
}

/// Traces over `q` and `q^2` and the resulting Euler factor.
pub fn hgm_frob(d: &HgData, xi: Q, p: u64, f: Option<u32>, k: Option<u32>) -> Result<FrobData> {
    let f = f.unwrap_or_else(|| choose_f(d, p));
    let q = p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    let q2 = q.checked_mul(q).ok_or(Error::FieldCap(u64::MAX))?;
    let k = match k {
        Some(k) => k,
        None => default_k(d, p, q2)?,
    };
    let t1 = HgmSum::new(d, p, f, k)?.eval(xi)?;
    let t2 = HgmSum::new(d, p, 2 * f, k)?.eval(xi)?;
    Ok(FrobData {
        p,
        f,
        q,
        k,
        lpoly: lpoly_from_traces(&t1, &t2)?,
        trace1: t1,
        trace2: t2,
        provenance: Provenance::Padic,
        offset: d.effective_offset().unwrap_or(0).max(0),
    })
}

/// `[1, -t1, (t1^2 - t2)/2]`.
pub fn lpoly_from_traces(t1: &PadicNum, t2: &PadicNum) -> Result<Vec<PadicNum>> {
    let p = t1.p();
    let k = t1.rel_prec().max(t2.rel_prec()).max(1);
    let half = PadicNum::from_rational(Q::new(1, 2), p, k)?;
    let c2 = t1.mul(t1).sub(t2)?.mul(&half);
    Ok(vec![PadicNum::from_int(1, p, k), t1.neg(), c2])
}

pub fn poly_mul(a: &[PadicNum], b: &[PadicNum]) -> Result<Vec<PadicNum>> {
    let p = a[0].p();
    let mut out: Vec<Option<PadicNum>> = vec![None; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = x.mul(y);
            out[i + j] = Some(match out[i + j].take() {
                None => t,
                Some(s) => s.add(&t)?,
            });
        }
    }
    Ok(out
        .into_iter()
        .map(|c| c.unwrap_or_else(|| PadicNum::zero(p, 0)))
        .collect())
}

pub fn q_poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Slopes of the lower convex hull of `(i, v_p(c_i))`, one per unit of
/// horizontal length, in increasing order. Zero coefficients are skipped.
pub fn newton_slopes(c: &[Q], p: u64) -> Vec<Q> {
    let pts: Vec<(i64, i64)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as i64, crate::hgdata::q_valuation(*x, p)))
        .collect();
    let mut slopes = Vec::new();
    let mut cur = 0;
    while cur + 1 < pts.len() {
        // the next hull vertex minimises the slope (the farthest on ties)
        let (x0, y0) = pts[cur];
        let mut best = cur + 1;
        let mut best_s = Q::new(pts[best].1 - y0, pts[best].0 - x0);
        for (j, &(x, y)) in pts.iter().enumerate().skip(cur + 2) {
            let s = Q::new(y - y0, x - x0);
            if s <= best_s {
                best = j;
                best_s = s;
            }
        }
        for _ in x0..pts[best].0 {
            slopes.push(best_s);
        }
        cur = best;
    }
    slopes
}

/// Multiplicities of integral Newton slopes `0, 1, 2, ...`; fails on a
/// fractional slope.
pub fn newton_hodge_vector(c: &[Q], p: u64) -> Option<Vec<u32>> {
    let slopes = newton_slopes(c, p);
    if slopes.iter().any(|s| !s.is_integer() || s.is_negative()) {
        return None;
    }
    let top = slopes.iter().map(|s| s.to_integer()).max().unwrap_or(0) as usize;
    let mut v = vec![0u32; top + 1];
    for s in slopes {
        v[s.to_integer() as usize] += 1;
    }
    Some(v)
}

/// Polynomial in `var` with descending powers, in the `1/7*x^2 + 4/7*x + 1`
/// style.
pub struct PolyDisplay<'a> {
    pub coeffs: &'a [Q],
    pub var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{i}", self.var),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Recognise `trace1` as a rational (used by sweeps).
pub fn recognized_trace(fd: &FrobData) -> Result<Q> {
    recognize_rational(&fd.trace1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn example_one_lpoly() {
        let d = HgData::parse("1/8,7/8;3/8,5/8").unwrap();
        let fd = hgm_frob(&d, Q::from_integer(9), 7, None, None).unwrap();
        let c = fd.recognized().unwrap();
        assert_eq!(c, vec![qq(1, 1), qq(4, 7), qq(1, 7)]);
        let s = PolyDisplay {
            coeffs: &c,
            var: "x",
        }
        .to_string();
        assert_eq!(s, "1/7*x^2 + 4/7*x + 1");
        let i = fd.integral().unwrap();
        assert_eq!(
            PolyDisplay {
                coeffs: &i,
                var: "T"
            }
            .to_string(),
            "7*T^2 + 4*T + 1"
        );
    }

    #[test]
    fn newton_polygon() {
        let c = [
            qq(1, 1),
            qq(-10, 1),
            qq(18 * 17, 1),
            qq(-10 * 289, 1),
            qq(17i64.pow(4), 1),
        ];
        assert_eq!(newton_hodge_vector(&c, 17).unwrap(), vec![1, 2, 1]);
        let s = newton_slopes(&[qq(1, 1), qq(0, 1), qq(7, 1)], 7);
        assert_eq!(s, vec![qq(1, 2), qq(1, 2)]);
        assert!(newton_hodge_vector(&[qq(1, 1), qq(0, 1), qq(7, 1)], 7).is_none());
    }

    #[test]
    fn display_signs() {
        let c = [qq(1, 1), qq(-10, 17), qq(0, 1), qq(-1, 1)];
        assert_eq!(
            PolyDisplay {
                coeffs: &c,
                var: "x"
            }
            .to_string(),
            "-x^3 - 10/17*x + 1"
        );
    }
}
