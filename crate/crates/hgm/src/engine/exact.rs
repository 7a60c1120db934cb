//! Exact elements of `Q(zeta_N)` as `num / den`, and the exact rank-2
//! hypergeometric sum obtained from Euler-curve point counts.

use std::fmt;

use num_integer::Integer;

use crate::arith::inv_mod;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ffield::FqTable;
use crate::hgdata::{HgData, Q};
use crate::padic::PadicNum;

use super::jacobi::{JacobiDatum, JacobiExact};
use super::trace::eigen_trace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycFrac {
    pub num: CycInt,
    /// positive
    pub den: i128,
}

impl CycFrac {
    pub fn new(num: CycInt, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator(num.to_string()));
        }
        let (num, den) = if den < 0 {
            (num.scale(-1), -den)
        } else {
            (num, den)
        };
        let g = num.coeffs().iter().fold(den, |g, c| g.gcd(c));
        Ok(CycFrac {
            num: num.div_exact(g).expect("content divides"),
            den: den / g,
        })
    }

    pub fn from_int(n: u64, c: i128) -> Self {
        CycFrac {
            num: CycInt::from_int(n, c),
            den: 1,
        }
    }

    pub fn n(&self) -> u64 {
        self.num.n()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&o.num)?, self.den * o.den)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(
            self.num.scale(o.den).try_add(&o.num.scale(self.den))?,
            self.den * o.den,
        )
    }

    pub fn neg(&self) -> Self {
        CycFrac {
            num: self.num.scale(-1),
            den: self.den,
        }
    }

    pub fn conj(&self) -> Self {
        CycFrac {
            num: self.num.conj(),
            den: self.den,
        }
    }

    pub fn galois_apply(&self, j: i64) -> Result<Self> {
        Ok(CycFrac {
            num: self.num.galois_apply(j)?,
            den: self.den,
        })
    }

    /// Inverse, valid when `x * conj(x)` is rational (true for the
    /// Weil numbers handled here).
    pub fn inv(&self) -> Result<Self> {
        let nn = self.num.try_mul(&self.num.conj())?;
        let r = nn
            .as_int()
            .ok_or_else(|| Error::Precondition("|x|^2 is not rational".into()))?;
        if r == 0 {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        Self::new(self.num.conj().scale(self.den), r)
    }

    pub fn as_rational(&self) -> Option<Q> {
        let c = self.num.as_int()?;
        Some(Q::new(c as i64, self.den as i64))
    }

    /// `x * conj(x)` when rational.
    pub fn abs_sq(&self) -> Option<Q> {
        let nn = self.num.try_mul(&self.num.conj()).ok()?;
        Some(Q::new(nn.as_int()? as i64, (self.den * self.den) as i64))
    }

    pub fn embed(&self, p: u64, k: u32, root_index: u64) -> Result<PadicNum> {
        let mut d = self.den;
        let mut v = 0i64;
        while d % p as i128 == 0 {
            d /= p as i128;
            v -= 1;
        }
        let m = p.pow(k);
        let r = self.num.embed_padic(p, k, root_index)?;
        let inv = inv_mod(d, m as i128).expect("coprime") as u64;
        Ok(PadicNum::from_parts(
            p,
            k,
            v,
            crate::arith::mul_mod(r, inv, m),
        ))
    }
}

impl From<&JacobiExact> for CycFrac {
    fn from(j: &JacobiExact) -> Self {
        let q = j.q as i128;
        if j.q_exp >= 0 {
            CycFrac::new(j.num.scale(q.pow(j.q_exp as u32)), 1).unwrap()
        } else {
            CycFrac::new(j.num.clone(), q.pow((-j.q_exp) as u32)).unwrap()
        }
    }
}

impl fmt::Display for CycFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// Exact `H_q(alpha, beta | xi)` for a rank-2 generic datum:
/// `-N(chi; xi) / (chi(-1)^A J((-a,-b,c,d),(c-b,d-a)))`, the character-sum
/// identity behind the trace comparison (it needs genericity only).
pub fn exact_h(d: &HgData, xi: Q, tbl: &FqTable) -> Result<CycFrac> {
    let n = d.n();
    if !(tbl.q() - 1).is_multiple_of(n) {
        return Err(Error::CharOrder {
            order: n,
            qm1: tbl.q() - 1,
        });
    }
    let (a, b, c, dd) = d.abcd()?;
    let tr = eigen_trace((a, b, c, dd), n, xi, tbl)?;
    let jm = JacobiDatum::from_lists(&[-a, -b, c, dd], &[c - b, dd - a])?;
    let jx = jm.exact_value_in(tbl, tbl.q())?;
    let jv = CycFrac::from(&jx);
    let exps = d.euler_exponents()?;
    let kappa = if ((tbl.q() - 1) / n) % 2 == 1 && exps.A % 2 == 1 {
        -1
    } else {
        1
    };
    let jv = CycFrac::new(jv.num.lift(n)?, jv.den)?;
    let lhs = CycFrac::new(tr, 1)?;
    lhs.mul(&jv.inv()?)?.mul(&CycFrac::from_int(n, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::hsum::hgm_padic;

    #[test]
    fn frac_arith() {
        let z = CycFrac::new(CycInt::zeta_pow(8, 1).scale(6), 4).unwrap();
        assert_eq!(z.den, 2);
        let w = z.mul(&z.inv().unwrap()).unwrap();
        assert_eq!(w.as_rational(), Some(Q::from_integer(1)));
        assert_eq!(z.abs_sq(), Some(Q::new(9, 4)));
    }

    #[test]
    fn exact_h_matches_padic() {
        let d = HgData::parse("1/8,7/8;3/8,5/8").unwrap();
        let tbl = FqTable::build(17, 1).unwrap();
        let h = exact_h(&d, Q::from_integer(9), &tbl).unwrap();
        let hp = hgm_padic(&d, Q::from_integer(9), 17, Some(1), Some(4)).unwrap();
        assert!(h.embed(17, 4, 1).unwrap().eq_mod(&hp).unwrap());
        // Galois action: sigma_3 H(d) = H(3d)
        let d3 = d.scale(3);
        let hp3 = hgm_padic(&d3, Q::from_integer(9), 17, Some(1), Some(4)).unwrap();
        assert!(h.embed(17, 4, 3).unwrap().eq_mod(&hp3).unwrap());
    }
}
