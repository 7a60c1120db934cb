//! Small integer helpers shared by the other modules.

use num_integer::Integer;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Reduce a signed value into `[0, m)`.
#[inline]
pub fn modp(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("a prime has a primitive root")
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1` assumed).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    k
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `p^k` with overflow detection.
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// Teichmüller lift of `a mod p` to `Z/p^k`.
pub fn teichmuller(a: u64, p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let a = a % p;
    if a == 0 {
        return 0;
    }
    pow_mod(a, p.pow(k - 1), m)
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots_small() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(17), 3);
        assert_eq!(primitive_root(41), 6);
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        for p in [5u64, 7, 13] {
            for a in 1..p {
                let t = teichmuller(a, p, 4);
                assert_eq!(t % p, a);
                assert_eq!(pow_mod(t, p - 1, p.pow(4)), 1);
            }
        }
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(mult_order(7, 8), 2);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(euler_phi(120), 32);
        assert_eq!(valuation(-63, 3), 2);
        assert_eq!(inv_mod(3, 7), Some(5));
    }
}
