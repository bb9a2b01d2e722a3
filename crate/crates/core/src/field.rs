//! Prime-field scalars and binomial coefficients modulo `p`.
//!
//! Scalars are plain `u32` residues in `0..p`; the modulus travels with the
//! algebra context rather than with every coefficient.

use crate::error::{Error, Result};

/// Largest characteristic accepted. Keeps `a * b` inside `u64`.
pub const MAX_PRIME: u32 = 1 << 20;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates that `p` is an odd prime we can work with.
pub fn check_characteristic(p: u32) -> Result<()> {
    if !(3..=MAX_PRIME).contains(&p) || !is_prime(p) {
        return Err(Error::BadCharacteristic(p));
    }
    Ok(())
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue (Fermat).
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `0..p`.
#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Symmetric lift of a residue into `(-p/2, p/2]`, used for display.
pub fn lift(a: u32, p: u32) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// `binom(m, k)` for `m, k < p`, by the multiplicative formula.
fn small_binomial(m: u64, k: u64, p: u32) -> u32 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for t in 0..k {
        num = mul(num, ((m - t) % p as u64) as u32, p);
        den = mul(den, ((t + 1) % p as u64) as u32, p);
    }
    mul(num, inv(den, p), p)
}

/// `binom(m, k) mod p` through Lucas' digit decomposition.
pub fn binomial_mod_p(m: u64, k: u64, p: u32) -> u32 {
    if k > m {
        return 0;
    }
    let pp = p as u64;
    let (mut m, mut k) = (m, k);
    let mut acc = 1 % p;
    while k > 0 || m > 0 {
        let (md, kd) = (m % pp, k % pp);
        if kd > md {
            return 0;
        }
        acc = mul(acc, small_binomial(md, kd, p), p);
        m /= pp;
        k /= pp;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binomial(m: u64, k: u64) -> u128 {
        if k > m {
            return 0;
        }
        let mut acc: u128 = 1;
        for t in 0..k {
            acc = acc * (m - t) as u128 / (t + 1) as u128;
        }
        acc
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binomial_mod_p(2, 1, 3), 2);
        assert_eq!(binomial_mod_p(3, 1, 3), 0);
        assert_eq!(binomial_mod_p(4, 2, 3), 0);
        assert_eq!(binomial_mod_p(0, 0, 3), 1);
        assert_eq!(binomial_mod_p(1, 2, 5), 0);
    }

    #[test]
    fn lucas_matches_factorials() {
        for p in [3u32, 5, 7, 11] {
            for m in 0..40u64 {
                for k in 0..=m + 1 {
                    let direct = (factorial_binomial(m, k) % p as u128) as u32;
                    assert_eq!(binomial_mod_p(m, k, p), direct, "C({m},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn inverses_and_reduction() {
        for p in [3u32, 5, 13] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
        assert_eq!(reduce(-1, 3), 2);
        assert_eq!(reduce(-7, 5), 3);
        assert_eq!(lift(2, 3), -1);
    }

    #[test]
    fn characteristic_validation() {
        assert!(check_characteristic(3).is_ok());
        assert!(check_characteristic(5).is_ok());
        assert!(check_characteristic(2).is_err());
        assert!(check_characteristic(9).is_err());
        assert!(check_characteristic(1).is_err());
    }
}
