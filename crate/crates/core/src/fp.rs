//! Exact arithmetic in prime fields F_p for small p.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(p: u64, a: u64, b: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
pub fn neg(p: u64, a: u64) -> u64 {
    (p - a % p) % p
}

#[inline]
pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` in F_p; `p` must be prime and `a` nonzero mod p.
pub fn inv(p: u64, a: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::NotInvertible(a));
    }
    Ok(pow(p, a, p - 2))
}

/// Multiplicative order of `a` modulo prime `p`.
pub fn order(p: u64, a: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::NotInvertible(a));
    }
    let mut k = 1u64;
    let mut x = a % p;
    while x != 1 {
        x = mul(p, x, a);
        k += 1;
        if k > p {
            return Err(Error::NotInvertible(a));
        }
    }
    Ok(k)
}

/// Reduces a signed integer into 0..m.
#[inline]
pub fn reduce_signed(m: u64, v: i64) -> u64 {
    let m = m as i64;
    (((v % m) + m) % m) as u64
}
