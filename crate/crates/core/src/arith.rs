//! Small exact number-theory utilities shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Binomial coefficient as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Deterministic primality test by trial division; fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes up to and including `n`, ascending.
pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero is infinite");
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a nonzero big integer.
pub fn valuation_bigint(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut result = m;
    let mut m = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Multiplicative order of `a` modulo `m`; requires gcd(a, m) = 1.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(m >= 1);
    if m == 1 {
        return 1;
    }
    let a = a % m;
    assert!(a.gcd(&m) == 1, "order undefined: gcd({a}, {m}) != 1");
    let mut acc = a;
    let mut ord = 1;
    while acc != 1 {
        acc = mulmod(acc, a, m);
        ord += 1;
    }
    ord
}

/// `a * b mod m` without overflow.
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` without overflow.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`; requires gcd(a, m) = 1.
pub fn invmod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r.abs() == 1, "inverse undefined: gcd({a}, {m}) != 1");
    let inv = if old_r == 1 { old_s } else { -old_s };
    inv.rem_euclid(m as i128) as u64
}
