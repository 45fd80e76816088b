//! Exact arithmetic in the ring of integers `Z[ζ_m]`.
//!
//! Values carry two representations. Sums of roots of unity accumulate
//! naturally in the *working form*, a length-`m` coefficient vector in the
//! exponent basis (i.e. mod `x^m - 1`). Equality, zero tests and
//! rational-integer detection happen on the *canonical form*: the unique
//! representative of degree `< φ(m)` obtained by reducing modulo the `m`-th
//! cyclotomic polynomial. A [`CyclotomicInteger`] always stores the
//! canonical form; the working form is an input format.
//!
//! Coefficients are arbitrary-precision integers throughout. There is no
//! floating point anywhere in the ring.

use crate::arith;
use crate::caps::CYCLOTOMIC_MODULUS_CAP;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Coefficients of the `m`-th cyclotomic polynomial `Φ_m`, constant term
/// first, monic of degree `φ(m)`. Computed by exact division
/// `(x^m - 1) / Π_{d|m, d<m} Φ_d` and memoized per modulus.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic polynomial undefined for m = 0");
    assert!(
        m <= CYCLOTOMIC_MODULUS_CAP,
        "cyclotomic modulus {m} exceeds cap {CYCLOTOMIC_MODULUS_CAP}"
    );
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // x^m - 1 divided by the cyclotomic polynomials of the proper divisors.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in arith::divisors(m) {
        if d < m {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_divexact(&num, &phi_d);
        }
    }
    let result = Arc::new(num);
    cache.lock().unwrap().insert(m, result.clone());
    result
}

/// Exact division of integer polynomials; panics if the division leaves a
/// remainder (callers only divide known multiples).
fn poly_divexact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = poly_degree(num);
    let dd = poly_degree(den);
    assert!(dd >= 0, "division by zero polynomial");
    assert!(dn >= dd, "degree too small for exact division");
    let lead = &den[dd as usize];
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); (dn - dd + 1) as usize];
    for i in (0..quot.len()).rev() {
        let top = rem[i + dd as usize].clone();
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        assert!(r.is_zero(), "non-exact polynomial division");
        for (j, d) in den.iter().enumerate().take(dd as usize + 1) {
            let t = &c * d;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

fn poly_degree(p: &[BigInt]) -> i64 {
    for i in (0..p.len()).rev() {
        if !p[i].is_zero() {
            return i as i64;
        }
    }
    -1
}

/// An exact element of `Z[ζ_m]`, stored in canonical form: exactly `φ(m)`
/// coefficients, reduced modulo `Φ_m`. Equality and ordering are canonical,
/// so values are usable as map keys for exact eigenvalue grouping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclotomicInteger {
    m: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "modulus must be at least 1");
        let phi = arith::euler_phi(m) as usize;
        CyclotomicInteger { m, coeffs: vec![BigInt::zero(); phi] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_integer(m, BigInt::one())
    }

    /// Embed a rational integer. The constant vector is already canonical
    /// since `phi(m) >= 1` for every `m >= 1`.
    pub fn from_integer(m: u64, n: BigInt) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[0] = n;
        v
    }

    /// `ζ_m^t`.
    pub fn root_of_unity(m: u64, t: u64) -> Self {
        let mut working = vec![BigInt::zero(); m as usize];
        working[(t % m) as usize] = BigInt::one();
        Self::from_working(m, working)
    }

    /// Build from the exponent basis: `Σ_i working[i] ζ_m^i`, where indices
    /// are taken mod `m` if the vector is longer than `m`. This is the entry
    /// point for character sums.
    pub fn from_working(m: u64, working: Vec<BigInt>) -> Self {
        assert!(m >= 1, "modulus must be at least 1");
        let mut folded = vec![BigInt::zero(); m as usize];
        for (i, c) in working.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % m as usize] += c;
            }
        }
        let phi = cyclotomic_polynomial(m);
        let coeffs = poly_rem_monic(folded, &phi);
        CyclotomicInteger { m, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Canonical coefficients: exactly `φ(m)` entries, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, when the canonical form has no terms
    /// of degree 1 or higher.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        CyclotomicInteger {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Apply the ring automorphism `ζ ↦ ζ^a`; requires `gcd(a, m) = 1`.
    pub fn conjugate(&self, a: u64) -> Self {
        assert!(
            (a % self.m).gcd(&self.m) == 1 || self.m == 1,
            "conjugation exponent must be coprime to the modulus"
        );
        let mut working = vec![BigInt::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                working[(arith::mulmod(a % self.m, i as u64, self.m)) as usize] += c;
            }
        }
        Self::from_working(self.m, working)
    }

    /// Field norm down to `Q`: the product of all Galois conjugates. Always
    /// a rational integer.
    pub fn norm(&self) -> BigInt {
        let mut acc = Self::one(self.m);
        for a in 1..=self.m {
            if a.gcd(&self.m) == 1 {
                acc = &acc * &self.conjugate(a);
            }
        }
        acc.as_integer()
            .expect("norm of a cyclotomic integer is a rational integer")
    }

    fn assert_same_modulus(&self, other: &Self) {
        assert!(
            self.m == other.m,
            "modulus mismatch: Z[zeta_{}] vs Z[zeta_{}]",
            self.m,
            other.m
        );
    }
}

/// Remainder of `poly` modulo a monic divisor, trimmed/padded to exactly
/// `deg(divisor)` coefficients.
fn poly_rem_monic(mut poly: Vec<BigInt>, divisor: &[BigInt]) -> Vec<BigInt> {
    let deg = poly_degree(divisor) as usize;
    debug_assert!(divisor[deg].is_one());
    let n = poly.len();
    for i in (deg..n).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], BigInt::zero());
        for (j, d) in divisor.iter().enumerate().take(deg) {
            let t = &c * d;
            poly[i - deg + j] -= t;
        }
    }
    poly.truncate(deg);
    poly.resize(deg.max(1), BigInt::zero());
    poly
}

impl std::ops::Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.assert_same_modulus(rhs);
        CyclotomicInteger {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.assert_same_modulus(rhs);
        CyclotomicInteger {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.assert_same_modulus(rhs);
        let mut prod = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let phi = cyclotomic_polynomial(self.m);
        let coeffs = poly_rem_monic(prod, &phi);
        CyclotomicInteger { m: self.m, coeffs }
    }
}

impl std::fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] mod Phi_{}", parts.join(","), self.m)
    }
}
