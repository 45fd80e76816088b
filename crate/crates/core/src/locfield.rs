//! Primes of `R = Z_p[ζ_m]` lying over `p` (for `p ∤ m`) and exact `π`-adic
//! valuations of cyclotomic integers.
//!
//! Since `p ∤ m`, the prime `p` is unramified and the primes over it
//! correspond to the irreducible factors of `Φ_m` over `Z/p`, all of the
//! same degree `d = ord_m(p)`. A chosen factor `f` is Hensel-lifted to `F`
//! modulo `p^N`; the completion at `π` is then realized as
//! `(Z/p^N)[x]/(F)`, where the valuation of an element is the minimum
//! `p`-adic valuation of its coefficients (coefficientwise, because `p`
//! itself is a uniformizer in the unramified case). Zero detection is exact
//! on canonical cyclotomic form, never precision-based; precision only ever
//! decides *finite* valuations and doubles until it is comfortably above
//! the answer.

use crate::arith::{self, invmod, is_prime, mulmod};
use crate::cyclotomic::{cyclotomic_polynomial, CyclotomicInteger};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed seed for the equal-degree splitting randomness; the factor list is
/// sorted afterwards, so output is deterministic either way.
const FACTOR_SEED: u64 = 0x5eed_cafe;

/// Initial Hensel precision `N` (the lift works modulo `p^N`).
pub const INITIAL_PRECISION: u32 = 8;

/// Exact `π`-adic valuation: finite for nonzero elements, infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Residue degree `d = ord_m(p)` of the primes over `p` in `Z_p[ζ_m]`.
/// Refuses `p | m` (the unramified hypothesis) and composite `p`.
pub fn residue_degree(p: u64, m: u64) -> Result<u64> {
    check_unramified(p, m)?;
    Ok(arith::multiplicative_order(p % m.max(2), m))
}

fn check_unramified(p: u64, m: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    if m % p == 0 {
        return Err(Error::HypothesisViolation(format!(
            "p = {p} divides m = {m}; the prime must be unramified (p coprime to the group order)"
        )));
    }
    Ok(())
}

/// All monic irreducible factors of `Φ_m` over `Z/p`, each of degree
/// `d = ord_m(p)`, sorted by coefficient sequence (constant term first) so
/// the choice of factor index is deterministic.
pub fn factor_cyclotomic_mod_p(p: u64, m: u64) -> Result<Vec<Vec<u64>>> {
    check_unramified(p, m)?;
    let phi: Vec<u64> = cyclotomic_polynomial(m)
        .iter()
        .map(|c| {
            let r = c.mod_floor(&BigInt::from(p));
            r.to_u64().expect("residue fits u64")
        })
        .collect();
    let phi = fp_trim(phi);
    let d = if m == 1 { 1 } else { arith::multiplicative_order(p % m, m) } as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut factors = Vec::new();
    equal_degree_split(&phi, d, p, &mut rng, &mut factors);
    factors.sort();
    debug_assert_eq!(factors.len(), fp_deg(&phi).max(0) as usize / d);
    debug_assert!({
        let product = factors
            .iter()
            .fold(vec![1u64], |acc, f| fp_mul(&acc, f, p));
        product == phi
    });
    Ok(factors)
}

/// All factors here share degree `d`, so distinct-degree separation is
/// unnecessary; split recursively with random gcd probes.
fn equal_degree_split(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let deg = fp_deg(f) as usize;
    if deg == d {
        out.push(fp_monic(f, p));
        return;
    }
    loop {
        let a: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        let a = fp_trim(a);
        if fp_deg(&a) < 1 {
            continue;
        }
        // A shared factor with the probe already splits.
        let g = fp_gcd(&a, f, p);
        let g = if fp_deg(&g) > 0 && (fp_deg(&g) as usize) < deg {
            g
        } else if p == 2 {
            // Trace map over F_2: T(a) = a + a^2 + ... + a^{2^{d-1}} mod f.
            let mut trace = fp_rem(&a, f, p);
            let mut cur = trace.clone();
            for _ in 1..d {
                cur = fp_rem(&fp_mul(&cur, &cur, p), f, p);
                trace = fp_add(&trace, &cur, p);
            }
            fp_gcd(&trace, f, p)
        } else {
            // a^{(p^d - 1)/2} - 1 vanishes on about half the factors.
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            let power = fp_pow_mod(&a, &exp, f, p);
            let shifted = fp_sub(&power, &[1], p);
            fp_gcd(&shifted, f, p)
        };
        let gd = fp_deg(&g);
        if gd > 0 && (gd as usize) < deg {
            let (quot, rem) = fp_divrem(f, &g, p);
            debug_assert!(rem.iter().all(|&c| c == 0));
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&quot, d, p, rng, out);
            return;
        }
    }
}

/// Hensel-lift an irreducible factor `f` of `Φ_m` mod `p` to a factor `F`
/// of `Φ_m` mod `p^target_n`, by quadratic iteration on the factor/cofactor
/// pair. Returns `F` with coefficients in `[0, p^target_n)`.
pub fn hensel_lift(m: u64, p: u64, f: &[u64], target_n: u32) -> Result<Vec<BigInt>> {
    Ok(hensel_lift_pair(m, p, f, target_n)?.0)
}

/// As [`hensel_lift`], also returning the lifted cofactor `G`
/// (`F * G ≡ Φ_m mod p^target_n`).
pub fn hensel_lift_pair(
    m: u64,
    p: u64,
    f: &[u64],
    target_n: u32,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    check_unramified(p, m)?;
    let phi_int: Vec<BigInt> = cyclotomic_polynomial(m).to_vec();
    let phi_p: Vec<u64> = phi_int
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
        .collect();
    let phi_p = fp_trim(phi_p);
    let f = fp_monic(&fp_trim(f.to_vec()), p);
    let (g, rem) = fp_divrem(&phi_p, &f, p);
    if !rem.iter().all(|&c| c == 0) {
        return Err(Error::InvalidInput(
            "polynomial is not a factor of the cyclotomic polynomial mod p".into(),
        ));
    }
    if f == phi_p {
        // Single factor: the integer cyclotomic polynomial is its own lift.
        let modulus = BigInt::from(p).pow(target_n);
        let lifted: Vec<BigInt> = phi_int.iter().map(|c| c.mod_floor(&modulus)).collect();
        return Ok((lifted, vec![BigInt::one()]));
    }

    // Bezout pair over F_p: s*f + t*g = 1 with deg s < deg g, deg t < deg f.
    let (s0, t0) = fp_bezout(&f, &g, p);

    let mut cur_f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let mut cur_g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    let mut s: Vec<BigInt> = s0.iter().map(|&c| BigInt::from(c)).collect();
    let mut t: Vec<BigInt> = t0.iter().map(|&c| BigInt::from(c)).collect();
    let mut k: u32 = 1;
    while k < target_n {
        k = k.saturating_mul(2);
        let md = BigInt::from(p).pow(k);
        let phi_k: Vec<BigInt> = phi_int.iter().map(|c| c.mod_floor(&md)).collect();

        // e = Phi - f g; (q, r) = quorem(s e, g); f += t e + q f; g += r.
        let e = pm_sub(&phi_k, &pm_mul(&cur_f, &cur_g, &md), &md);
        let (q, r) = pm_divrem_monic(&pm_mul(&s, &e, &md), &cur_g, &md);
        let correction = pm_add(&pm_mul(&t, &e, &md), &pm_mul(&q, &cur_f, &md), &md);
        cur_f = pm_add(&cur_f, &correction, &md);
        cur_g = pm_add(&cur_g, &r, &md);

        // Refresh the Bezout pair to the new modulus.
        let b = pm_sub(
            &pm_add(&pm_mul(&s, &cur_f, &md), &pm_mul(&t, &cur_g, &md), &md),
            &[BigInt::one()],
            &md,
        );
        let (c, dd) = pm_divrem_monic(&pm_mul(&s, &b, &md), &cur_g, &md);
        s = pm_sub(&s, &dd, &md);
        let tb = pm_mul(&t, &b, &md);
        let cf = pm_mul(&c, &cur_f, &md);
        t = pm_sub(&t, &pm_add(&tb, &cf, &md), &md);
        // Keep deg s < deg g (deg t < deg f then follows automatically).
        let (excess, s_red) = pm_divrem_monic(&s, &cur_g, &md);
        s = s_red;
        t = pm_add(&t, &pm_mul(&excess, &cur_f, &md), &md);
    }
    let modulus = BigInt::from(p).pow(target_n);
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> {
        v.into_iter().map(|c| c.mod_floor(&modulus)).collect()
    };
    let lifted_f = reduce(cur_f);
    let lifted_g = reduce(cur_g);
    debug_assert!({
        let prod = pm_mul(&lifted_f, &lifted_g, &modulus);
        let phi_n: Vec<BigInt> = phi_int.iter().map(|c| c.mod_floor(&modulus)).collect();
        pm_trim(&pm_sub(&prod, &phi_n, &modulus)).is_empty()
    });
    Ok((lifted_f, lifted_g))
}

/// A prime `π` of `Z_p[ζ_m]` over `p`, realized as a Hensel-lifted
/// irreducible factor of `Φ_m` with a working precision `p^N`.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    m: u64,
    d: u64,
    factor_index: usize,
    factor_mod_p: Vec<u64>,
    num_factors: usize,
    precision: u32,
    lifted: Vec<BigInt>,
    modulus: BigInt,
}

impl PrimeContext {
    /// Context for the default prime over `p`: the lexicographically least
    /// factor of `Φ_m` mod `p`.
    pub fn new(p: u64, m: u64) -> Result<Self> {
        Self::with_factor(p, m, 0)
    }

    /// Context for the prime given by a specific factor index into the
    /// sorted factor list.
    pub fn with_factor(p: u64, m: u64, factor_index: usize) -> Result<Self> {
        let factors = factor_cyclotomic_mod_p(p, m)?;
        let num_factors = factors.len();
        let factor_mod_p = factors.into_iter().nth(factor_index).ok_or_else(|| {
            Error::InvalidInput(format!(
                "factor index {factor_index} out of range; Phi_{m} mod {p} has {num_factors} factors"
            ))
        })?;
        let d = residue_degree(p, m)?;
        let precision = INITIAL_PRECISION;
        let lifted = hensel_lift(m, p, &factor_mod_p, precision)?;
        Ok(PrimeContext {
            p,
            m,
            d,
            factor_index,
            factor_mod_p,
            num_factors,
            precision,
            lifted,
            modulus: BigInt::from(p).pow(precision),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus_m(&self) -> u64 {
        self.m
    }

    pub fn residue_degree(&self) -> u64 {
        self.d
    }

    pub fn factor_index(&self) -> usize {
        self.factor_index
    }

    /// Number of primes over `p`, i.e. `φ(m) / d`.
    pub fn num_factors(&self) -> usize {
        self.num_factors
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The chosen factor of `Φ_m` over `Z/p`.
    pub fn factor_mod_p(&self) -> &[u64] {
        &self.factor_mod_p
    }

    /// The Hensel lift of the factor modulo `p^precision`.
    pub fn lifted_factor(&self) -> &[BigInt] {
        &self.lifted
    }

    /// A new context over the same prime with at least the given precision;
    /// the original is untouched.
    pub fn with_precision(&self, target_n: u32) -> Result<Self> {
        if target_n <= self.precision {
            return Ok(self.clone());
        }
        let lifted = hensel_lift(self.m, self.p, &self.factor_mod_p, target_n)?;
        Ok(PrimeContext {
            precision: target_n,
            modulus: BigInt::from(self.p).pow(target_n),
            lifted,
            ..self.clone()
        })
    }

    /// Exact `π`-adic valuation of a cyclotomic integer.
    ///
    /// Zero is detected exactly (canonical form) and reported as infinite.
    /// Otherwise the element is mapped into `(Z/p^N)[x]/(F)` and the
    /// valuation is the minimum coefficientwise `p`-adic valuation, doubling
    /// `N` whenever the answer is not comfortably below the precision.
    pub fn valuation(&self, x: &CyclotomicInteger) -> Result<Valuation> {
        if x.modulus() != self.m {
            return Err(Error::InvalidInput(format!(
                "element lives in Z[zeta_{}], context in Z[zeta_{}]",
                x.modulus(),
                self.m
            )));
        }
        if x.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let mut ctx = self.clone();
        loop {
            let coeffs: Vec<BigInt> = x
                .coeffs()
                .iter()
                .map(|c| c.mod_floor(&ctx.modulus))
                .collect();
            let residue = pm_divrem_monic(&coeffs, &ctx.lifted, &ctx.modulus).1;
            let v = residue
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| arith::valuation_bigint(c, ctx.p))
                .min()
                .unwrap_or(ctx.precision);
            if v + 1 < ctx.precision {
                return Ok(Valuation::Finite(v));
            }
            ctx = ctx.with_precision(ctx.precision * 2)?;
        }
    }
}

// ---- polynomial helpers over Z/p (u64 coefficients, trimmed) ----

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_deg(v: &[u64]) -> i64 {
    v.len() as i64 - 1
}

fn fp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + c) % p;
    }
    fp_trim(out)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c % p) % p;
    }
    fp_trim(out)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = fp_deg(b);
    assert!(db >= 0, "division by zero polynomial");
    let lead_inv = invmod(*b.last().unwrap(), p);
    let mut rem: Vec<u64> = a.iter().map(|&c| c % p).collect();
    rem = fp_trim(rem);
    if fp_deg(&rem) < db {
        return (Vec::new(), rem);
    }
    let dq = (fp_deg(&rem) - db) as usize;
    let mut quot = vec![0u64; dq + 1];
    for i in (0..=dq).rev() {
        let idx = i + db as usize;
        if idx >= rem.len() || rem[idx] == 0 {
            continue;
        }
        let c = mulmod(rem[idx], lead_inv, p);
        quot[i] = c;
        for (j, &d) in b.iter().enumerate() {
            let pos = i + j;
            rem[pos] = (rem[pos] + p - mulmod(c, d, p)) % p;
        }
    }
    (fp_trim(quot), fp_trim(rem))
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    let a = fp_trim(a.to_vec());
    match a.last() {
        None | Some(1) => a,
        Some(&lead) => {
            let inv = invmod(lead, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_pow_mod(a: &[u64], exp: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = fp_rem(a, f, p);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = fp_rem(&fp_mul(&result, &base, p), f, p);
        }
        base = fp_rem(&fp_mul(&base, &base, p), f, p);
    }
    result
}

/// Extended Euclid over F_p for coprime (f, g): returns (s, t) with
/// `s f + t g = 1`, `deg s < deg g`, `deg t < deg f`.
fn fp_bezout(f: &[u64], g: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (fp_trim(f.to_vec()), fp_trim(g.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    assert!(fp_deg(&r0) == 0, "polynomials are not coprime mod p");
    let scale = invmod(r0[0], p);
    let mut s: Vec<u64> = s0.iter().map(|&c| mulmod(c, scale, p)).collect();
    let mut t: Vec<u64> = t0.iter().map(|&c| mulmod(c, scale, p)).collect();
    // Normalize deg s < deg g; the identity then forces deg t < deg f.
    let (q, s_red) = fp_divrem(&s, g, p);
    s = s_red;
    t = fp_add(&t, &fp_mul(&q, f, p), p);
    (s, t)
}

// ---- polynomial helpers over Z/p^N (BigInt coefficients in [0, p^N)) ----

fn pm_trim(v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn pm_add(a: &[BigInt], b: &[BigInt], md: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.mod_floor(md);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = (&out[i] + c).mod_floor(md);
    }
    pm_trim(&out)
}

fn pm_sub(a: &[BigInt], b: &[BigInt], md: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.mod_floor(md);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = (&out[i] - c).mod_floor(md);
    }
    pm_trim(&out)
}

fn pm_mul(a: &[BigInt], b: &[BigInt], md: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    for c in &mut out {
        *c = c.mod_floor(md);
    }
    pm_trim(&out)
}

/// Division with remainder by a monic polynomial, coefficients mod `md`.
fn pm_divrem_monic(a: &[BigInt], b: &[BigInt], md: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let b = pm_trim(b);
    let db = b.len() as i64 - 1;
    assert!(db >= 0, "division by zero polynomial");
    debug_assert!(b.last().unwrap().is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = a.iter().map(|c| c.mod_floor(md)).collect();
    rem = pm_trim(&rem);
    if (rem.len() as i64 - 1) < db {
        return (Vec::new(), rem);
    }
    let dq = (rem.len() as i64 - 1 - db) as usize;
    let mut quot = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let idx = i + db as usize;
        if idx >= rem.len() || rem[idx].is_zero() {
            continue;
        }
        let c = rem[idx].clone();
        quot[i] = c.clone();
        for (j, d) in b.iter().enumerate() {
            let pos = i + j;
            rem[pos] = (&rem[pos] - &c * d).mod_floor(md);
        }
        rem = pm_trim(&rem);
    }
    (pm_trim(&quot), pm_trim(&rem))
}
