//! Character-sum spectra and spectral prediction of elementary divisors.
//!
//! The character table diagonalizes every integer combination
//! `c_0 I + Σ c_E A_E`: the eigenvalue at a character `χ` is the exact
//! cyclotomic integer `c_0 + Σ_E c_E Σ_{e∈E} χ(e)`. For a prime `p ∤ |G|`
//! the multiplicity of `p^i` among the elementary divisors of the matrix
//! equals the number of eigenvalues with `π`-adic valuation exactly `i`,
//! for any prime `π` over `p` — an integer `p`-adic valuation suffices when
//! the eigenvalue is rational. Eigenvalues are grouped by canonical
//! cyclotomic form; there is no floating point and no clustering anywhere.

use crate::arith::{self, binomial, is_prime, valuation_bigint};
use crate::cayley::{ConnectingSet, MatrixCombo};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::group::{Character, GroupSpec};
use crate::locfield::{PrimeContext, Valuation};
use crate::snf::{AbelianGroupStructure, ElementaryDivisorProfile};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An exact spectrum: distinct canonical eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub group_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: CyclotomicInteger,
    pub multiplicity: u64,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Multiplicity of the eigenvalue 0.
    pub fn zero_multiplicity(&self) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.value.is_zero())
            .map(|e| e.multiplicity)
            .sum()
    }

    /// `Σ λ · mult(λ)`, always a rational integer.
    pub fn trace(&self) -> BigInt {
        let m = self.entries.first().map_or(1, |e| e.value.modulus());
        let mut acc = CyclotomicInteger::zero(m);
        for e in &self.entries {
            acc = &acc + &e.value.scalar_mul(&BigInt::from(e.multiplicity));
        }
        acc.as_integer()
            .expect("trace of an integer matrix is a rational integer")
    }

    /// The spectrum as integers, when every eigenvalue is rational.
    pub fn integer_entries(&self) -> Option<Vec<(BigInt, u64)>> {
        self.entries
            .iter()
            .map(|e| e.value.as_integer().map(|v| (v, e.multiplicity)))
            .collect()
    }

    /// `|Π λ|` over nonzero eigenvalues, an exact integer (the norm-product
    /// of full conjugacy classes of eigenvalues is rational).
    pub fn nonzero_product_abs(&self) -> BigInt {
        let m = self.entries.first().map_or(1, |e| e.value.modulus());
        let mut acc = CyclotomicInteger::one(m);
        for e in &self.entries {
            if e.value.is_zero() {
                continue;
            }
            for _ in 0..e.multiplicity {
                acc = &acc * &e.value;
            }
        }
        acc.as_integer()
            .expect("product over a full spectrum is a rational integer")
            .abs()
    }
}

/// Exact spectrum of `c_0 I + Σ c_E A_E` via character sums: one pass over
/// the characters, accumulating each eigenvalue in the exponent basis and
/// canonicalizing once per character.
pub fn spectrum_via_characters(spec: &GroupSpec, combo: &MatrixCombo) -> Result<Spectrum> {
    let m = spec.exponent();
    let mut grouped: BTreeMap<CyclotomicInteger, u64> = BTreeMap::new();
    for chi in spec.enumerate_characters() {
        let mut working = vec![0i128; m as usize];
        working[0] += combo.identity_coeff as i128;
        for (coeff, set) in &combo.terms {
            for e in set.elements() {
                let t = spec.char_exponent_unchecked(&chi, e);
                working[t as usize] += *coeff as i128;
            }
        }
        let value = CyclotomicInteger::from_working(
            m,
            working.into_iter().map(BigInt::from).collect(),
        );
        *grouped.entry(value).or_insert(0) += 1;
    }
    Ok(Spectrum {
        entries: grouped
            .into_iter()
            .map(|(value, multiplicity)| SpectrumEntry { value, multiplicity })
            .collect(),
        group_size: spec.size(),
    })
}

/// The character sum `Σ_{e∈E_k} χ(e)` evaluated without enumerating `E_k`:
/// the coefficient of `x^k` in `Π_i (1 + w_i x)` where `w_i = q_i - 1` at
/// principal coordinates of `χ` and `-1` elsewhere. Always a rational
/// integer.
pub fn weight_class_character_sum(spec: &GroupSpec, chi: &Character, k: usize) -> Result<BigInt> {
    let n = spec.rank();
    if k > n {
        return Err(Error::InvalidInput(format!(
            "weight {k} exceeds the number of coordinates {n}"
        )));
    }
    spec.character(chi.coords.clone())?;
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::one();
    for (i, &a) in chi.coords.iter().enumerate() {
        let w = if a == 0 {
            BigInt::from(spec.orders()[i] - 1)
        } else {
            BigInt::from(-1)
        };
        for j in (0..=i).rev() {
            let t = &poly[j] * &w;
            poly[j + 1] += t;
        }
    }
    Ok(poly[k].clone())
}

/// The eigenvalue of the distance-`k` matrix of the Hamming scheme `H(n,q)`
/// at a character with exactly `l` principal coordinates:
/// `Σ_j C(l,j) C(n-l,k-j) (q-1)^j (-1)^{k-j}`.
pub fn hamming_eigenvalue(n: u64, q: u64, k: u64, l: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.min(l) {
        if k - j > n - l {
            continue;
        }
        let mut term = binomial(l, j) * binomial(n - l, k - j);
        term *= BigInt::from(q - 1).pow(j as u32);
        if (k - j) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// Number of characters of `Z_q^n` with exactly `l` principal coordinates:
/// `C(n,l) (q-1)^{n-l}`.
pub fn hamming_multiplicity(n: u64, q: u64, l: u64) -> BigInt {
    binomial(n, l) * BigInt::from(q - 1).pow((n - l) as u32)
}

/// Adjacency eigenvalue of a Cartesian product of complete graphs
/// `K_{q_1} x ... x K_{q_n}` for the characters whose principal coordinates
/// are exactly `subset`: the value is `-n + Σ_{i∈S} q_i` and there are
/// `Π_{i∉S} (q_i - 1)` such characters.
pub fn cartesian_eigenvalue(orders: &[u64], subset: &[usize]) -> (BigInt, BigInt) {
    let n = orders.len();
    let mut value = BigInt::from(-(n as i64));
    for &i in subset {
        value += BigInt::from(orders[i]);
    }
    let mut multiplicity = BigInt::one();
    for (i, &q) in orders.iter().enumerate() {
        if !subset.contains(&i) {
            multiplicity *= BigInt::from(q - 1);
        }
    }
    (value, multiplicity)
}

/// The full adjacency spectrum of the Cartesian product, aggregated over all
/// subsets (distinct subsets can share an eigenvalue) and sorted.
pub fn cartesian_adjacency_spectrum(orders: &[u64]) -> Vec<(BigInt, BigInt)> {
    let n = orders.len();
    assert!(n < 32, "subset enumeration limited to fewer than 32 factors");
    let mut grouped: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let (value, mult) = cartesian_eigenvalue(orders, &subset);
        *grouped.entry(value).or_insert_with(BigInt::zero) += mult;
    }
    grouped.into_iter().collect()
}

/// Laplacian spectrum of the Cartesian product: eigenvalue `Σ_{i∉S} q_i`
/// with the same multiplicities.
pub fn cartesian_laplacian_spectrum(orders: &[u64]) -> Vec<(BigInt, BigInt)> {
    let n = orders.len();
    assert!(n < 32, "subset enumeration limited to fewer than 32 factors");
    let mut grouped: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let mut value = BigInt::zero();
        let mut mult = BigInt::one();
        for (i, &q) in orders.iter().enumerate() {
            if mask & (1 << i) == 0 {
                value += BigInt::from(q);
                mult *= BigInt::from(q - 1);
            }
        }
        *grouped.entry(value).or_insert_with(BigInt::zero) += mult;
    }
    grouped.into_iter().collect()
}

/// Which prime over `p` the predictor valuates with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiMode {
    /// The deterministic default factor (index 0).
    Default,
    /// A specific factor index into the sorted factor list.
    Factor(usize),
    /// Compute with every prime over `p` and insist the profiles coincide.
    All,
}

/// Recorded choice of prime in a [`PredictedProfile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiChoice {
    Factor(usize),
    All,
}

impl std::fmt::Display for PiChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PiChoice::Factor(i) => write!(f, "{i}"),
            PiChoice::All => write!(f, "all"),
        }
    }
}

/// Spectral prediction of the `p`-elementary divisor multiplicities:
/// `per_power[i]` counts eigenvalues (with multiplicity) of valuation
/// exactly `i`; `infinite_count` counts zero eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedProfile {
    pub p: u64,
    pub per_power: BTreeMap<u32, u64>,
    pub infinite_count: u64,
    pub pi_choice: PiChoice,
}

impl PredictedProfile {
    pub fn multiplicity(&self, i: u32) -> u64 {
        self.per_power.get(&i).copied().unwrap_or(0)
    }

    /// Exact agreement with a Smith normal form profile, including the
    /// zero/free-rank count.
    pub fn matches_oracle(&self, oracle: &ElementaryDivisorProfile) -> bool {
        self.p == oracle.p
            && self.per_power == oracle.multiplicities
            && self.infinite_count == oracle.zero_count
    }
}

/// Predict the `p`-elementary divisors of `combo` from its spectrum.
///
/// Requires `p` prime with `p ∤ |G|`; anything else is refused rather than
/// extrapolated. Rational-integer eigenvalues take the integer fast path
/// (`v_p`); the rest are valuated in a Hensel-lifted completion at a prime
/// over `p`. In [`PiMode::All`] the profile is computed for every prime over
/// `p` and the computation fails loudly if they ever disagree.
pub fn predict_elementary_divisors(
    spec: &GroupSpec,
    combo: &MatrixCombo,
    p: u64,
    mode: PiMode,
) -> Result<PredictedProfile> {
    let spectrum = spectrum_via_characters(spec, combo)?;
    predict_with_spectrum(spec, &spectrum, p, mode)
}

/// As [`predict_elementary_divisors`], reusing an already computed spectrum
/// (the verification grids valuate one spectrum at many primes).
pub fn predict_with_spectrum(
    spec: &GroupSpec,
    spectrum: &Spectrum,
    p: u64,
    mode: PiMode,
) -> Result<PredictedProfile> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if spec.size() % p == 0 {
        return Err(Error::HypothesisViolation(format!(
            "p = {p} divides |G| = {}; the spectral prediction requires p coprime to the group order",
            spec.size()
        )));
    }
    let indices: Vec<usize> = match mode {
        PiMode::Default => vec![0],
        PiMode::Factor(i) => vec![i],
        PiMode::All => {
            let count = crate::locfield::factor_cyclotomic_mod_p(p, spec.exponent())?.len();
            (0..count).collect()
        }
    };
    let mut profiles = Vec::with_capacity(indices.len());
    for &idx in &indices {
        profiles.push(profile_for_factor(spec, spectrum, p, idx)?);
    }
    let first = profiles[0].clone();
    for other in &profiles[1..] {
        if other.per_power != first.per_power || other.infinite_count != first.infinite_count {
            return Err(Error::InvalidInput(format!(
                "profiles over p = {p} disagree across primes over p; this would falsify the \
                 valuation theory and indicates a bug"
            )));
        }
    }
    Ok(PredictedProfile {
        pi_choice: match mode {
            PiMode::All => PiChoice::All,
            PiMode::Default => PiChoice::Factor(0),
            PiMode::Factor(i) => PiChoice::Factor(i),
        },
        ..first
    })
}

fn profile_for_factor(
    spec: &GroupSpec,
    spectrum: &Spectrum,
    p: u64,
    factor_index: usize,
) -> Result<PredictedProfile> {
    let mut per_power: BTreeMap<u32, u64> = BTreeMap::new();
    let mut infinite_count = 0u64;
    let mut ctx: Option<PrimeContext> = None;
    for entry in &spectrum.entries {
        let valuation = match entry.value.as_integer() {
            Some(n) if n.is_zero() => Valuation::Infinite,
            Some(n) => Valuation::Finite(valuation_bigint(&n, p)),
            None => {
                if ctx.is_none() {
                    ctx = Some(PrimeContext::with_factor(p, spec.exponent(), factor_index)?);
                }
                ctx.as_ref().unwrap().valuation(&entry.value)?
            }
        };
        match valuation {
            Valuation::Finite(v) => *per_power.entry(v).or_insert(0) += entry.multiplicity,
            Valuation::Infinite => infinite_count += entry.multiplicity,
        }
    }
    Ok(PredictedProfile {
        p,
        per_power,
        infinite_count,
        pi_choice: PiChoice::Factor(factor_index),
    })
}

/// Closed-form Sylow `p`-subgroup of the critical group of the n-cube for
/// odd primes: `Π_{l=1}^{n} Syl_p(Z_l)^{C(n,l)}`, read off the Laplacian
/// spectrum `2l` with multiplicity `C(n,l)`.
pub fn sylow_critical_ncube(n: u32, p: u64) -> Result<AbelianGroupStructure> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::HypothesisViolation(
            "the 2-primary part of the n-cube critical group is not given by the spectral formula"
                .into(),
        ));
    }
    let mut powers: BTreeMap<u32, u64> = BTreeMap::new();
    for l in 1..=n as u64 {
        let a = arith::valuation_u64(l, p);
        if a > 0 {
            let count = u64::try_from(binomial(n as u64, l))
                .map_err(|_| Error::ResourceLimit("binomial coefficient overflows u64".into()))?;
            *powers.entry(a).or_insert(0) += count;
        }
    }
    Ok(AbelianGroupStructure::from_prime_powers(p, &powers))
}

/// Closed-form Sylow `p`-subgroup of the critical group of a Cartesian
/// product of complete graphs, for `p` dividing none of the orders:
/// `Π_{S ⊊ [n]} Syl_p(Z_{Σ_{i∉S} q_i})^{Π_{i∉S}(q_i - 1)}`.
pub fn sylow_critical_cartesian(orders: &[u64], p: u64) -> Result<AbelianGroupStructure> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if let Some(&q) = orders.iter().find(|&&q| q % p == 0) {
        return Err(Error::HypothesisViolation(format!(
            "p = {p} divides the factor order {q}; the critical-group formula requires p \
             coprime to every order"
        )));
    }
    let n = orders.len();
    assert!(n < 32, "subset enumeration limited to fewer than 32 factors");
    let mut powers: BTreeMap<u32, u64> = BTreeMap::new();
    for mask in 0u32..((1 << n) - 1) {
        let mut lambda = 0u64;
        let mut mult = 1u64;
        for (i, &q) in orders.iter().enumerate() {
            if mask & (1 << i) == 0 {
                lambda += q;
                mult *= q - 1;
            }
        }
        let a = arith::valuation_u64(lambda, p);
        if a > 0 {
            *powers.entry(a).or_insert(0) += mult;
        }
    }
    Ok(AbelianGroupStructure::from_prime_powers(p, &powers))
}

/// Exact check of the diagonalization identity
/// `M A_E^t conj(M)^t = |G| diag(Σ_{e∈E} χ(e))` in cyclotomic arithmetic.
pub fn diagonalization_identity_holds(spec: &GroupSpec, set: &ConnectingSet) -> Result<bool> {
    let m = spec.exponent();
    let size = spec.size();
    let characters = spec.enumerate_characters();
    let elements = spec.enumerate_elements();
    for chi in &characters {
        // Eigenvalue sum for the diagonal entry.
        let mut charsum_working = vec![0i128; m as usize];
        for e in set.elements() {
            charsum_working[spec.char_exponent_unchecked(chi, e) as usize] += 1;
        }
        let charsum = CyclotomicInteger::from_working(
            m,
            charsum_working.into_iter().map(BigInt::from).collect(),
        );
        for psi in &characters {
            // (M A^t conj(M)^t)(chi, psi) = sum_g sum_e zeta^{t(chi,eg) - t(psi,g)}.
            let mut working = vec![0i128; m as usize];
            for g in &elements {
                let t_psi = spec.char_exponent_unchecked(psi, g);
                for e in set.elements() {
                    let t_chi = spec.char_exponent_unchecked(chi, &spec.mul(e, g));
                    let idx = (t_chi + m - t_psi) % m;
                    working[idx as usize] += 1;
                }
            }
            let entry = CyclotomicInteger::from_working(
                m,
                working.into_iter().map(BigInt::from).collect(),
            );
            let expected = if chi == psi {
                charsum.scalar_mul(&BigInt::from(size))
            } else {
                CyclotomicInteger::zero(m)
            };
            if entry != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
