//! Exact Smith normal form over the integers, cokernel structure, Smith
//! groups, critical groups and spanning-tree counts.
//!
//! This is the brute-force oracle the spectral predictions are checked
//! against, so it is kept deliberately simple: pivot on a minimal
//! absolute-value entry, clear its row and column by Euclidean steps, and
//! repair divisibility failures by folding the offending row into the pivot
//! row. Entry growth is acceptable at desk scale with big integers.

use crate::arith::valuation_bigint;
use crate::caps::DENSE_DIMENSION_CAP;
use crate::cayley::{self, ConnectingSet};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::matrix::IntegerMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Result of a Smith normal form computation: the diagonal `d_1 | d_2 | ...`
/// (nonnegative, zeros trailing) and, on request, unimodular `P`, `Q` with
/// `P M Q = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub p: Option<IntegerMatrix>,
    pub q: Option<IntegerMatrix>,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn zero_count(&self) -> usize {
        self.diagonal.len() - self.rank()
    }
}

/// Per-prime view of a Smith normal form diagonal: how many entries have
/// each exact `p`-adic valuation, plus the count of zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDivisorProfile {
    pub p: u64,
    pub multiplicities: BTreeMap<u32, u64>,
    pub zero_count: u64,
}

impl ElementaryDivisorProfile {
    /// Read the profile off a Smith normal form diagonal.
    pub fn from_diagonal(diagonal: &[BigInt], p: u64) -> Self {
        let mut multiplicities = BTreeMap::new();
        let mut zero_count = 0;
        for d in diagonal {
            if d.is_zero() {
                zero_count += 1;
            } else {
                *multiplicities.entry(valuation_bigint(d, p)).or_insert(0) += 1;
            }
        }
        ElementaryDivisorProfile { p, multiplicities, zero_count }
    }

    /// Multiplicity of `p^i` (0 for absent powers).
    pub fn multiplicity(&self, i: u32) -> u64 {
        self.multiplicities.get(&i).copied().unwrap_or(0)
    }
}

/// Invariant-factor decomposition of a finitely generated abelian group:
/// `Z/d_1 x ... x Z/d_r x Z^{free_rank}` with `d_i | d_{i+1}`, all `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupStructure {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure { invariant_factors: Vec::new(), free_rank: 0 }
    }

    /// Cokernel of a map into `Z^ambient_rank` whose Smith diagonal is given:
    /// unit entries vanish, zero entries and missing columns become free rank.
    pub fn from_smith_diagonal(diagonal: &[BigInt], ambient_rank: usize) -> Self {
        let invariant_factors: Vec<BigInt> = diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        AbelianGroupStructure {
            invariant_factors,
            free_rank: ambient_rank - nonzero,
        }
    }

    /// Build `(Z/p^{a_1})^{c_1} x (Z/p^{a_2})^{c_2} x ...` from prime-power
    /// exponent multiplicities; used by the closed-form Sylow predictions.
    pub fn from_prime_powers(p: u64, powers: &BTreeMap<u32, u64>) -> Self {
        let mut invariant_factors = Vec::new();
        for (&a, &count) in powers {
            if a == 0 {
                continue;
            }
            let factor = BigInt::from(p).pow(a);
            for _ in 0..count {
                invariant_factors.push(factor.clone());
            }
        }
        AbelianGroupStructure { invariant_factors, free_rank: 0 }
    }

    /// The Sylow `p`-subgroup of the torsion part.
    pub fn sylow(&self, p: u64) -> Self {
        let mut factors: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .map(|d| BigInt::from(p).pow(valuation_bigint(d, p)))
            .filter(|f| !f.is_one())
            .collect();
        factors.sort();
        AbelianGroupStructure { invariant_factors: factors, free_rank: 0 }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }
}

impl std::fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.invariant_factors.is_empty() {
            write!(f, "trivial (+ Z^{})", self.free_rank)
        } else {
            let parts: Vec<String> = self
                .invariant_factors
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect();
            write!(f, "{} (+ Z^{})", parts.join(" x "), self.free_rank)
        }
    }
}

struct Eliminator {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
    p: Option<IntegerMatrix>,
    q: Option<IntegerMatrix>,
}

impl Eliminator {
    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i1: usize, i2: usize) {
        if i1 == i2 {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i1 * self.cols + j, i2 * self.cols + j);
        }
        if let Some(p) = &mut self.p {
            for j in 0..p.cols() {
                let t = p.at(i1, j).clone();
                *p.at_mut(i1, j) = p.at(i2, j).clone();
                *p.at_mut(i2, j) = t;
            }
        }
    }

    fn swap_cols(&mut self, j1: usize, j2: usize) {
        if j1 == j2 {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j1, i * self.cols + j2);
        }
        if let Some(q) = &mut self.q {
            for i in 0..q.rows() {
                let t = q.at(i, j1).clone();
                *q.at_mut(i, j1) = q.at(i, j2).clone();
                *q.at_mut(i, j2) = t;
            }
        }
    }

    /// `row_dst -= t * row_src`, restricted to columns `>= from` for the
    /// working matrix (earlier columns are already zero in both rows).
    fn row_sub_mul(&mut self, dst: usize, src: usize, t: &BigInt, from: usize) {
        if t.is_zero() {
            return;
        }
        for j in from..self.cols {
            let s = self.a[src * self.cols + j].clone();
            if !s.is_zero() {
                self.a[dst * self.cols + j] -= t * &s;
            }
        }
        if let Some(p) = &mut self.p {
            for j in 0..p.cols() {
                let s = p.at(src, j).clone();
                if !s.is_zero() {
                    *p.at_mut(dst, j) -= t * &s;
                }
            }
        }
    }

    fn col_sub_mul(&mut self, dst: usize, src: usize, t: &BigInt, from: usize) {
        if t.is_zero() {
            return;
        }
        for i in from..self.rows {
            let s = self.a[i * self.cols + src].clone();
            if !s.is_zero() {
                self.a[i * self.cols + dst] -= t * &s;
            }
        }
        if let Some(q) = &mut self.q {
            for i in 0..q.rows() {
                let s = q.at(i, src).clone();
                if !s.is_zero() {
                    *q.at_mut(i, dst) -= t * &s;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.a[i * self.cols + j];
            if !v.is_zero() {
                *v = -(v.clone());
            }
        }
        if let Some(p) = &mut self.p {
            for j in 0..p.cols() {
                let v = p.at_mut(i, j);
                if !v.is_zero() {
                    *v = -(v.clone());
                }
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix; the first match in
    /// row-major order wins, which keeps the computation deterministic.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in k..self.rows {
            for j in k..self.cols {
                let v = self.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.is_none() || a < best_abs {
                    if a.is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                    best_abs = a;
                }
            }
        }
        best
    }
}

/// Quotient of the division with the smallest remainder (|r| <= |b|/2);
/// balanced remainders keep elimination entries from swelling.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2u8 > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form with nonnegative diagonal in a divisibility chain.
/// Deterministic for a fixed input. With `want_transforms`, also returns
/// unimodular `P` and `Q` with `P M Q = S`.
pub fn smith_normal_form(m: &IntegerMatrix, want_transforms: bool) -> Result<SmithDecomposition> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows > DENSE_DIMENSION_CAP || cols > DENSE_DIMENSION_CAP {
        return Err(Error::ResourceLimit(format!(
            "Smith normal form of a {rows}x{cols} matrix exceeds the cap {DENSE_DIMENSION_CAP}"
        )));
    }
    let mut e = Eliminator {
        rows,
        cols,
        a: (0..rows).flat_map(|i| m.row(i).iter().cloned()).collect(),
        p: if want_transforms { Some(IntegerMatrix::identity(rows)?) } else { None },
        q: if want_transforms { Some(IntegerMatrix::identity(cols)?) } else { None },
    };
    let steps = rows.min(cols);
    'outer: for k in 0..steps {
        loop {
            let Some((pi, pj)) = e.min_pivot(k) else {
                break 'outer;
            };
            e.swap_rows(k, pi);
            e.swap_cols(k, pj);

            // Euclidean reduction of column k.
            let mut clean = true;
            for i in k + 1..rows {
                if e.at(i, k).is_zero() {
                    continue;
                }
                let t = rounded_div(e.at(i, k), e.at(k, k));
                e.row_sub_mul(i, k, &t, k);
                if !e.at(i, k).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Euclidean reduction of row k.
            for j in k + 1..cols {
                if e.at(k, j).is_zero() {
                    continue;
                }
                let t = rounded_div(e.at(k, j), e.at(k, k));
                e.col_sub_mul(j, k, &t, k);
                if !e.at(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility repair: if the pivot misses some remaining entry,
            // fold that row into the pivot row and re-eliminate.
            let pivot = e.at(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !e.at(i, j).mod_floor(&pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    e.row_sub_mul(k, i, &minus_one, k);
                }
                None => break,
            }
        }
    }
    for k in 0..steps {
        if e.at(k, k).sign() == num_bigint::Sign::Minus {
            e.negate_row(k);
        }
    }
    let diagonal: Vec<BigInt> = (0..steps).map(|k| e.at(k, k).clone()).collect();
    debug_assert!(diagonal_is_chain(&diagonal));
    Ok(SmithDecomposition { diagonal, p: e.p, q: e.q })
}

fn diagonal_is_chain(diag: &[BigInt]) -> bool {
    for w in diag.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return false;
        }
        if !w[0].is_zero() && !w[1].is_zero() && !w[1].mod_floor(&w[0]).is_zero() {
            return false;
        }
    }
    true
}

/// Exact `p`-adic valuations of the invariant factors, read off the full
/// Smith normal form. This is the default oracle path.
pub fn elementary_divisors_at(m: &IntegerMatrix, p: u64) -> Result<ElementaryDivisorProfile> {
    let snf = smith_normal_form(m, false)?;
    Ok(ElementaryDivisorProfile::from_diagonal(&snf.diagonal, p))
}

/// Alternative single-prime path that never leaves `Z/p^K`: eliminate with
/// minimal-valuation pivots modulo `p^K`, growing `K` until every reported
/// valuation is comfortably below it. The count of zero invariant factors
/// comes from an independent rank computation over `Q`. Useful for larger
/// matrices when only one prime matters.
pub fn elementary_divisors_via_padic(
    m: &IntegerMatrix,
    p: u64,
) -> Result<ElementaryDivisorProfile> {
    let n = m.rows().min(m.cols());
    let rank = m.rank();
    let mut precision: u32 = 32;
    loop {
        let vals = padic_diagonal_valuations(m, p, precision, rank);
        if let Some(vals) = vals {
            if vals.iter().all(|&v| v + 1 < precision) {
                let mut multiplicities = BTreeMap::new();
                for v in vals {
                    *multiplicities.entry(v).or_insert(0u64) += 1;
                }
                return Ok(ElementaryDivisorProfile {
                    p,
                    multiplicities,
                    zero_count: (n - rank) as u64,
                });
            }
        }
        precision = precision
            .checked_mul(2)
            .ok_or_else(|| Error::ResourceLimit("p-adic precision overflow".into()))?;
    }
}

/// One elimination pass modulo `p^precision`; returns the valuations of the
/// first `rank` diagonal entries, or `None` if precision ran out mid-pass.
fn padic_diagonal_valuations(
    m: &IntegerMatrix,
    p: u64,
    precision: u32,
    rank: usize,
) -> Option<Vec<u32>> {
    let modulus = BigInt::from(p).pow(precision);
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<BigInt> = (0..rows)
        .flat_map(|i| m.row(i).iter().map(|v| v.mod_floor(&modulus)))
        .collect();
    let idx = |i: usize, j: usize| i * cols + j;
    let val = |v: &BigInt| -> u32 {
        if v.is_zero() {
            precision
        } else {
            valuation_bigint(v, p)
        }
    };
    let mut out = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in k..rows {
            for j in k..cols {
                let v = val(&a[idx(i, j)]);
                if best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let (pi, pj, v) = best?;
        if v >= precision {
            // True rank says a nonzero pivot exists, but it vanished mod p^K.
            return None;
        }
        if pi != k {
            for j in 0..cols {
                a.swap(idx(k, j), idx(pi, j));
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(idx(i, k), idx(i, pj));
            }
        }
        let p_pow_v = BigInt::from(p).pow(v);
        let unit = &a[idx(k, k)] / &p_pow_v;
        let unit_inv = modinv_unit(&unit, &modulus, p);
        for i in k + 1..rows {
            if a[idx(i, k)].is_zero() {
                continue;
            }
            let t = (&a[idx(i, k)] / &p_pow_v * &unit_inv).mod_floor(&modulus);
            for j in k..cols {
                let s = &a[idx(k, j)] * &t;
                a[idx(i, j)] = (&a[idx(i, j)] - s).mod_floor(&modulus);
            }
        }
        for j in k + 1..cols {
            if a[idx(k, j)].is_zero() {
                continue;
            }
            let t = (&a[idx(k, j)] / &p_pow_v * &unit_inv).mod_floor(&modulus);
            for i in k..rows {
                let s = &a[idx(i, k)] * &t;
                a[idx(i, j)] = (&a[idx(i, j)] - s).mod_floor(&modulus);
            }
        }
        out.push(v);
    }
    Some(out)
}

/// Inverse of a unit modulo `p^K` by Newton iteration from the inverse mod p.
fn modinv_unit(u: &BigInt, modulus: &BigInt, p: u64) -> BigInt {
    let p_big = BigInt::from(p);
    let u0 = u.mod_floor(&p_big);
    let inv0 = crate::arith::invmod(u64::try_from(&u0).expect("residue fits u64"), p);
    let mut inv = BigInt::from(inv0);
    let two = BigInt::from(2);
    loop {
        let err = (u * &inv).mod_floor(modulus);
        if err.is_one() {
            return inv;
        }
        // x -> x(2 - ux) doubles the correct digits each round.
        inv = (&inv * (&two - u * &inv)).mod_floor(modulus);
    }
}

/// Cokernel of the matrix as an abstract abelian group; for an adjacency
/// matrix this is the Smith group of the graph.
pub fn cokernel_structure(m: &IntegerMatrix) -> Result<AbelianGroupStructure> {
    let snf = smith_normal_form(m, false)?;
    Ok(AbelianGroupStructure::from_smith_diagonal(
        &snf.diagonal,
        m.rows(),
    ))
}

/// Critical group: the torsion part of the Laplacian cokernel. The free
/// rank in the result equals the number of connected components.
pub fn critical_group(spec: &GroupSpec, set: &ConnectingSet) -> Result<AbelianGroupStructure> {
    if set.is_empty() {
        return Err(Error::InvalidInput(
            "critical group needs a nonempty connecting set".into(),
        ));
    }
    let l = cayley::laplacian(spec, set)?;
    cokernel_structure(&l)
}

/// Number of spanning trees of the (undirected) Cayley graph: a principal
/// cofactor of the Laplacian. Requires a symmetric connecting set; for a
/// connected graph this equals the torsion order of the critical group.
pub fn spanning_tree_count(spec: &GroupSpec, set: &ConnectingSet) -> Result<BigInt> {
    if !set.is_symmetric() {
        return Err(Error::Unsupported(
            "spanning-tree count needs a symmetric connecting set".into(),
        ));
    }
    let l = cayley::laplacian(spec, set)?;
    let n = l.rows();
    let reduced = l.delete_row_col(n - 1, n - 1);
    Ok(reduced.determinant())
}
