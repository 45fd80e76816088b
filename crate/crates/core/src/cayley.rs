//! Connecting sets and the matrices they generate.
//!
//! The Cayley graph of `G` with connecting set `E` has an edge from `h` to
//! `g` exactly when `g h^{-1} ∈ E`. Every integer combination
//! `c_0 I + Σ c_E A_E` lies in the commutative algebra diagonalized by the
//! character table, so the whole spectral machinery applies to it.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::matrix::IntegerMatrix;
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// How a connecting set was described; kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescription {
    /// An explicit element list.
    Explicit,
    /// A union of weight classes `E_k` for the listed `k`.
    Weights(Vec<usize>),
}

/// A subset `E ⊆ G`, materialized as a sorted, deduplicated element list
/// with its identity/symmetry flags precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingSet {
    description: SetDescription,
    elements: Vec<GroupElement>,
    contains_identity: bool,
    symmetric: bool,
}

impl ConnectingSet {
    /// Build from an explicit element list; duplicates are removed and the
    /// list is sorted into enumeration order.
    pub fn from_elements(spec: &GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        let mut indices = BTreeSet::new();
        for e in &elements {
            spec.element(e.coords.clone())?;
            indices.insert(spec.element_index(e));
        }
        Ok(Self::from_indices(spec, indices, SetDescription::Explicit))
    }

    /// The weight class `E_k`: elements with exactly `k` non-identity
    /// coordinates.
    pub fn weight_class(spec: &GroupSpec, k: usize) -> Result<Self> {
        Self::from_weights(spec, &[k])
    }

    /// A union of weight classes `∪_{k∈W} E_k`.
    pub fn from_weights(spec: &GroupSpec, weights: &[usize]) -> Result<Self> {
        let n = spec.rank();
        let mut ks: Vec<usize> = weights.to_vec();
        ks.sort_unstable();
        ks.dedup();
        for &k in &ks {
            if k > n {
                return Err(Error::InvalidInput(format!(
                    "weight {k} exceeds the number of coordinates {n}"
                )));
            }
        }
        let mut indices = BTreeSet::new();
        for idx in 0..spec.size() as usize {
            let e = spec.element_at(idx);
            let weight = e.coords.iter().filter(|&&c| c != 0).count();
            if ks.binary_search(&weight).is_ok() {
                indices.insert(idx);
            }
        }
        Ok(Self::from_indices(spec, indices, SetDescription::Weights(ks)))
    }

    fn from_indices(
        spec: &GroupSpec,
        indices: BTreeSet<usize>,
        description: SetDescription,
    ) -> Self {
        let elements: Vec<GroupElement> = indices.iter().map(|&i| spec.element_at(i)).collect();
        let contains_identity = indices.contains(&0);
        let symmetric = elements
            .iter()
            .all(|e| indices.contains(&spec.element_index(&spec.inverse(e))));
        ConnectingSet {
            description,
            elements,
            contains_identity,
            symmetric,
        }
    }

    pub fn description(&self) -> &SetDescription {
        &self.description
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// True when `E = E^{-1}`, i.e. the Cayley graph is undirected.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The set `E^{-1}`.
    pub fn inverse(&self, spec: &GroupSpec) -> Self {
        let inv = self.elements.iter().map(|e| spec.inverse(e)).collect();
        Self::from_elements(spec, inv).expect("inverse of a valid set is valid")
    }

    /// Number of connected components of the Cayley graph: the index of the
    /// subgroup generated by `E`.
    pub fn component_count(&self, spec: &GroupSpec) -> usize {
        let size = spec.size() as usize;
        if self.elements.is_empty() {
            return size;
        }
        let mut seen = vec![false; size];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1usize;
        while let Some(idx) = stack.pop() {
            let g = spec.element_at(idx);
            for e in &self.elements {
                let next = spec.element_index(&spec.mul(&g, e));
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        size / reached
    }

    /// Parse the CLI element-list syntax, e.g. `"(1,0),(0,2)"` or `"(4),(5),(6)"`.
    pub fn parse_elements(spec: &GroupSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if !text.starts_with('(') || !text.ends_with(')') {
            return Err(Error::Parse(format!(
                "element list must look like (a,b),(c,d); got {text:?}"
            )));
        }
        let inner = &text[1..text.len() - 1];
        let mut elements = Vec::new();
        for tuple in inner.split("),(") {
            let mut coords = Vec::new();
            for part in tuple.split(',') {
                let c: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate {part:?}")))?;
                coords.push(c);
            }
            elements.push(spec.element(coords)?);
        }
        Self::from_elements(spec, elements)
    }

    /// Parse the CLI weight-list syntax, e.g. `"1,3"`.
    pub fn parse_weights(spec: &GroupSpec, text: &str) -> Result<Self> {
        let mut ks = Vec::new();
        for part in text.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight {part:?}")))?;
            ks.push(k);
        }
        Self::from_weights(spec, &ks)
    }
}

/// An integer combination `c_0 I + Σ c_E A_E` in the algebra diagonalized by
/// the character table (Laplacian, signless Laplacian, Seidel matrix, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCombo {
    pub identity_coeff: i64,
    pub terms: Vec<(i64, ConnectingSet)>,
}

impl MatrixCombo {
    /// Just the adjacency matrix of one set.
    pub fn adjacency(set: ConnectingSet) -> Self {
        MatrixCombo { identity_coeff: 0, terms: vec![(1, set)] }
    }

    /// The Laplacian `|E| I - A_E`; the graph is `|E|`-regular, so the
    /// out-degree matrix is `|E| I` even for directed sets.
    pub fn laplacian(set: ConnectingSet) -> Self {
        MatrixCombo {
            identity_coeff: set.len() as i64,
            terms: vec![(-1, set)],
        }
    }

    /// Parse the CLI combo syntax: terms `k*Wj` (weight-class adjacency) and
    /// `k*I`, joined with `+`/`-`, e.g. `"2*W1-3*I"` or `"W1+W2"`.
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty combo expression".into()));
        }
        let mut combo = MatrixCombo { identity_coeff: 0, terms: Vec::new() };
        let mut rest = compact.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let split = rest.find(['+', '-']);
            let (term, tail) = match split {
                Some(pos) => rest.split_at(pos),
                None => (rest, ""),
            };
            let (coeff_text, atom) = match term.split_once('*') {
                Some((c, a)) => (Some(c), a),
                None => (None, term),
            };
            let coeff: i64 = match coeff_text {
                Some(c) => c
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?} in combo")))?,
                None => 1,
            };
            let coeff = sign * coeff;
            if atom == "I" {
                combo.identity_coeff += coeff;
            } else if let Some(k_text) = atom.strip_prefix('W') {
                let k: usize = k_text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad weight class {atom:?} in combo")))?;
                combo.terms.push((coeff, ConnectingSet::weight_class(spec, k)?));
            } else {
                return Err(Error::Parse(format!(
                    "unknown combo atom {atom:?}; expected I or W<k>"
                )));
            }
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1 } else { 1 };
            rest = &tail[1..];
        }
        Ok(combo)
    }

}

/// Adjacency matrix of the Cayley graph: row `h`, column `g` holds 1 exactly
/// when `g h^{-1} ∈ E`. Rows and columns are indexed in enumeration order.
pub fn adjacency_matrix(spec: &GroupSpec, set: &ConnectingSet) -> Result<IntegerMatrix> {
    let n = spec.size() as usize;
    let mut a = IntegerMatrix::zeros(n, n)?;
    for h_idx in 0..n {
        let h = spec.element_at(h_idx);
        for e in set.elements() {
            let g_idx = spec.element_index(&spec.mul(e, &h));
            *a.at_mut(h_idx, g_idx) = BigInt::from(1);
        }
    }
    Ok(a)
}

/// The Laplacian `|E| I - A_E`.
pub fn laplacian(spec: &GroupSpec, set: &ConnectingSet) -> Result<IntegerMatrix> {
    combo_matrix(spec, &MatrixCombo::laplacian(set.clone()))
}

/// Materialize `c_0 I + Σ c_E A_E` entrywise, without building the
/// individual adjacency matrices.
pub fn combo_matrix(spec: &GroupSpec, combo: &MatrixCombo) -> Result<IntegerMatrix> {
    let n = spec.size() as usize;
    let mut m = IntegerMatrix::zeros(n, n)?;
    if combo.identity_coeff != 0 {
        let c = BigInt::from(combo.identity_coeff);
        for i in 0..n {
            *m.at_mut(i, i) += &c;
        }
    }
    for (coeff, set) in &combo.terms {
        if *coeff == 0 {
            continue;
        }
        let c = BigInt::from(*coeff);
        for h_idx in 0..n {
            let h = spec.element_at(h_idx);
            for e in set.elements() {
                let g_idx = spec.element_index(&spec.mul(e, &h));
                *m.at_mut(h_idx, g_idx) += &c;
            }
        }
    }
    Ok(m)
}
