//! The finite abelian group `Z_q1 x ... x Z_qn`, its elements, its
//! irreducible characters, and exact character evaluation.
//!
//! Characters are never evaluated as complex numbers. `χ(g)` is a root of
//! unity `ζ_m^t` where `m` is the exponent of the group, and everything
//! downstream works with the exponent `t` or with exact elements of
//! `Z[ζ_m]`.

use crate::arith;
use crate::caps::DENSE_DIMENSION_CAP;
use crate::error::{Error, Result};
use num_integer::Integer;

/// A fixed cyclic decomposition of a finite abelian group.
///
/// Elements and characters are enumerated in mixed-radix order with the last
/// coordinate varying fastest, so all matrices indexed by the group are
/// reproducible bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u64>,
    size: u64,
    exponent: u64,
}

/// An element of the group, written additively per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// An irreducible character, indexed like an element of the dual group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub coords: Vec<u64>,
}

impl GroupSpec {
    /// Build a group from its cyclic factor orders. Every order must be at
    /// least 2; trivial factors are rejected rather than silently dropped,
    /// since the number of coordinates is meaningful for weight classes.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidInput("group needs at least one cyclic factor".into()));
        }
        if let Some(&q) = orders.iter().find(|&&q| q < 2) {
            return Err(Error::InvalidInput(format!(
                "cyclic factor of order {q} is not allowed (orders must be >= 2)"
            )));
        }
        let mut size: u64 = 1;
        let mut exponent: u64 = 1;
        for &q in &orders {
            size = size
                .checked_mul(q)
                .ok_or_else(|| Error::ResourceLimit("group order overflows u64".into()))?;
            exponent = exponent.lcm(&q);
        }
        Ok(GroupSpec { orders, size, exponent })
    }

    /// Parse the CLI syntax: a comma list of orders where each token is
    /// either a plain order `q` or a power `q^n` standing for `n` copies.
    /// `"2^3,5"` is `Z_2 x Z_2 x Z_2 x Z_5`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::Parse(format!("empty factor in group spec {text:?}")));
            }
            let (base, count) = match token.split_once('^') {
                Some((b, e)) => {
                    let count: u64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
                    if count == 0 {
                        return Err(Error::Parse(format!("zero exponent in {token:?}")));
                    }
                    (b.trim(), count)
                }
                None => (token, 1),
            };
            let q: u64 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad order in {token:?}")))?;
            for _ in 0..count {
                orders.push(q);
            }
        }
        GroupSpec::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`, the product of the factor orders.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// The exponent `m = lcm(q_1, ..., q_n)`; every character value is an
    /// `m`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.orders.len()] }
    }

    pub fn principal_character(&self) -> Character {
        Character { coords: vec![0; self.orders.len()] }
    }

    /// Validate coordinates and build an element.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        self.check_coords(&coords)?;
        Ok(GroupElement { coords })
    }

    /// Validate coordinates and build a character.
    pub fn character(&self, coords: Vec<u64>) -> Result<Character> {
        self.check_coords(&coords)?;
        Ok(Character { coords })
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        for (i, (&c, &q)) in coords.iter().zip(&self.orders).enumerate() {
            if c >= q {
                return Err(Error::InvalidInput(format!(
                    "coordinate {i} is {c}, outside Z_{q}"
                )));
            }
        }
        Ok(())
    }

    /// Index of an element in enumeration order.
    pub fn element_index(&self, g: &GroupElement) -> usize {
        debug_assert_eq!(g.coords.len(), self.orders.len());
        let mut idx: u64 = 0;
        for (&c, &q) in g.coords.iter().zip(&self.orders) {
            idx = idx * q + c;
        }
        idx as usize
    }

    /// Element at a given enumeration index.
    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!((index as u64) < self.size);
        let mut coords = vec![0u64; self.orders.len()];
        let mut rest = index as u64;
        for i in (0..self.orders.len()).rev() {
            coords[i] = rest % self.orders[i];
            rest /= self.orders[i];
        }
        GroupElement { coords }
    }

    /// All group elements in the fixed mixed-radix order (identity first,
    /// last coordinate fastest).
    pub fn enumerate_elements(&self) -> Vec<GroupElement> {
        (0..self.size as usize).map(|i| self.element_at(i)).collect()
    }

    /// All characters, indexed exactly like the elements (principal first).
    pub fn enumerate_characters(&self) -> Vec<Character> {
        (0..self.size as usize)
            .map(|i| Character { coords: self.element_at(i).coords })
            .collect()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.orders)
            .map(|((&x, &y), &q)| (x + y) % q)
            .collect();
        GroupElement { coords }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &q)| if x == 0 { 0 } else { q - x })
            .collect();
        GroupElement { coords }
    }

    /// Exact character evaluation: returns `t` with `χ(g) = ζ_m^t`,
    /// `t = Σ_i (m / q_i) a_i g_i mod m`.
    pub fn char_exponent(&self, chi: &Character, g: &GroupElement) -> Result<u64> {
        self.check_coords(&chi.coords)?;
        self.check_coords(&g.coords)?;
        Ok(self.char_exponent_unchecked(chi, g))
    }

    /// As [`char_exponent`](Self::char_exponent) but without revalidating
    /// coordinates; used in enumeration loops.
    pub fn char_exponent_unchecked(&self, chi: &Character, g: &GroupElement) -> u64 {
        let m = self.exponent;
        let mut t: u64 = 0;
        for ((&a, &gi), &q) in chi.coords.iter().zip(&g.coords).zip(&self.orders) {
            let step = m / q;
            t = (t + arith::mulmod(arith::mulmod(step % m, a % m, m), gi % m, m)) % m;
        }
        t
    }

    /// The character table as a dense matrix of exponents of `ζ_m`:
    /// rows are characters, columns are elements, both in enumeration order.
    pub fn char_table(&self) -> Result<Vec<Vec<u64>>> {
        if self.size as usize > DENSE_DIMENSION_CAP {
            return Err(Error::ResourceLimit(format!(
                "character table of size {} exceeds the dense cap {}",
                self.size, DENSE_DIMENSION_CAP
            )));
        }
        let elements = self.enumerate_elements();
        let characters = self.enumerate_characters();
        Ok(characters
            .iter()
            .map(|chi| {
                elements
                    .iter()
                    .map(|g| self.char_exponent_unchecked(chi, g))
                    .collect()
            })
            .collect())
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|q| q.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[u64]) -> GroupSpec {
        GroupSpec::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn sizes_and_exponent() {
        let g = spec(&[2, 3]);
        assert_eq!(g.size(), 6);
        assert_eq!(g.exponent(), 6);
        let g = spec(&[2, 2, 2]);
        assert_eq!(g.size(), 8);
        assert_eq!(g.exponent(), 2);
        let g = spec(&[4, 6]);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn rejects_trivial_factors() {
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![1]).is_err());
        assert!(GroupSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(GroupSpec::parse("2^5").unwrap().orders(), &[2, 2, 2, 2, 2]);
        assert_eq!(GroupSpec::parse("2,3,4").unwrap().orders(), &[2, 3, 4]);
        assert_eq!(GroupSpec::parse("3^2,5").unwrap().orders(), &[3, 3, 5]);
        assert!(GroupSpec::parse("").is_err());
        assert!(GroupSpec::parse("2^0").is_err());
        assert!(GroupSpec::parse("x").is_err());
        assert!(GroupSpec::parse("1").is_err());
    }

    #[test]
    fn enumeration_order() {
        let g = spec(&[2]);
        let elems: Vec<Vec<u64>> = g.enumerate_elements().into_iter().map(|e| e.coords).collect();
        assert_eq!(elems, vec![vec![0], vec![1]]);

        let g = spec(&[2, 2]);
        let elems: Vec<Vec<u64>> = g.enumerate_elements().into_iter().map(|e| e.coords).collect();
        assert_eq!(elems, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        assert_eq!(spec(&[3]).enumerate_elements().len(), 3);
    }

    #[test]
    fn element_index_roundtrip() {
        let g = spec(&[2, 3, 4]);
        for i in 0..g.size() as usize {
            assert_eq!(g.element_index(&g.element_at(i)), i);
        }
    }

    #[test]
    fn char_exponent_examples() {
        // Principal character sends everything to exponent 0.
        let g = spec(&[5, 7]);
        let chi = g.principal_character();
        for e in g.enumerate_elements() {
            assert_eq!(g.char_exponent(&chi, &e).unwrap(), 0);
        }

        // Z_7: chi = (1) at g = (4) evaluates to zeta_7^4.
        let g = spec(&[7]);
        let chi = g.character(vec![1]).unwrap();
        let x4 = g.element(vec![4]).unwrap();
        assert_eq!(g.char_exponent(&chi, &x4).unwrap(), 4);

        // Z_2 x Z_3 with m = 6: chi = (1,1) at (1,1) gives 3 + 2 = 5.
        let g = spec(&[2, 3]);
        let chi = g.character(vec![1, 1]).unwrap();
        let e = g.element(vec![1, 1]).unwrap();
        assert_eq!(g.char_exponent(&chi, &e).unwrap(), 5);
    }

    #[test]
    fn char_exponent_complex_oracle() {
        // Independent check: evaluate characters as complex numbers and
        // match the product against powers of e^{2 pi i / m}.
        let g = spec(&[2, 3]);
        let m = g.exponent();
        for chi in g.enumerate_characters() {
            for e in g.enumerate_elements() {
                let t = g.char_exponent(&chi, &e).unwrap();
                let mut angle = 0.0_f64;
                for ((&a, &x), &q) in chi.coords.iter().zip(&e.coords).zip(g.orders()) {
                    angle += 2.0 * std::f64::consts::PI * (a * x) as f64 / q as f64;
                }
                let expected = 2.0 * std::f64::consts::PI * t as f64 / m as f64;
                let diff = (angle - expected).rem_euclid(2.0 * std::f64::consts::PI);
                assert!(diff < 1e-9 || (2.0 * std::f64::consts::PI - diff) < 1e-9);
            }
        }
    }

    #[test]
    fn char_exponent_rejects_bad_coords() {
        let g = spec(&[2, 3]);
        let chi = Character { coords: vec![0, 3] };
        assert!(g.char_exponent(&chi, &g.identity()).is_err());
        let e = GroupElement { coords: vec![2, 0] };
        assert!(g.char_exponent(&g.principal_character(), &e).is_err());
    }

    #[test]
    fn char_table_small() {
        // Z_2: exponents of zeta_2 = -1.
        assert_eq!(spec(&[2]).char_table().unwrap(), vec![vec![0, 0], vec![0, 1]]);
        // Z_3: chi_a(g) = zeta_3^{a g}.
        assert_eq!(
            spec(&[3]).char_table().unwrap(),
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]
        );
        // Z_2 x Z_2 with m = 2: the +-1 Hadamard-type table.
        assert_eq!(
            spec(&[2, 2]).char_table().unwrap(),
            vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 1, 1],
                vec![0, 1, 1, 0]
            ]
        );
    }

    #[test]
    fn multiplicativity_and_inverse() {
        let g = spec(&[4, 6]);
        let m = g.exponent();
        let elems = g.enumerate_elements();
        for chi in g.enumerate_characters() {
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(5) {
                    let lhs = g.char_exponent_unchecked(&chi, &g.mul(a, b));
                    let rhs =
                        (g.char_exponent_unchecked(&chi, a) + g.char_exponent_unchecked(&chi, b)) % m;
                    assert_eq!(lhs, rhs);
                }
                let inv = g.char_exponent_unchecked(&chi, &g.inverse(a));
                let fwd = g.char_exponent_unchecked(&chi, a);
                assert_eq!((inv + fwd) % m, 0);
            }
        }
    }
}
