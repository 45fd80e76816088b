//! Dense matrices over arbitrary-precision integers.

use crate::caps::DENSE_DIMENSION_CAP;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense, exact integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows > DENSE_DIMENSION_CAP || cols > DENSE_DIMENSION_CAP {
            return Err(Error::ResourceLimit(format!(
                "matrix {rows}x{cols} exceeds the dense cap {DENSE_DIMENSION_CAP}"
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        Ok(m)
    }

    /// Test/report helper: build from i64 rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![BigInt::zero(); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            data: vec![BigInt::zero(); self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Remove one row and one column (for principal cofactors).
    pub fn delete_row_col(&self, row: usize, col: usize) -> Self {
        assert!(row < self.rows && col < self.cols);
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j != col {
                    data.push(self.at(i, j).clone());
                }
            }
        }
        IntegerMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) {
                    Some(swap) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(swap, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    let (q, r) = t.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division not exact");
                    a[idx(i, j)] = q;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let det = a[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Rank over the rationals by fraction-free elimination with column
    /// skipping.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let idx = |i: usize, j: usize| i * cols + j;
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pivot) = (r..rows).find(|&i| !a[idx(i, c)].is_zero()) else {
                continue;
            };
            if pivot != r {
                for j in 0..cols {
                    a.swap(idx(r, j), idx(pivot, j));
                }
            }
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let t = &a[idx(i, j)] * &a[idx(r, c)] - &a[idx(i, c)] * &a[idx(r, j)];
                    let (q, rem) = t.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division not exact");
                    a[idx(i, j)] = q;
                }
                a[idx(i, c)] = BigInt::zero();
            }
            prev = a[idx(r, c)].clone();
            r += 1;
        }
        r
    }

    /// Rank of the matrix reduced modulo a prime.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let p_big = BigInt::from(p);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|v| {
                let r = v.mod_floor(&p_big);
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let idx = |i: usize, j: usize| i * cols + j;
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pivot) = (r..rows).find(|&i| a[idx(i, c)] % p != 0) else {
                continue;
            };
            if pivot != r {
                for j in 0..cols {
                    a.swap(idx(r, j), idx(pivot, j));
                }
            }
            let inv = crate::arith::invmod(a[idx(r, c)], p);
            for i in r + 1..rows {
                if a[idx(i, c)] == 0 {
                    continue;
                }
                let factor = crate::arith::mulmod(a[idx(i, c)], inv, p);
                for j in c..cols {
                    let sub = crate::arith::mulmod(factor, a[idx(r, j)], p);
                    a[idx(i, j)] = (a[idx(i, j)] + p - sub) % p;
                }
            }
            r += 1;
        }
        r
    }

    /// Serialize in the plain-text exchange format: a `rows cols` header
    /// line followed by row-major integers, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the plain-text exchange format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let rows: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing row count".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad row count".into()))?;
        let cols: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing column count".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad column count".into()))?;
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                let tok = tokens.next().ok_or_else(|| {
                    Error::Parse(format!("matrix ended early at entry ({i},{j})"))
                })?;
                *m.at_mut(i, j) = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {tok:?} at ({i},{j})")))?;
            }
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after matrix data".into()));
        }
        Ok(m)
    }

    /// Entrywise congruence test modulo `k`.
    pub fn congruent_mod(&self, other: &Self, k: &BigInt) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a - b).mod_floor(k).is_zero())
    }

    /// Absolute value of the largest entry; used by growth diagnostics.
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        assert_eq!(m.determinant(), BigInt::from(30));
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.determinant(), BigInt::zero());
    }

    #[test]
    fn rank_examples() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntegerMatrix::identity(4).unwrap().rank(), 4);
        assert_eq!(IntegerMatrix::zeros(3, 5).unwrap().rank(), 0);
    }

    #[test]
    fn rank_mod_p() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.rank_mod_p(2), 0);
        assert_eq!(m.rank_mod_p(3), 2);
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank_mod_p(2), 1);
    }

    #[test]
    fn text_roundtrip() {
        let m = IntegerMatrix::from_rows(&[vec![1, -2, 3], vec![0, 5, -6]]);
        let text = m.to_text();
        assert_eq!(text, "2 3\n1 -2 3\n0 5 -6\n");
        assert_eq!(IntegerMatrix::from_text(&text).unwrap(), m);
        assert!(IntegerMatrix::from_text("2 2\n1 2 3").is_err());
        assert!(IntegerMatrix::from_text("1 1\n2 3").is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.mul(&b),
            IntegerMatrix::from_rows(&[vec![2, 1], vec![4, 3]])
        );
        assert_eq!(
            a.transpose(),
            IntegerMatrix::from_rows(&[vec![1, 3], vec![2, 4]])
        );
    }
}
