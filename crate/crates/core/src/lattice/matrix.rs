use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Bound for the integer scalar of the lattice layer.
///
/// Satisfied by the machine integers and by `num_bigint::BigInt`; the crate
/// alias [`crate::Int`] picks the latter so entries never overflow.
pub trait LatticeScalar:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromStr + From<i64>
{
}

impl<T> LatticeScalar for T where
    T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromStr + From<i64>
{
}

/// Dense rectangular matrix with exact integer entries, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<I> {
    rows: usize,
    cols: usize,
    entries: Vec<I>,
}

impl<I: LatticeScalar> IntMatrix<I> {
    pub fn new(rows: usize, cols: usize, entries: Vec<I>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![I::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    /// Builds a matrix from machine integers, mostly for fixtures.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&v| I::from(v)).collect())
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<I>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<I> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<I> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<I>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Keeps the columns listed in `keep`, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, keep.len());
        for (out_j, &j) in keep.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, out_j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Stacks `self` on top of `other`; column counts must agree.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "stack needs equal widths");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Places `self` and `other` side by side; row counts must agree.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal heights");
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(cols)
    }

    /// Block-diagonal composition.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn mul_vec(&self, v: &[I]) -> Vec<I> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(I::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ia = a * self.cols + j;
            let ib = b * self.cols + j;
            self.entries.swap(ia, ib);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let ia = i * self.cols + a;
            let ib = i * self.cols + b;
            self.entries.swap(ia, ib);
        }
    }

    /// row_i += c * row_k
    pub fn add_row_multiple(&mut self, i: usize, k: usize, c: &I) {
        for j in 0..self.cols {
            let v = self[(i, j)].clone() + c.clone() * self[(k, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// col_j += c * col_k
    pub fn add_col_multiple(&mut self, j: usize, k: usize, c: &I) {
        for i in 0..self.rows {
            let v = self[(i, j)].clone() + c.clone() * self[(i, k)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl<I> std::ops::Index<(usize, usize)> for IntMatrix<I> {
    type Output = I;
    fn index(&self, (i, j): (usize, usize)) -> &I {
        &self.entries[i * self.cols + j]
    }
}

impl<I> std::ops::IndexMut<(usize, usize)> for IntMatrix<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut I {
        &mut self.entries[i * self.cols + j]
    }
}

impl<I: LatticeScalar> Mul for &IntMatrix<I> {
    type Output = IntMatrix<I>;
    fn mul(self, rhs: &IntMatrix<I>) -> IntMatrix<I> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::<I>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + self[(i, k)].clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<I: LatticeScalar> Add for &IntMatrix<I> {
    type Output = IntMatrix<I>;
    fn add(self, rhs: &IntMatrix<I>) -> IntMatrix<I> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<I: LatticeScalar> Sub for &IntMatrix<I> {
    type Output = IntMatrix<I>;
    fn sub(self, rhs: &IntMatrix<I>) -> IntMatrix<I> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<I: LatticeScalar> Neg for &IntMatrix<I> {
    type Output = IntMatrix<I>;
    fn neg(self) -> IntMatrix<I> {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<I: LatticeScalar> fmt::Display for IntMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<I: LatticeScalar> fmt::Debug for IntMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Matrices serialize with string entries so arbitrary precision survives JSON.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl<I: LatticeScalar> Serialize for IntMatrix<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de, I: LatticeScalar> Deserialize<'de> for IntMatrix<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(wire.rows * wire.cols);
        if wire.entries.len() != wire.rows {
            return Err(D::Error::custom("row count mismatch"));
        }
        for row in &wire.entries {
            if row.len() != wire.cols {
                return Err(D::Error::custom("column count mismatch"));
            }
            for s in row {
                entries.push(
                    I::from_str(s).map_err(|_| D::Error::custom("bad integer literal"))?,
                );
            }
        }
        Ok(IntMatrix { rows: wire.rows, cols: wire.cols, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IMat, Int};

    #[test]
    fn product_and_identity() {
        let a = IMat::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let id = IMat::identity(2);
        assert_eq!(&id * &a, a);
        let b = IMat::from_i64(3, 1, &[1, 0, -1]);
        assert_eq!((&a * &b).column(0), vec![Int::from(-2), Int::from(-2)]);
    }

    #[test]
    fn json_roundtrip_keeps_big_entries() {
        let big: Int = Int::from(10).pow(40) + 7;
        let m = IMat::new(1, 2, vec![big.clone(), -big.clone()]);
        let js = serde_json::to_string(&m).unwrap();
        assert!(js.contains("10000000000000000000000000000000000000007"));
        let back: IMat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }
}
