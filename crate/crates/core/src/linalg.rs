//! Dense exact linear algebra over a field, generic over the scalar.
//!
//! Everything is plain Gaussian elimination; sizes in this crate are tiny
//! and exactness matters more than speed.

use std::fmt;
use std::ops::Neg;

use num_traits::Num;

/// Field scalar bound; the crate instantiates it at [`crate::Rat`].
pub trait FieldScalar: Num + Clone + Neg<Output = Self> + fmt::Debug {}
impl<T> FieldScalar for T where T: Num + Clone + Neg<Output = T> + fmt::Debug {}

/// Dense matrix over a field, row major.
#[derive(Clone, PartialEq)]
pub struct FMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: FieldScalar> FMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        FMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn row(&self, i: usize) -> Vec<F> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)] == F::zero() {
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

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        Self::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                rhs[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| *v == F::zero())
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&i| self[(i, col)] != F::zero()) else {
                continue;
            };
            self.swap_rows(prow, sel);
            let inv = F::one() / self[(prow, col)].clone();
            for j in col..self.cols {
                let v = self[(prow, j)].clone() * inv.clone();
                self[(prow, j)] = v;
            }
            for i in 0..self.rows {
                if i != prow && self[(i, col)] != F::zero() {
                    let c = self[(i, col)].clone();
                    for j in col..self.cols {
                        let v = self[(i, j)].clone() - c.clone() * self[(prow, j)].clone();
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self * x = 0}`, one column per basis vector.
    pub fn kernel(&self) -> FMatrix<F> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = F::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -m[(prow, fc)].clone();
            }
        }
        out
    }

    /// A particular solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.hstack(&Self::from_rows(b.iter().map(|v| vec![v.clone()]).collect()));
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(prow, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for FMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for FMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: FieldScalar> fmt::Debug for FMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Extends the column space of `sub` to the full ambient space; returns the
/// indices of standard basis vectors forming a complement.
pub fn complement_basis<F: FieldScalar>(sub: &FMatrix<F>) -> Vec<usize> {
    let n = sub.nrows();
    let mut aug = sub.hstack(&FMatrix::identity(n));
    let pivots = aug.rref();
    pivots.into_iter().filter(|&p| p >= sub.ncols()).map(|p| p - sub.ncols()).collect()
}

/// Dimensions of the cohomology of a complex of maps `d_i : C_i -> C_{i+1}`
/// (`maps[i]` has shape `dim C_{i+1} x dim C_i`); returns one entry per term.
pub fn complex_cohomology_dims<F: FieldScalar>(dims: &[usize], maps: &[FMatrix<F>]) -> Vec<usize> {
    assert_eq!(maps.len() + 1, dims.len());
    for (i, m) in maps.iter().enumerate() {
        assert_eq!(m.ncols(), dims[i]);
        assert_eq!(m.nrows(), dims[i + 1]);
    }
    let ranks: Vec<usize> = maps.iter().map(|m| m.rank()).collect();
    (0..dims.len())
        .map(|i| {
            let out_rank = if i < maps.len() { ranks[i] } else { 0 };
            let in_rank = if i > 0 { ranks[i - 1] } else { 0 };
            dims[i] - out_rank - in_rank
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    #[test]
    fn rank_and_kernel() {
        let m = FMatrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
        ]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.ncols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solving() {
        let m = FMatrix::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]]);
        assert_eq!(m.solve(&[rat(1, 1), rat(1, 1)]), Some(vec![rat(1, 2), rat(1, 3)]));
        let sing = FMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1)]]);
        assert_eq!(sing.solve(&[rat(0, 1), rat(1, 1)]), None);
    }

    #[test]
    fn circle_cochain_complex() {
        // one vertex, one edge: d = 0, so both cohomologies are 1-dimensional
        let d = FMatrix::<Rat>::zeros(1, 1);
        assert_eq!(complex_cohomology_dims(&[1, 1], &[d]), vec![1, 1]);
    }
}
