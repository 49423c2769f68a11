use super::matrix::{IntMatrix, LatticeScalar};

/// Smith decomposition `A = U * S * V` with `U`, `V` unimodular and `S`
/// diagonal, nonnegative, each entry dividing the next.  The inverses are
/// accumulated during the reduction because kernels and cokernel lifts are
/// read off them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<I: LatticeScalar> {
    pub u: IntMatrix<I>,
    pub s: IntMatrix<I>,
    pub v: IntMatrix<I>,
    u_inv: IntMatrix<I>,
    v_inv: IntMatrix<I>,
}

impl<I: LatticeScalar> SmithDecomposition<I> {
    pub fn u_inv(&self) -> &IntMatrix<I> {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix<I> {
        &self.v_inv
    }

    /// Diagonal entries of `S`, one per `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<I> {
        (0..self.s.nrows().min(self.s.ncols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries, i.e. the rank of `A`.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reduction<I: LatticeScalar> {
    s: IntMatrix<I>,
    u: IntMatrix<I>,
    u_inv: IntMatrix<I>,
    v: IntMatrix<I>,
    v_inv: IntMatrix<I>,
}

// Each elementary operation is applied to S together with its inverse on U
// (row ops) or V (column ops), keeping U*S*V constant.
impl<I: LatticeScalar> Reduction<I> {
    fn new(a: &IntMatrix<I>) -> Self {
        Reduction {
            s: a.clone(),
            u: IntMatrix::identity(a.nrows()),
            u_inv: IntMatrix::identity(a.nrows()),
            v: IntMatrix::identity(a.ncols()),
            v_inv: IntMatrix::identity(a.ncols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_cols(a, b);
        self.u_inv.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_rows(a, b);
        self.v_inv.swap_cols(a, b);
    }

    /// S: row_i += c*row_k
    fn add_row(&mut self, i: usize, k: usize, c: &I) {
        self.s.add_row_multiple(i, k, c);
        let neg = -c.clone();
        self.u.add_col_multiple(k, i, &neg);
        self.u_inv.add_row_multiple(i, k, c);
    }

    /// S: col_j += c*col_k
    fn add_col(&mut self, j: usize, k: usize, c: &I) {
        self.s.add_col_multiple(j, k, c);
        let neg = -c.clone();
        self.v.add_row_multiple(k, j, &neg);
        self.v_inv.add_col_multiple(j, k, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    fn smallest_nonzero(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.s.nrows() {
            for j in from..self.s.ncols() {
                if self.s[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.s[(i, j)].abs() < self.s[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form of `a`.  Total: never fails.
pub fn smith_normal_form<I: LatticeScalar>(a: &IntMatrix<I>) -> SmithDecomposition<I> {
    let mut r = Reduction::new(a);
    let n = a.nrows().min(a.ncols());
    let mut pivot = 0;
    while pivot < n {
        let Some((pi, pj)) = r.smallest_nonzero(pivot) else {
            break;
        };
        r.swap_rows(pivot, pi);
        r.swap_cols(pivot, pj);
        // Shrink the pivot until it divides its whole row and column, then
        // clear them.  Truncated division keeps remainders strictly smaller.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in pivot + 1..r.s.nrows() {
                if !r.s[(i, pivot)].is_zero() {
                    let q = -(r.s[(i, pivot)].clone() / r.s[(pivot, pivot)].clone());
                    r.add_row(i, pivot, &q);
                    if !r.s[(i, pivot)].is_zero() {
                        r.swap_rows(pivot, i);
                        dirty = true;
                    }
                }
            }
            for j in pivot + 1..r.s.ncols() {
                if !r.s[(pivot, j)].is_zero() {
                    let q = -(r.s[(pivot, j)].clone() / r.s[(pivot, pivot)].clone());
                    r.add_col(j, pivot, &q);
                    if !r.s[(pivot, j)].is_zero() {
                        r.swap_cols(pivot, j);
                        dirty = true;
                    }
                }
            }
        }
        // Enforce divisibility of the remaining block by the pivot.
        let mut fixed = false;
        'scan: for i in pivot + 1..r.s.nrows() {
            for j in pivot + 1..r.s.ncols() {
                if !r.s[(i, j)].is_multiple_of(&r.s[(pivot, pivot)]) {
                    r.add_row(pivot, i, &I::one());
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if !fixed {
            pivot += 1;
        }
    }
    for i in 0..n {
        if r.s[(i, i)].is_negative() {
            r.negate_row(i);
        }
    }
    SmithDecomposition { u: r.u, s: r.s, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}

/// Basis of the saturated kernel lattice `{x : A x = 0}`, returned as the
/// columns of an `ncols x k` matrix (empty when the kernel is trivial).
pub fn kernel_basis<I: LatticeScalar>(a: &IntMatrix<I>) -> IntMatrix<I> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let keep: Vec<usize> = (rank..a.ncols()).collect();
    snf.v_inv().select_columns(&keep)
}

/// Presentation of `Z^rows / image(A)` by rank and invariant factors.
pub fn cokernel<I: LatticeScalar>(a: &IntMatrix<I>) -> super::FinAbPresentation<I> {
    let snf = smith_normal_form(a);
    let factors: Vec<I> = snf
        .diagonal()
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    super::FinAbPresentation { rank: a.nrows() - snf.rank(), invariant_factors: factors }
}

/// Row-style Hermite normal form: canonical for the row span.  Nonzero rows
/// come first, pivots are positive, entries above a pivot are reduced into
/// `[0, pivot)`, pivot columns strictly increase.
pub fn hermite_normal_form<I: LatticeScalar>(a: &IntMatrix<I>) -> IntMatrix<I> {
    let mut m = a.clone();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in prow..rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if m[(i, col)].abs() < m[(b, col)].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            m.swap_rows(prow, b);
            let mut done = true;
            for i in prow + 1..rows {
                if !m[(i, col)].is_zero() {
                    let q = -(m[(i, col)].clone() / m[(prow, col)].clone());
                    m.add_row_multiple(i, prow, &q);
                    if !m[(i, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[(prow, col)].is_zero() {
            continue;
        }
        if m[(prow, col)].is_negative() {
            m.negate_row(prow);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..prow {
            let q = -m[(i, col)].div_floor(&m[(prow, col)]);
            m.add_row_multiple(i, prow, &q);
        }
        prow += 1;
    }
    m
}

/// Equality of the lattices spanned by the *columns* of `a` and `b`,
/// decided by comparing canonical Hermite forms, never raw matrices.
pub fn lattice_eq<I: LatticeScalar>(a: &IntMatrix<I>, b: &IntMatrix<I>) -> bool {
    if a.nrows() != b.nrows() {
        return false;
    }
    let strip = |m: &IntMatrix<I>| {
        let h = hermite_normal_form(&m.transpose());
        let rows: Vec<Vec<I>> =
            (0..h.nrows()).map(|i| h.row(i)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        rows
    };
    strip(a) == strip(b)
}

/// Finds an integer solution of `A x = b`, if one exists.
pub fn solve_integer<I: LatticeScalar>(a: &IntMatrix<I>, b: &[I]) -> Option<Vec<I>> {
    assert_eq!(b.len(), a.nrows());
    let snf = smith_normal_form(a);
    let y = snf.u_inv().mul_vec(b);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let mut z = vec![I::zero(); a.ncols()];
    for (i, yi) in y.iter().enumerate() {
        if i < rank {
            if !yi.is_multiple_of(&diag[i]) {
                return None;
            }
            z[i] = yi.clone() / diag[i].clone();
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v_inv().mul_vec(&z))
}

/// Whether `v` lies in the lattice spanned by the columns of `basis`.
pub fn lattice_contains<I: LatticeScalar>(basis: &IntMatrix<I>, v: &[I]) -> bool {
    solve_integer(basis, v).is_some()
}

/// Coset data for `Z^k / image(sub)`: finitely many torsion representatives
/// together with generators of the free directions.
pub struct CosetReps<I: LatticeScalar> {
    pub torsion_reps: Vec<Vec<I>>,
    pub free_gens: Vec<Vec<I>>,
}

pub fn coset_reps<I: LatticeScalar>(sub: &IntMatrix<I>) -> CosetReps<I> {
    let k = sub.nrows();
    let snf = smith_normal_form(sub);
    let diag = snf.diagonal();
    let rank = snf.rank();
    // representatives x = U*y, torsion coordinates ranging over [0, s_i)
    let mut reps: Vec<Vec<I>> = vec![vec![I::zero(); k]];
    for (i, s) in diag.iter().enumerate().take(rank) {
        if s.is_one() {
            continue;
        }
        let mut next = Vec::new();
        for rep in &reps {
            let mut res = I::zero();
            while &res < s {
                let mut y = rep.clone();
                y[i] = res.clone();
                next.push(y);
                res = res + I::one();
            }
        }
        reps = next;
    }
    let torsion_reps = reps.into_iter().map(|y| snf.u.mul_vec(&y)).collect();
    let free_gens = (rank..k).map(|i| snf.u.column(i)).collect();
    CosetReps { torsion_reps, free_gens }
}

#[cfg(test)]
mod tests {
    use num_integer::Integer as _;
    use num_traits::{Signed as _, Zero as _};

    use super::*;
    use crate::{IMat, Int};

    fn check_snf(a: &IMat) -> SmithDecomposition<Int> {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * &snf.s) * &snf.v, *a, "U*S*V must equal A");
        assert!((&snf.u * snf.u_inv()).is_identity());
        assert!((&snf.v * snf.v_inv()).is_identity());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain");
            } else {
                assert!(w[1].is_zero());
            }
        }
        for d in &diag {
            assert!(!d.is_negative());
        }
        snf
    }

    #[test]
    fn identity_is_its_own_snf() {
        let snf = check_snf(&IMat::identity(2));
        assert_eq!(snf.s, IMat::identity(2));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let snf = check_snf(&IMat::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(snf.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn two_by_two_example() {
        let snf = check_snf(&IMat::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(snf.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn kernel_of_difference_map() {
        let a = IMat::from_i64(1, 2, &[1, -1]);
        let k = kernel_basis(&a);
        assert_eq!(k.ncols(), 1);
        assert!(lattice_eq(&k, &IMat::from_i64(2, 1, &[1, 1])));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(kernel_basis(&IMat::identity(3)).ncols(), 0);
    }

    #[test]
    fn kernel_of_sum_map_has_rank_two() {
        let a = IMat::from_i64(1, 3, &[1, 1, 1]);
        let k = kernel_basis(&a);
        assert_eq!(k.ncols(), 2);
        let expected = IMat::from_i64(3, 2, &[1, 0, -1, 1, 0, -1]);
        assert!(lattice_eq(&k, &expected));
    }

    #[test]
    fn cokernels_of_ray_lattices() {
        // P^1: Z^2 / (1,-1)
        let c = cokernel(&IMat::from_i64(2, 1, &[1, -1]));
        assert_eq!((c.rank, c.invariant_factors.len()), (1, 0));
        // P^2: Z^3 / <(1,0,-1),(0,1,-1)>
        let c = cokernel(&IMat::from_i64(3, 2, &[1, 0, 0, 1, -1, -1]));
        assert_eq!((c.rank, c.invariant_factors.len()), (1, 0));
        // Z^2 / (2,0): rank 1 plus 2-torsion
        let c = cokernel(&IMat::from_i64(2, 1, &[2, 0]));
        assert_eq!(c.rank, 1);
        assert_eq!(c.invariant_factors, vec![Int::from(2)]);
    }

    #[test]
    fn integer_solving() {
        let a = IMat::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(solve_integer(&a, &[Int::from(4), Int::from(9)]), Some(vec![
            Int::from(2),
            Int::from(3)
        ]));
        assert_eq!(solve_integer(&a, &[Int::from(1), Int::from(0)]), None);
    }

    #[test]
    fn coset_reps_of_index_two_sublattice() {
        let reps = coset_reps(&IMat::from_i64(2, 2, &[2, 0, 0, 1]));
        assert_eq!(reps.torsion_reps.len(), 2);
        assert!(reps.free_gens.is_empty());
        let reps = coset_reps(&IMat::from_i64(2, 1, &[1, 0]));
        assert_eq!(reps.torsion_reps.len(), 1);
        assert_eq!(reps.free_gens.len(), 1);
    }
}
