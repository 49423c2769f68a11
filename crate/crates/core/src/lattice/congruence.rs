use num_rational::Ratio;
use num_traits::Zero;

use super::matrix::{IntMatrix, LatticeScalar};
use super::snf::{kernel_basis, smith_normal_form, solve_integer};

/// Solution set of a system of torus congruences, as a finite union of
/// cosets of the connected subtorus spanned by `direction`.
///
/// An empty `points` list is a value (the system is inconsistent), not an
/// error.
#[derive(Clone, Debug)]
pub struct CosetFamily<I: LatticeScalar> {
    pub ambient_rank: usize,
    /// saturated integer basis of the connected direction, one column each
    pub direction: IntMatrix<I>,
    /// coset representatives in `[0,1)^k`, pairwise distinct modulo the
    /// direction subtorus
    pub points: Vec<Vec<Ratio<I>>>,
}

impl<I: LatticeScalar> CosetFamily<I> {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of each coset.
    pub fn dim(&self) -> usize {
        self.direction.ncols()
    }

    /// Whether the torus point `p` lies on one of the cosets.
    pub fn contains(&self, p: &[Ratio<I>]) -> bool {
        assert_eq!(p.len(), self.ambient_rank);
        // q is on the coset of p iff C^T (p - q) lies in C^T Z^k, where the
        // columns of C span the integer perpendicular of the direction.
        let perp = kernel_basis(&self.direction.transpose());
        let ct = perp.transpose();
        self.points.iter().any(|q| {
            let diff: Vec<Ratio<I>> = p.iter().zip(q).map(|(a, b)| a.clone() - b.clone()).collect();
            let v: Vec<Ratio<I>> = (0..ct.nrows())
                .map(|i| {
                    (0..ct.ncols()).fold(Ratio::zero(), |acc, j| {
                        acc + Ratio::from_integer(ct[(i, j)].clone()) * diff[j].clone()
                    })
                })
                .collect();
            let denom = v.iter().fold(I::one(), |acc, x| acc.lcm(x.denom()));
            let scaled_rhs: Vec<I> =
                v.iter().map(|x| x.numer().clone() * (denom.clone() / x.denom().clone())).collect();
            let mut scaled_ct = ct.clone();
            for i in 0..scaled_ct.nrows() {
                for j in 0..scaled_ct.ncols() {
                    let val = scaled_ct[(i, j)].clone() * denom.clone();
                    scaled_ct[(i, j)] = val;
                }
            }
            solve_integer(&scaled_ct, &scaled_rhs).is_some()
        })
    }
}

fn fract<I: LatticeScalar>(x: &Ratio<I>) -> Ratio<I> {
    x.clone() - x.floor()
}

/// Solves `G u = target (mod Z^rows)` for `u` on the torus `R^k / Z^k`.
///
/// Diagonalizing `G = U S V` turns the system into independent scalar
/// congruences `s_i w_i = t_i (mod Z)` in the coordinates `w = V u`; each
/// nonzero `s_i` contributes `s_i` residues and each zero row a consistency
/// condition.
pub fn solve_congruences<I: LatticeScalar>(
    g: &IntMatrix<I>,
    target: &[Ratio<I>],
) -> CosetFamily<I> {
    let k = g.ncols();
    assert_eq!(target.len(), g.nrows());
    let snf = smith_normal_form(g);
    let rank = snf.rank();
    let diag = snf.diagonal();
    let direction = kernel_basis(g);

    // t' = U^{-1} target; rows past the rank must be integral.
    let u_inv = snf.u_inv();
    let t_prime: Vec<Ratio<I>> = (0..g.nrows())
        .map(|i| {
            (0..g.nrows()).fold(Ratio::zero(), |acc, j| {
                acc + Ratio::from_integer(u_inv[(i, j)].clone()) * target[j].clone()
            })
        })
        .collect();
    for t in t_prime.iter().skip(rank) {
        if !t.is_integer() {
            return CosetFamily { ambient_rank: k, direction, points: Vec::new() };
        }
    }

    // enumerate residue tuples w_i = (t'_i + j)/s_i, j = 0..s_i
    let mut ws: Vec<Vec<Ratio<I>>> = vec![vec![Ratio::zero(); k]];
    for i in 0..rank {
        let s = &diag[i];
        let mut next = Vec::new();
        for w in &ws {
            let mut j = I::zero();
            while &j < s {
                let mut w2 = w.clone();
                w2[i] = fract(
                    &((t_prime[i].clone() + Ratio::from_integer(j.clone()))
                        / Ratio::from_integer(s.clone())),
                );
                next.push(w2);
                j = j + I::one();
            }
        }
        ws = next;
    }

    let v_inv = snf.v_inv();
    let mut points: Vec<Vec<Ratio<I>>> = ws
        .into_iter()
        .map(|w| {
            (0..k)
                .map(|i| {
                    fract(&(0..k).fold(Ratio::zero(), |acc, j| {
                        acc + Ratio::from_integer(v_inv[(i, j)].clone()) * w[j].clone()
                    }))
                })
                .collect()
        })
        .collect();
    points.sort();
    points.dedup();
    CosetFamily { ambient_rank: k, direction, points }
}
