//! Representations of the entrance-path category: a finite-dimensional
//! vector space per cell and a linear map per arrow, functorial for the
//! corner relations.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::complex::{ArrowKind, CellComplex, CellGeom, CellId};
use crate::error::{Error, Result};
use crate::linalg::FMatrix;
use crate::{Int, Rat};

/// A constructible sheaf presented on a cell complex.
#[derive(Clone)]
pub struct CellSheaf {
    pub cx: Arc<CellComplex>,
    /// stalk dimension per cell
    pub spaces: Vec<usize>,
    /// one matrix per arrow of the complex, shape `spaces[dst] x spaces[src]`
    pub maps: Vec<FMatrix<Rat>>,
}

impl std::fmt::Debug for CellSheaf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CellSheaf(spaces = {:?})", self.spaces)
    }
}

impl CellSheaf {
    /// Builds a sheaf from generating data: stalk dimensions and matrices
    /// for the branch and side arrows.  Corner maps are composed and
    /// checked against both boundary decompositions.
    pub fn new(
        cx: Arc<CellComplex>,
        spaces: Vec<usize>,
        mut arrow_maps: impl FnMut(usize) -> FMatrix<Rat>,
    ) -> Result<CellSheaf> {
        assert_eq!(spaces.len(), cx.cells.len());
        let mut maps: Vec<Option<FMatrix<Rat>>> = vec![None; cx.arrows.len()];
        for (a, arrow) in cx.arrows.iter().enumerate() {
            if matches!(arrow.kind, ArrowKind::Corner { .. }) {
                continue;
            }
            let m = arrow_maps(a);
            assert_eq!((m.nrows(), m.ncols()), (spaces[arrow.dst], spaces[arrow.src]));
            maps[a] = Some(m);
        }
        for (&(b, s), &c) in &cx.compose {
            let m = maps[s].as_ref().unwrap().mul(maps[b].as_ref().unwrap());
            match &maps[c] {
                None => maps[c] = Some(m),
                Some(prev) => {
                    if *prev != m {
                        return Err(Error::NonAdaptedComplex(
                            "corner relations do not commute".into(),
                        ));
                    }
                }
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.unwrap_or_else(|| {
                    FMatrix::zeros(spaces[cx.arrows[a].dst], spaces[cx.arrows[a].src])
                })
            })
            .collect();
        Ok(CellSheaf { cx, spaces, maps })
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().sum()
    }

    pub fn same_complex(&self, other: &CellSheaf) -> bool {
        Arc::ptr_eq(&self.cx, &other.cx)
            || (self.cx.cells.len() == other.cx.cells.len()
                && self.cx.arrows.len() == other.cx.arrows.len()
                && self.cx.circles == other.cx.circles)
    }

    /// Tensor with the rank-one local system of monodromy `chi` (one scalar
    /// per torus loop): each arrow map picks up `chi^wrap`.
    pub fn twist(&self, chi: &[Rat]) -> Result<CellSheaf> {
        assert_eq!(chi.len(), self.cx.dim);
        if chi.iter().any(|c| c.is_zero()) {
            return Err(Error::NotInvertible);
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let factor = chi
                    .iter()
                    .zip(&self.cx.arrows[a].wrap)
                    .fold(Rat::one(), |acc, (c, w)| acc * rat_pow(c, w));
                scale(m, &factor)
            })
            .collect();
        Ok(CellSheaf { cx: self.cx.clone(), spaces: self.spaces.clone(), maps })
    }

    /// Transport along a torus translation that maps the complex to itself.
    pub fn translate(&self, tau: &[Rat]) -> Result<CellSheaf> {
        let cx = &self.cx;
        assert_eq!(tau.len(), cx.dim);
        let perm = translation_cell_map(cx, tau)?;
        let arrow_perm = translation_arrow_map(cx, &perm)?;
        let mut spaces = vec![0usize; cx.cells.len()];
        for (c, &pc) in perm.iter().enumerate() {
            spaces[pc] = self.spaces[c];
        }
        let mut maps: Vec<FMatrix<Rat>> =
            (0..cx.arrows.len()).map(|_| FMatrix::zeros(0, 0)).collect();
        for (a, &pa) in arrow_perm.iter().enumerate() {
            maps[pa] = self.maps[a].clone();
        }
        Ok(CellSheaf { cx: self.cx.clone(), spaces, maps })
    }
}

fn rat_pow(base: &Rat, exp: &Int) -> Rat {
    let e: i64 = exp.to_string().parse().expect("small wrap exponent");
    let mut out = Rat::one();
    for _ in 0..e.abs() {
        out = out * base.clone();
    }
    if e < 0 {
        Rat::one() / out
    } else {
        out
    }
}

fn scale(m: &FMatrix<Rat>, by: &Rat) -> FMatrix<Rat> {
    FMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].clone() * by.clone())
}

/// The cell permutation induced by a translation, or an error when the
/// complex is not symmetric under it.
fn translation_cell_map(cx: &CellComplex, tau: &[Rat]) -> Result<Vec<CellId>> {
    let fract = |x: &Rat| x.clone() - x.floor();
    let shift = |p: &[Rat]| -> Vec<Rat> {
        p.iter().zip(tau).map(|(a, b)| fract(&(a.clone() + b.clone()))).collect()
    };
    let mut perm = vec![usize::MAX; cx.cells.len()];
    for (c, cell) in cx.cells.iter().enumerate() {
        let target = shift(&cx.sample_point(c));
        let image = (0..cx.cells.len()).find(|&d| {
            if cx.cells[d].dim != cell.dim {
                return false;
            }
            match &cx.cells[d].geom {
                CellGeom::Vertex { pos } => {
                    pos.iter().zip(&target).all(|(a, b)| (a.clone() - b.clone()).is_integer())
                }
                CellGeom::Edge { circle, t0, t1 } => {
                    let t = if cx.dim == 1 {
                        // the ambient circle is the whole torus; the
                        // parameter is the coordinate itself
                        target[0].clone()
                    } else {
                        let circ = &cx.circles[*circle];
                        if !circ.contains(&target) {
                            return false;
                        }
                        circ.param_of(&target)
                    };
                    let tw = t.clone() + Rat::one();
                    (*t0 < t && t < *t1) || (*t0 < tw && tw < *t1)
                }
                CellGeom::Face { .. } => {
                    // interior sample cannot land on the 1-skeleton
                    cx.circles.iter().all(|circ| !circ.contains(&target))
                        && cx.face_contains(d, &target)
                }
            }
        });
        match image {
            Some(d) => perm[c] = d,
            None => return Err(Error::NonSymmetricComplex),
        }
    }
    // must be a bijection
    let mut seen = vec![false; cx.cells.len()];
    for &p in &perm {
        if seen[p] {
            return Err(Error::NonSymmetricComplex);
        }
        seen[p] = true;
    }
    Ok(perm)
}

fn translation_arrow_map(cx: &CellComplex, perm: &[CellId]) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; cx.arrows.len()];
    for (a, arrow) in cx.arrows.iter().enumerate() {
        let img = (0..cx.arrows.len()).find(|&b| {
            cx.arrows[b].src == perm[arrow.src]
                && cx.arrows[b].dst == perm[arrow.dst]
                // translations preserve germ directions exactly
                && cx.arrows[b].kind == arrow.kind
        });
        match img {
            Some(b) => out[a] = b,
            None => return Err(Error::NonSymmetricComplex),
        }
    }
    Ok(out)
}

/// The constant sheaf: every stalk is `k`, every map the identity.
pub fn constant_sheaf(cx: Arc<CellComplex>) -> CellSheaf {
    let n = cx.cells.len();
    CellSheaf::new(cx, vec![1; n], |_| FMatrix::identity(1)).expect("identities commute")
}

/// The zero sheaf.
pub fn zero_sheaf(cx: Arc<CellComplex>) -> CellSheaf {
    let n = cx.cells.len();
    CellSheaf::new(cx, vec![0; n], |_| FMatrix::zeros(0, 0)).expect("zero maps commute")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellsheaf::circle_complex;
    use crate::rat;

    #[test]
    fn constant_sheaf_on_circle() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx);
        assert_eq!(f.spaces, vec![1, 1]);
        assert!(!f.is_zero());
    }

    #[test]
    fn twist_by_one_is_identity() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx);
        let g = f.twist(&[rat(1, 1)]).unwrap();
        for (a, b) in f.maps.iter().zip(&g.maps) {
            assert_eq!(a, b);
        }
        assert!(f.twist(&[rat(0, 1)]).is_err());
    }

    #[test]
    fn twists_compose() {
        let cx = Arc::new(circle_complex(&[rat(0, 1), rat(1, 2)]));
        let f = constant_sheaf(cx);
        let a = f.twist(&[rat(2, 3)]).unwrap().twist(&[rat(3, 2)]).unwrap();
        for (x, y) in a.maps.iter().zip(&f.maps) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn translation_permutes_marked_circle() {
        let cx = Arc::new(circle_complex(&[rat(0, 1), rat(1, 2)]));
        let f = constant_sheaf(cx.clone());
        let g = f.translate(&[rat(1, 2)]).unwrap();
        assert_eq!(g.spaces, f.spaces);
        // an asymmetric translation is rejected
        assert!(f.translate(&[rat(1, 3)]).is_err());
    }
}
