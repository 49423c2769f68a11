//! Derived homs between cell sheaves: resolve the source by representable
//! projectives (the category is directed, so resolutions are finite) and
//! take cohomology of the resulting hom complex.

use std::sync::Arc;

use num_traits::One;

use super::complex::{ArrowId, CellComplex, CellId};
use super::sheaf::CellSheaf;
use super::GradedDims;
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, complex_cohomology_dims, FMatrix};
use crate::Rat;

/// A morphism of the entrance category.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mor {
    Id(CellId),
    Arr(ArrowId),
}

/// All morphisms `c -> d`, in a fixed deterministic order.
pub fn homs(cx: &CellComplex, c: CellId, d: CellId) -> Vec<Mor> {
    if c == d {
        return vec![Mor::Id(c)];
    }
    (0..cx.arrows.len())
        .filter(|&a| cx.arrows[a].src == c && cx.arrows[a].dst == d)
        .map(Mor::Arr)
        .collect()
}

/// Postcomposition `a . m` for an arrow `a : d -> d'` and `m : c -> d`.
pub fn postcompose(cx: &CellComplex, a: ArrowId, m: Mor) -> Mor {
    match m {
        Mor::Id(_) => Mor::Arr(a),
        Mor::Arr(b) => {
            let corner = cx
                .compose
                .get(&(b, a))
                .unwrap_or_else(|| panic!("no composite for arrows {b} then {a}"));
            Mor::Arr(*corner)
        }
    }
}

/// A morphism of representations, one matrix per cell.
type RepMap = Vec<FMatrix<Rat>>;

fn compose_repmap(g: &RepMap, f: &RepMap) -> RepMap {
    g.iter().zip(f).map(|(gm, fm)| gm.mul(fm)).collect()
}

/// A finite sum of representables `P_c`, with its basis bookkeeping.
struct ProjLevel {
    /// generating cell of each summand
    slots: Vec<CellId>,
    /// per cell `d`: the basis `(slot, morphism)` of the level's value
    basis: Vec<Vec<(usize, Mor)>>,
    sheaf: CellSheaf,
}

fn build_level(cx: &Arc<CellComplex>, slots: Vec<CellId>) -> ProjLevel {
    let ncells = cx.cells.len();
    let mut basis: Vec<Vec<(usize, Mor)>> = vec![Vec::new(); ncells];
    for d in 0..ncells {
        for (si, &c) in slots.iter().enumerate() {
            for m in homs(cx, c, d) {
                basis[d].push((si, m));
            }
        }
    }
    let spaces: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let index_of = |d: usize, key: (usize, Mor)| -> usize {
        basis[d].iter().position(|&k| k == key).expect("basis element")
    };
    let sheaf = CellSheaf::new(cx.clone(), spaces, |a| {
        let (src, dst) = (cx.arrows[a].src, cx.arrows[a].dst);
        let mut m = FMatrix::zeros(basis[dst].len(), basis[src].len());
        for (col, &(si, mor)) in basis[src].iter().enumerate() {
            let row = index_of(dst, (si, postcompose(cx, a, mor)));
            m[(row, col)] = Rat::one();
        }
        m
    })
    .expect("representables are functorial");
    ProjLevel { slots, basis, sheaf }
}

/// Projective cover data: the level plus the augmentation onto the target.
fn cover(f: &CellSheaf) -> (ProjLevel, RepMap) {
    let cx = &f.cx;
    // top generators: a complement of the images of all incoming arrows
    let mut slots: Vec<CellId> = Vec::new();
    let mut gens: Vec<(CellId, usize)> = Vec::new();
    for c in 0..cx.cells.len() {
        if f.spaces[c] == 0 {
            continue;
        }
        let incoming = cx.arrows_into(c);
        let mut image_cols: Vec<Vec<Rat>> = Vec::new();
        for a in incoming {
            let m = &f.maps[a];
            for j in 0..m.ncols() {
                image_cols.push(m.column(j));
            }
        }
        let sub = if image_cols.is_empty() {
            FMatrix::zeros(f.spaces[c], 0)
        } else {
            FMatrix::from_rows(
                (0..f.spaces[c])
                    .map(|i| image_cols.iter().map(|col| col[i].clone()).collect())
                    .collect(),
            )
        };
        for idx in complement_basis(&sub) {
            slots.push(c);
            gens.push((c, idx));
        }
    }
    let level = build_level(cx, slots);
    // augmentation: the slot generator (c, e_idx) maps along each morphism
    let aug: RepMap = (0..cx.cells.len())
        .map(|d| {
            let mut m = FMatrix::zeros(f.spaces[d], level.sheaf.spaces[d]);
            for (col, &(si, mor)) in level.basis[d].iter().enumerate() {
                let (c, idx) = gens[si];
                let image: Vec<Rat> = match mor {
                    Mor::Id(_) => {
                        (0..f.spaces[c])
                            .map(|i| {
                                if i == idx {
                                    Rat::one()
                                } else {
                                    Rat::zero()
                                }
                            })
                            .collect()
                    }
                    Mor::Arr(a) => f.maps[a].column(idx),
                };
                for (row, v) in image.into_iter().enumerate() {
                    m[(row, col)] = v;
                }
            }
            m
        })
        .collect();
    (level, aug)
}

use num_traits::Zero;

/// Pointwise kernel of a representation morphism, with its inclusion.
fn kernel_rep(p: &CellSheaf, h: &RepMap) -> (CellSheaf, RepMap) {
    let cx = &p.cx;
    let incl: RepMap = (0..cx.cells.len()).map(|c| h[c].kernel()).collect();
    let spaces: Vec<usize> = incl.iter().map(|k| k.ncols()).collect();
    let sheaf = CellSheaf::new(cx.clone(), spaces.clone(), |a| {
        let (src, dst) = (cx.arrows[a].src, cx.arrows[a].dst);
        // express P(a) . K_src in the K_dst basis
        let img = p.maps[a].mul(&incl[src]);
        let mut m = FMatrix::zeros(spaces[dst], spaces[src]);
        for j in 0..spaces[src] {
            let x = incl[dst].solve(&img.column(j)).expect("kernel is arrow stable");
            for (i, v) in x.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    })
    .expect("kernel representation is functorial");
    (sheaf, incl)
}

const MAX_RESOLUTION_LENGTH: usize = 10;

/// Derived hom dimensions between sheaves on the same complex, graded with
/// `Hom` in degree zero.
pub fn rhom(f: &CellSheaf, g: &CellSheaf) -> Result<GradedDims> {
    if !f.same_complex(g) {
        return Err(Error::MismatchedComplex);
    }
    let cx = &f.cx;
    if f.is_zero() || g.is_zero() {
        return Ok(GradedDims::zero());
    }

    // resolve f by projective covers
    let mut levels: Vec<ProjLevel> = Vec::new();
    let mut diffs: Vec<RepMap> = Vec::new();
    let (p0, _aug) = cover(f);
    let mut prev_target = f.clone();
    let mut prev_aug = _aug;
    levels.push(p0);
    loop {
        assert!(levels.len() <= MAX_RESOLUTION_LENGTH, "resolution did not terminate");
        let last = levels.last().unwrap();
        let (ker, incl) = kernel_rep(&last.sheaf, &prev_aug);
        let _ = &prev_target;
        if ker.is_zero() {
            break;
        }
        let (next, aug) = cover(&ker);
        // differential: P_{i+1} -> K -> P_i
        diffs.push(compose_repmap(&incl, &aug));
        prev_target = ker;
        prev_aug = aug;
        levels.push(next);
    }

    // hom complex dimensions and differentials in Yoneda coordinates
    let hom_dim = |lv: &ProjLevel| -> usize { lv.slots.iter().map(|&c| g.spaces[c]).sum() };
    let dims: Vec<usize> = levels.iter().map(hom_dim).collect();
    let mut maps: Vec<FMatrix<Rat>> = Vec::new();
    for i in 0..levels.len().saturating_sub(1) {
        let (li, lj) = (&levels[i], &levels[i + 1]);
        let mut mat = FMatrix::zeros(dims[i + 1], dims[i]);
        let mut col = 0usize;
        for (si, &c) in li.slots.iter().enumerate() {
            for v in 0..g.spaces[c] {
                // the natural map eta with eta_c(slot generator) = e_v
                let eta: RepMap = (0..cx.cells.len())
                    .map(|d| {
                        let mut m = FMatrix::zeros(g.spaces[d], li.sheaf.spaces[d]);
                        for (kcol, &(s2, mor)) in li.basis[d].iter().enumerate() {
                            if s2 != si {
                                continue;
                            }
                            let column: Vec<Rat> = match mor {
                                Mor::Id(_) => (0..g.spaces[d])
                                    .map(|r| {
                                        if r == v {
                                            Rat::one()
                                        } else {
                                            Rat::zero()
                                        }
                                    })
                                    .collect(),
                                Mor::Arr(a) => g.maps[a].column(v),
                            };
                            for (r, x) in column.into_iter().enumerate() {
                                m[(r, kcol)] = x;
                            }
                        }
                        m
                    })
                    .collect();
                let xi = compose_repmap(&eta, &diffs[i]);
                // read off Yoneda coordinates of xi on level i+1
                let mut row = 0usize;
                for (s2, &c2) in lj.slots.iter().enumerate() {
                    let id_col = lj.basis[c2]
                        .iter()
                        .position(|&(s3, m3)| s3 == s2 && m3 == Mor::Id(c2))
                        .expect("identity basis vector");
                    for r in 0..g.spaces[c2] {
                        mat[(row + r, col)] = xi[c2][(r, id_col)].clone();
                    }
                    row += g.spaces[c2];
                }
                col += 1;
            }
        }
        maps.push(mat);
    }
    Ok(GradedDims::new(0, complex_cohomology_dims(&dims, &maps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellsheaf::{build_adapted_complex, circle_complex, constant_sheaf, zero_sheaf};
    use crate::fan::{standard_fan, StandardFan};
    use crate::skeleton::{reduce, GammaPoint};
    use crate::rat;

    #[test]
    fn constant_on_circle_has_circle_cohomology() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx);
        let ext = rhom(&f, &f).unwrap();
        assert_eq!(ext, GradedDims::new(0, vec![1, 1]));
    }

    #[test]
    fn constant_on_torus_has_torus_cohomology() {
        let fd = standard_fan(&StandardFan::Projective(2)).unwrap();
        let red = reduce(&fd, &GammaPoint::zero(3)).unwrap();
        let cx = Arc::new(build_adapted_complex(&red.components).unwrap());
        let f = constant_sheaf(cx);
        let ext = rhom(&f, &f).unwrap();
        assert_eq!(ext, GradedDims::new(0, vec![1, 2, 1]));
    }

    #[test]
    fn zero_sheaf_gives_zero() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx.clone());
        let z = zero_sheaf(cx);
        assert!(rhom(&f, &z).unwrap().is_zero());
        assert!(rhom(&z, &f).unwrap().is_zero());
    }

    #[test]
    fn local_systems_see_monodromy() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx);
        let l = f.twist(&[rat(2, 1)]).unwrap();
        // RHom(const, L_2) vanishes, End(L_2) is an algebra worth (1,1)
        assert!(rhom(&f, &l).unwrap().is_zero());
        assert_eq!(rhom(&l, &l).unwrap(), GradedDims::new(0, vec![1, 1]));
    }

    #[test]
    fn mismatched_complexes_are_rejected() {
        let a = constant_sheaf(Arc::new(circle_complex(&[rat(0, 1)])));
        let b = constant_sheaf(Arc::new(circle_complex(&[rat(0, 1), rat(1, 2)])));
        assert!(matches!(rhom(&a, &b), Err(Error::MismatchedComplex)));
    }

    #[test]
    fn refinement_invariance_of_constant_cohomology() {
        for marks in [vec![rat(0, 1)], vec![rat(0, 1), rat(1, 3)], vec![rat(1, 7), rat(2, 7), rat(5, 7)]] {
            let cx = Arc::new(circle_complex(&marks));
            let f = constant_sheaf(cx);
            assert_eq!(rhom(&f, &f).unwrap(), GradedDims::new(0, vec![1, 1]));
        }
    }
}
