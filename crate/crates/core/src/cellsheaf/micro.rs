//! Microsupport of a cell sheaf: for each cell and each chamber of its
//! conormal arrangement, the fiber of sections of the star mapping into
//! sections over the part of the star cut off by a covector from the
//! chamber.

use num_traits::{One, Signed, Zero};

use super::complex::{ArrowKind, CellComplex, CellGeom, CellId};
use super::sheaf::CellSheaf;
use super::GradedDims;
use crate::error::{Error, Result};
use crate::linalg::{complex_cohomology_dims, FMatrix};
use crate::skeleton::{cone_contains, SkeletonComponent};
use crate::{Int, Rat};

/// One conormal chamber at a cell.  Rays and sectors are spanned by
/// primitive integer covectors; `Transverse` stands for the covectors not
/// conormal to the cell, where the test is trivially exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chamber {
    Zero,
    Ray { xi: Vec<Int> },
    Sector { first: Vec<Int>, second: Vec<Int> },
    Transverse { sample: Vec<Int> },
}

/// The test outcome for one (cell, chamber) pair.
#[derive(Clone, Debug)]
pub struct ChamberEntry {
    pub cell: CellId,
    pub chamber: Chamber,
    pub fiber: GradedDims,
    pub present: bool,
}

#[derive(Clone, Debug, Default)]
pub struct MicroSupportReport {
    pub entries: Vec<ChamberEntry>,
}

impl MicroSupportReport {
    pub fn present(&self) -> impl Iterator<Item = &ChamberEntry> {
        self.entries.iter().filter(|e| e.present)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(|e| !e.present)
    }

    /// Present chambers restricted to nonzero covectors.
    pub fn singular_entries(&self) -> Vec<&ChamberEntry> {
        self.present().filter(|e| e.chamber != Chamber::Zero).collect()
    }
}

fn dot(xi: &[Int], v: &[Int]) -> Int {
    xi.iter().zip(v).map(|(a, b)| a.clone() * b.clone()).sum()
}

fn fiber_of_map(f: &CellSheaf, src_dim: usize, map: &FMatrix<Rat>) -> GradedDims {
    let _ = f;
    // two-term complex in degrees (-1, 0)
    let dims = [src_dim, map.nrows()];
    let coh = complex_cohomology_dims(&dims, std::slice::from_ref(map));
    GradedDims::new(-1, coh.to_vec())
}

/// The microstalk test complex at a vertex of a 2-torus complex for the
/// covector `xi`: `[F(v) -> C0 -> C1]` in degrees (-1, 0, 1), where `C0`
/// sums the branch and sector pieces meeting `{l < 0}` and `C1` glues them.
fn vertex_test(fsheaf: &CellSheaf, v: CellId, xi: &[Int]) -> GradedDims {
    let cx = &fsheaf.cx;
    let branches = &cx.links[&v];
    let corners = &cx.sector_corners[&v];
    let k = branches.len();
    let ray_of = |a: usize| match &cx.arrows[branches[a]].kind {
        ArrowKind::Branch { ray } => ray.clone(),
        _ => unreachable!(),
    };
    let branch_in: Vec<bool> = (0..k).map(|a| dot(xi, &ray_of(a)).is_negative()).collect();
    let corner_in: Vec<bool> = (0..k).map(|a| branch_in[a] || branch_in[(a + 1) % k]).collect();

    // C0 basis: included branches then included corners
    let mut c0_blocks: Vec<(usize, bool)> = Vec::new(); // (arrow id, is_branch)
    for a in 0..k {
        if branch_in[a] {
            c0_blocks.push((branches[a], true));
        }
    }
    for a in 0..k {
        if corner_in[a] {
            c0_blocks.push((corners[a], false));
        }
    }
    let space_of = |arrow: usize, is_branch: bool| -> usize {
        let cell = cx.arrows[arrow].dst;
        let _ = is_branch;
        fsheaf.spaces[cell]
    };
    let c0_dim: usize = c0_blocks.iter().map(|&(a, b)| space_of(a, b)).sum();
    let offset_of = |target: (usize, bool)| -> usize {
        let mut off = 0;
        for &(a, b) in &c0_blocks {
            if (a, b) == target {
                return off;
            }
            off += space_of(a, b);
        }
        unreachable!("block not present")
    };

    // C1: one block per adjacent (branch, corner) pair inside the halfspace
    let mut c1_pairs: Vec<(usize, usize)> = Vec::new(); // (branch pos, corner pos)
    for a in 0..k {
        if branch_in[a] {
            // adjacent sectors: a-1 and a
            let left = (a + k - 1) % k;
            if corner_in[left] {
                c1_pairs.push((a, left));
            }
            if corner_in[a] {
                c1_pairs.push((a, a));
            }
        }
    }
    let c1_dim: usize =
        c1_pairs.iter().map(|&(_, c)| fsheaf.spaces[cx.arrows[corners[c]].dst]).sum();

    // alpha: F(v) -> C0 via the entrance arrows
    let mut alpha = FMatrix::zeros(c0_dim, fsheaf.spaces[v]);
    for &(a, _) in &c0_blocks {
        let m = &fsheaf.maps[a];
        let off = offset_of((a, matches!(cx.arrows[a].kind, ArrowKind::Branch { .. })));
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                alpha[(off + i, j)] = m[(i, j)].clone();
            }
        }
    }

    // delta: C0 -> C1, (x_b, x_c) -> F(side) x_b - x_c on each pair
    let mut delta = FMatrix::zeros(c1_dim, c0_dim);
    let mut row_off = 0;
    for &(bpos, cpos) in &c1_pairs {
        let b_arrow = branches[bpos];
        let c_arrow = corners[cpos];
        // the side arrow with compose(branch, side) = corner
        let side = cx
            .compose
            .iter()
            .find(|(&(b, _), &c)| b == b_arrow && c == c_arrow)
            .map(|((_, s), _)| *s)
            .expect("adjacent corner must factor through the branch");
        let smap = &fsheaf.maps[side];
        let boff = offset_of((b_arrow, true));
        for i in 0..smap.nrows() {
            for j in 0..smap.ncols() {
                delta[(row_off + i, boff + j)] = smap[(i, j)].clone();
            }
        }
        let coff = offset_of((c_arrow, false));
        let cdim = fsheaf.spaces[cx.arrows[c_arrow].dst];
        for i in 0..cdim {
            delta[(row_off + i, coff + i)] = -Rat::one();
        }
        row_off += cdim;
    }

    let dims = [fsheaf.spaces[v], c0_dim, c1_dim];
    let coh = complex_cohomology_dims(&dims, &[alpha, delta]);
    GradedDims::new(-1, coh.to_vec())
}

/// Chambers of the conormal arrangement at a vertex of a 2-torus complex:
/// the conormal rays of the incident edge branches, sorted, and the open
/// sectors between consecutive ones.
fn vertex_chambers(cx: &CellComplex, v: CellId) -> Vec<Chamber> {
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for &b in &cx.links[&v] {
        let ArrowKind::Branch { ray } = &cx.arrows[b].kind else { unreachable!() };
        // both conormal rays of the edge through this branch
        for sign in [1i64, -1] {
            let xi = vec![
                -ray[1].clone() * Int::from(sign),
                ray[0].clone() * Int::from(sign),
            ];
            let prim = primitive(&xi);
            if !rays.contains(&prim) {
                rays.push(prim);
            }
        }
    }
    rays.sort_by(|a, b| super::complex::angle_cmp(a, b));
    let mut chambers = vec![Chamber::Zero];
    let k = rays.len();
    for i in 0..k {
        chambers.push(Chamber::Ray { xi: rays[i].clone() });
        let next = &rays[(i + 1) % k];
        let sample = vec![rays[i][0].clone() + next[0].clone(), rays[i][1].clone() + next[1].clone()];
        chambers.push(Chamber::Sector { first: rays[i].clone(), second: next.clone() });
        debug_assert!(!sample.iter().all(|x| x.is_zero()));
    }
    chambers
}

fn primitive(v: &[Int]) -> Vec<Int> {
    use num_integer::Integer as _;
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / g.clone()).collect()
}

/// Representative covector of a chamber.
fn chamber_sample(ch: &Chamber) -> Vec<Int> {
    match ch {
        Chamber::Zero => Vec::new(),
        Chamber::Ray { xi } => xi.clone(),
        Chamber::Sector { first, second } => {
            first.iter().zip(second).map(|(a, b)| a.clone() + b.clone()).collect()
        }
        Chamber::Transverse { sample } => sample.clone(),
    }
}

/// Computes the full microsupport report of a sheaf.
pub fn microsupport(f: &CellSheaf) -> Result<MicroSupportReport> {
    let cx = &f.cx;
    if cx.dim > 2 {
        return Err(Error::UnsupportedDimension(cx.dim));
    }
    let mut report = MicroSupportReport::default();
    for c in 0..cx.cells.len() {
        let stalk = GradedDims::new(0, vec![f.spaces[c]]);
        report.entries.push(ChamberEntry {
            cell: c,
            chamber: Chamber::Zero,
            present: !stalk.is_zero(),
            fiber: stalk,
        });
        match (&cx.cells[c].geom, cx.dim) {
            (CellGeom::Vertex { .. }, 1) => {
                // two covector rays; the test arrow enters the branch on the
                // side where the covector decreases
                for sign in [1i64, -1] {
                    let xi = vec![Int::from(sign)];
                    let branch = cx
                        .arrows_from(c)
                        .into_iter()
                        .find(|&a| match &cx.arrows[a].kind {
                            ArrowKind::Branch { ray } => dot(&xi, ray).is_negative(),
                            _ => false,
                        })
                        .expect("circle vertices have both branches");
                    let fiber = fiber_of_map(f, f.spaces[c], &f.maps[branch]);
                    report.entries.push(ChamberEntry {
                        cell: c,
                        chamber: Chamber::Ray { xi },
                        present: !fiber.is_zero(),
                        fiber,
                    });
                }
            }
            (CellGeom::Vertex { .. }, _) => {
                for ch in vertex_chambers(cx, c) {
                    if ch == Chamber::Zero {
                        continue;
                    }
                    let fiber = vertex_test(f, c, &chamber_sample(&ch));
                    report.entries.push(ChamberEntry {
                        cell: c,
                        chamber: ch,
                        present: !fiber.is_zero(),
                        fiber,
                    });
                }
            }
            (CellGeom::Edge { circle, .. }, 2) => {
                let dirv = cx.circles[*circle].dir.clone();
                for sign in [1i64, -1] {
                    let xi =
                        vec![-dirv[1].clone() * Int::from(sign), dirv[0].clone() * Int::from(sign)];
                    // the side of the face cut off by {l < 0}: inward points
                    // against xi
                    let side = cx
                        .arrows_from(c)
                        .into_iter()
                        .find(|&a| match &cx.arrows[a].kind {
                            ArrowKind::Side { inward } => dot(&xi, inward).is_negative(),
                            _ => false,
                        })
                        .expect("edges have a face on both sides");
                    let fiber = fiber_of_map(f, f.spaces[c], &f.maps[side]);
                    report.entries.push(ChamberEntry {
                        cell: c,
                        chamber: Chamber::Ray { xi: primitive(&xi) },
                        present: !fiber.is_zero(),
                        fiber,
                    });
                }
                // transverse chambers: the halfspace cuts the edge itself and
                // keeps a contractible piece of the whole star, so the
                // restriction is an isomorphism
                for sign in [1i64, -1] {
                    let xi: Vec<Int> = dirv.iter().map(|x| x.clone() * Int::from(sign)).collect();
                    report.entries.push(ChamberEntry {
                        cell: c,
                        chamber: Chamber::Transverse { sample: primitive(&xi) },
                        present: false,
                        fiber: GradedDims::zero(),
                    });
                }
            }
            (CellGeom::Edge { .. }, 1) | (CellGeom::Face { .. }, _) => {
                // top cell: the star is the cell itself; any halfspace keeps
                // a contractible piece, so nonzero covectors never show up
                let sample = if cx.dim == 1 { vec![Int::one()] } else { vec![Int::one(), Int::zero()] };
                report.entries.push(ChamberEntry {
                    cell: c,
                    chamber: Chamber::Transverse { sample },
                    present: false,
                    fiber: GradedDims::zero(),
                });
            }
            _ => unreachable!(),
        }
    }
    Ok(report)
}

/// Whether a skeleton component's base contains the given cell.
pub fn base_contains_cell(cx: &CellComplex, comp: &SkeletonComponent, cell: CellId) -> bool {
    let base = &comp.base;
    if base.dim() == cx.dim {
        return true;
    }
    match (&cx.cells[cell].geom, base.dim()) {
        (CellGeom::Vertex { pos }, 0) => base.cosets.iter().any(|q| {
            pos.iter().zip(q).all(|(a, b)| (a.clone() - b.clone()).is_integer())
        }),
        (CellGeom::Vertex { pos }, 1) => {
            let dirv = base.direction.column(0);
            base.cosets.iter().any(|b| {
                let circ = super::complex::TorusCircle::from_direction(&dirv, b);
                circ.contains(pos)
            })
        }
        (CellGeom::Edge { circle, .. }, 1) => {
            let dirv = base.direction.column(0);
            base.cosets.iter().any(|b| {
                let circ = super::complex::TorusCircle::from_direction(&dirv, b);
                circ.normal == cx.circles[*circle].normal && circ.offset == cx.circles[*circle].offset
            })
        }
        _ => false,
    }
}

/// Whether every present chamber of the sheaf's microsupport lies inside
/// some component (base contains the cell, cone contains the covectors).
pub fn in_subcategory(f: &CellSheaf, components: &[SkeletonComponent]) -> Result<bool> {
    Ok(violating_chamber(f, components)?.is_none())
}

/// The first present chamber not covered by the skeleton, if any.
pub fn violating_chamber(
    f: &CellSheaf,
    components: &[SkeletonComponent],
) -> Result<Option<ChamberEntry>> {
    let cx = &f.cx;
    let report = microsupport(f)?;
    for entry in report.present() {
        let rays: Vec<Vec<Rat>> = match &entry.chamber {
            Chamber::Zero => vec![vec![Rat::zero(); cx.dim]],
            Chamber::Ray { xi } => {
                vec![xi.iter().map(|x| Rat::from_integer(x.clone())).collect()]
            }
            Chamber::Sector { first, second } => vec![
                first.iter().map(|x| Rat::from_integer(x.clone())).collect(),
                second.iter().map(|x| Rat::from_integer(x.clone())).collect(),
            ],
            Chamber::Transverse { sample } => {
                vec![sample.iter().map(|x| Rat::from_integer(x.clone())).collect()]
            }
        };
        let covered = components.iter().any(|comp| {
            base_contains_cell(cx, comp, entry.cell)
                && rays.iter().all(|xi| cone_contains(&comp.cone, xi))
        });
        if !covered {
            return Ok(Some(entry.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cellsheaf::{build_adapted_complex, circle_complex, constant_sheaf, zero_sheaf, CellSheaf};
    use crate::fan::{standard_fan, StandardFan};
    use crate::skeleton::{lambda_z, reduce, GammaPoint};
    use crate::rat;

    #[test]
    fn constant_sheaf_supports_only_the_zero_section() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = constant_sheaf(cx);
        let report = microsupport(&f).unwrap();
        assert!(report.singular_entries().is_empty());
        assert!(report.present().count() > 0);

        let fd = standard_fan(&StandardFan::Projective(2)).unwrap();
        let red = reduce(&fd, &GammaPoint::zero(3)).unwrap();
        let cx = Arc::new(build_adapted_complex(&red.components).unwrap());
        let f = constant_sheaf(cx);
        let report = microsupport(&f).unwrap();
        assert!(report.singular_entries().is_empty());
    }

    #[test]
    fn zero_sheaf_has_empty_support() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let report = microsupport(&zero_sheaf(cx)).unwrap();
        assert!(report.is_empty());
    }

    #[test]
    fn one_sided_rep_supports_one_ray() {
        // V_0 = k = V_arc, positive branch the identity, negative zero
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let f = CellSheaf::new(cx.clone(), vec![1, 1], |a| {
            match &cx.arrows[a].kind {
                ArrowKind::Branch { ray } if ray[0].is_positive() => FMatrix::identity(1),
                _ => FMatrix::zeros(1, 1),
            }
        })
        .unwrap();
        let report = microsupport(&f).unwrap();
        let singular: Vec<_> = report.singular_entries();
        assert_eq!(singular.len(), 1);
        // the ray killing the zero branch is present: xi with xi . ray < 0
        // for the negative branch means xi = +dt
        assert_eq!(singular[0].chamber, Chamber::Ray { xi: vec![Int::one()] });
        assert_eq!(singular[0].fiber, GradedDims::new(-1, vec![1, 1]));
    }

    #[test]
    fn skyscraper_on_the_affine_line_skeleton() {
        // mirror shape of the origin point module: designated branch is an
        // isomorphism, the other one zero
        let fd = standard_fan(&StandardFan::Affine(1)).unwrap();
        let comps = lambda_z(&fd).unwrap();
        let cx = Arc::new(build_adapted_complex(&comps).unwrap());
        let f = CellSheaf::new(cx.clone(), vec![1, 1], |a| {
            match &cx.arrows[a].kind {
                ArrowKind::Branch { ray } if ray[0].is_negative() => FMatrix::identity(1),
                _ => FMatrix::zeros(1, 1),
            }
        })
        .unwrap();
        // support: zero section everywhere plus the negative ray at 0
        assert!(in_subcategory(&f, &comps).unwrap());
        // flipping the convention breaks containment
        let g = CellSheaf::new(cx.clone(), vec![1, 1], |a| {
            match &cx.arrows[a].kind {
                ArrowKind::Branch { ray } if ray[0].is_positive() => FMatrix::identity(1),
                _ => FMatrix::zeros(1, 1),
            }
        })
        .unwrap();
        assert!(!in_subcategory(&g, &comps).unwrap());
    }

    #[test]
    fn local_system_sits_over_the_zero_section() {
        let cx = Arc::new(circle_complex(&[rat(0, 1)]));
        let l = constant_sheaf(cx).twist(&[rat(5, 3)]).unwrap();
        let zero_only = {
            let fd = standard_fan(&StandardFan::Affine(1)).unwrap();
            let comps = lambda_z(&fd).unwrap();
            vec![comps[0].clone()]
        };
        assert!(in_subcategory(&l, &zero_only).unwrap());
    }

    #[test]
    fn closedness_of_present_chambers() {
        // at each vertex of the two-torus complex, a present sector forces
        // its boundary rays to be present
        let fd = standard_fan(&StandardFan::Projective(2)).unwrap();
        let red = reduce(&fd, &GammaPoint::zero(3)).unwrap();
        let cx = Arc::new(build_adapted_complex(&red.components).unwrap());
        for chi in [[rat(1, 1), rat(1, 1)], [rat(2, 1), rat(3, 1)]] {
            let f = constant_sheaf(cx.clone()).twist(&chi).unwrap();
            let report = microsupport(&f).unwrap();
            for e in report.present() {
                if let Chamber::Sector { first, second } = &e.chamber {
                    for xi in [first, second] {
                        let ray_present = report.present().any(|r| {
                            r.cell == e.cell
                                && matches!(&r.chamber, Chamber::Ray { xi: x } if x == xi)
                        });
                        assert!(ray_present, "sector present without its boundary ray");
                    }
                }
            }
        }
    }
}
