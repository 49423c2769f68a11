//! Cell complexes on the 1- and 2-torus adapted to a skeleton: base loci
//! become unions of cells, every 2-cell is a convex polygon, and the
//! entrance-path category is presented by branch, side and corner arrows
//! with exact deck offsets for twisting.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::solve_congruences;
use crate::skeleton::SkeletonComponent;
use crate::{IMat, Int, Rat};

pub type CellId = usize;
pub type ArrowId = usize;

/// A closed geodesic `{x : normal . x = offset (mod Z)}` on the 2-torus,
/// parametrized as `base + t * dir` with `t` running once around `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCircle {
    pub normal: Vec<Int>,
    pub offset: Rat,
    pub base: Vec<Rat>,
    pub dir: Vec<Int>,
}

fn fract(x: &Rat) -> Rat {
    x.clone() - x.floor()
}

fn gcd_vec(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

impl TorusCircle {
    /// Canonical circle with the given integer normal direction and a point
    /// on it; the normal is normalized primitive with positive leading sign.
    pub fn new(normal_raw: &[Int], through: &[Rat]) -> Self {
        let g = gcd_vec(normal_raw);
        assert!(!g.is_zero(), "zero normal");
        let mut normal: Vec<Int> = normal_raw.iter().map(|x| x.clone() / g.clone()).collect();
        let lead = normal.iter().find(|x| !x.is_zero()).unwrap();
        if lead.is_negative() {
            for x in normal.iter_mut() {
                *x = -x.clone();
            }
        }
        let offset = fract(
            &normal.iter().zip(through).map(|(w, p)| Rat::from_integer(w.clone()) * p.clone()).sum(),
        );
        // a rational base point with normal . base = offset exactly
        let e = num_integer::ExtendedGcd::from(normal[0].extended_gcd(&normal[1]));
        let base = vec![offset.clone() * Rat::from_integer(e.x), offset.clone() * Rat::from_integer(e.y)];
        let dir = vec![-normal[1].clone(), normal[0].clone()];
        TorusCircle { normal, offset, base, dir }
    }

    pub fn from_direction(dir_raw: &[Int], through: &[Rat]) -> Self {
        let normal = vec![dir_raw[1].clone(), -dir_raw[0].clone()];
        Self::new(&normal, through)
    }

    pub fn point(&self, t: &Rat) -> Vec<Rat> {
        self.base
            .iter()
            .zip(&self.dir)
            .map(|(b, d)| b.clone() + t.clone() * Rat::from_integer(d.clone()))
            .collect()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let v: Rat = self
            .normal
            .iter()
            .zip(p)
            .map(|(w, x)| Rat::from_integer(w.clone()) * x.clone())
            .sum();
        (v - self.offset.clone()).is_integer()
    }

    /// The parameter in `[0,1)` at which the circle passes through the
    /// torus point `p` (which must lie on it).
    pub fn param_of(&self, p: &[Rat]) -> Rat {
        // t d_k = p_k - base_k (mod Z) for both coordinates
        let (d0, d1) = (&self.dir[0], &self.dir[1]);
        let scan = |k: usize, other: usize| -> Option<Rat> {
            let dk = if k == 0 { d0 } else { d1 };
            let dother = if other == 0 { d0 } else { d1 };
            let steps: i64 = dk.abs().to_string().parse().expect("small direction entry");
            for j in 0..steps {
                let delta = p[k].clone() - self.base[k].clone();
                let t = fract(
                    &((delta + Rat::from_integer(Int::from(j))) / Rat::from_integer(dk.clone())),
                );
                let check =
                    self.base[other].clone() + t.clone() * Rat::from_integer(dother.clone());
                if (check - p[other].clone()).is_integer() {
                    return Some(t);
                }
            }
            None
        };
        let t = if !d0.is_zero() { scan(0, 1) } else { scan(1, 0) };
        t.expect("point must lie on the circle")
    }
}

/// Intersection points of two distinct circles, as torus points in
/// `[0,1)^2`; empty when the circles are parallel.
fn circle_intersections(a: &TorusCircle, b: &TorusCircle) -> Vec<Vec<Rat>> {
    if a.normal == b.normal {
        return Vec::new();
    }
    let g = IMat::from_rows(vec![a.normal.clone(), b.normal.clone()]);
    let fam = solve_congruences(&g, &[a.offset.clone(), b.offset.clone()]);
    fam.points
}

#[derive(Clone, Debug)]
pub enum CellGeom {
    Vertex { pos: Vec<Rat> },
    Edge { circle: usize, t0: Rat, t1: Rat },
    /// corner lifts walked around the boundary, plus an interior sample
    Face { corners: Vec<Vec<Rat>>, sample: Vec<Rat> },
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: usize,
    pub geom: CellGeom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowKind {
    /// vertex -> edge, entering along the given germ ray
    Branch { ray: Vec<Int> },
    /// edge -> face, entering from the side the `inward` vector points to
    Side { inward: Vec<Int> },
    /// vertex -> face, entering the sector swept counterclockwise from
    /// `ray_first` to `ray_second`
    Corner { ray_first: Vec<Int>, ray_second: Vec<Int> },
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub src: CellId,
    pub dst: CellId,
    pub kind: ArrowKind,
    /// deck offset: the arrow's germ, started at the canonical lift of the
    /// source, lands in the `wrap`-translate of the target's canonical lift
    pub wrap: Vec<Int>,
}

/// A regular-enough cell complex on a torus with its entrance presentation.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub dim: usize,
    pub circles: Vec<TorusCircle>,
    pub cells: Vec<Cell>,
    pub arrows: Vec<Arrow>,
    /// (branch v->e, side e->f) composes to corner v->f
    pub compose: BTreeMap<(ArrowId, ArrowId), ArrowId>,
    /// per vertex: branch arrows in counterclockwise angular order
    pub links: BTreeMap<CellId, Vec<ArrowId>>,
    /// per vertex: corner arrow in the sector after each link position
    pub sector_corners: BTreeMap<CellId, Vec<ArrowId>>,
}

impl CellComplex {
    pub fn cells_of_dim(&self, d: usize) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&c| self.cells[c].dim == d).collect()
    }

    pub fn arrows_from(&self, c: CellId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == c).collect()
    }

    pub fn arrows_into(&self, c: CellId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].dst == c).collect()
    }

    pub fn vertex_pos(&self, c: CellId) -> &[Rat] {
        match &self.cells[c].geom {
            CellGeom::Vertex { pos } => pos,
            _ => panic!("not a vertex"),
        }
    }

    /// An interior sample point of any cell, reduced into `[0,1)^dim`.
    pub fn sample_point(&self, c: CellId) -> Vec<Rat> {
        match &self.cells[c].geom {
            CellGeom::Vertex { pos } => pos.clone(),
            CellGeom::Edge { circle, t0, t1 } => {
                let mid = (t0.clone() + t1.clone()) / Rat::from_integer(Int::from(2));
                self.circles[*circle].point(&mid).iter().map(fract).collect()
            }
            CellGeom::Face { sample, .. } => sample.clone(),
        }
    }

    /// Euler characteristic, which must vanish on a torus.
    pub fn euler(&self) -> i64 {
        let mut chi = 0i64;
        for c in &self.cells {
            chi += if c.dim % 2 == 0 { 1 } else { -1 };
        }
        chi
    }

    /// Whether the torus point `p` lies in the closure of the face `f`.
    pub fn face_contains(&self, f: CellId, p: &[Rat]) -> bool {
        let CellGeom::Face { corners, .. } = &self.cells[f].geom else {
            panic!("not a face");
        };
        // test every lattice translate of p against the convex corner hull
        let xs: Vec<&Rat> = corners.iter().map(|c| &c[0]).collect();
        let ys: Vec<&Rat> = corners.iter().map(|c| &c[1]).collect();
        let lo = |v: &Vec<&Rat>| v.iter().map(|x| x.floor().to_integer()).min().unwrap();
        let hi = |v: &Vec<&Rat>| v.iter().map(|x| x.ceil().to_integer()).max().unwrap();
        let (xlo, xhi, ylo, yhi) = (lo(&xs), hi(&xs), lo(&ys), hi(&ys));
        let mut kx = xlo.clone() - Int::one();
        while kx <= xhi.clone() + Int::one() {
            let mut ky = ylo.clone() - Int::one();
            while ky <= yhi.clone() + Int::one() {
                let q = [
                    p[0].clone() + Rat::from_integer(kx.clone()),
                    p[1].clone() + Rat::from_integer(ky.clone()),
                ];
                if convex_contains(corners, &q) {
                    return true;
                }
                ky += Int::one();
            }
            kx += Int::one();
        }
        false
    }
}

fn convex_contains(corners: &[Vec<Rat>], p: &[Rat]) -> bool {
    // counterclockwise polygon: inside iff never strictly right of an edge
    let n = corners.len();
    for i in 0..n {
        let a = &corners[i];
        let b = &corners[(i + 1) % n];
        let cross = (b[0].clone() - a[0].clone()) * (p[1].clone() - a[1].clone())
            - (b[1].clone() - a[1].clone()) * (p[0].clone() - a[0].clone());
        if cross < Rat::zero() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// construction

/// Builds the adapted complex of a reduced skeleton on a torus of dimension
/// one or two: all base loci become unions of cells, and coordinate circles
/// through every special point make the 2-cells convex polygons.
pub fn build_adapted_complex(components: &[SkeletonComponent]) -> Result<CellComplex> {
    let Some(first) = components.first() else {
        return Err(Error::NonAdaptedComplex("no components given".into()));
    };
    let dim = first.base.ambient_rank;
    match dim {
        1 => {
            let mut marks = Vec::new();
            for comp in components {
                if !comp.base.periods.is_empty() {
                    return Err(Error::NonAdaptedComplex("periodic base locus".into()));
                }
                if comp.base.dim() == 0 {
                    for p in &comp.base.cosets {
                        marks.push(p[0].clone());
                    }
                }
            }
            Ok(circle_complex(&marks))
        }
        2 => {
            let mut circles: Vec<TorusCircle> = Vec::new();
            let mut points: Vec<Vec<Rat>> = Vec::new();
            for comp in components {
                if !comp.base.periods.is_empty() {
                    return Err(Error::NonAdaptedComplex("periodic base locus".into()));
                }
                match comp.base.dim() {
                    0 => {
                        for p in &comp.base.cosets {
                            points.push(p.clone());
                        }
                    }
                    1 => {
                        let dir = comp.base.direction.column(0);
                        for p in &comp.base.cosets {
                            push_circle(&mut circles, TorusCircle::from_direction(&dir, p));
                        }
                    }
                    2 => {}
                    k => return Err(Error::IrrationalLocus(k)),
                }
            }
            torus_complex(circles, points)
        }
        k => Err(Error::UnsupportedDimension(k)),
    }
}

fn push_circle(circles: &mut Vec<TorusCircle>, c: TorusCircle) -> bool {
    if circles.iter().any(|e| e.normal == c.normal && e.offset == c.offset) {
        return false;
    }
    circles.push(c);
    true
}

/// Marked-circle complex on the 1-torus: one vertex per mark (one forced
/// vertex at 0 when there are none), arcs between consecutive marks, two
/// entrance arrows per arc.
pub fn circle_complex(marks: &[Rat]) -> CellComplex {
    let mut params: Vec<Rat> = marks.iter().map(fract).collect();
    params.sort();
    params.dedup();
    if params.is_empty() {
        params.push(Rat::zero());
    }
    let k = params.len();
    let circle = TorusCircle {
        normal: vec![Int::one()],
        offset: Rat::zero(),
        base: vec![Rat::zero()],
        dir: vec![Int::one()],
    };
    let mut cells: Vec<Cell> = params
        .iter()
        .map(|t| Cell { dim: 0, geom: CellGeom::Vertex { pos: vec![t.clone()] } })
        .collect();
    let mut arrows = Vec::new();
    for i in 0..k {
        let t0 = params[i].clone();
        let t1 = if i + 1 < k { params[i + 1].clone() } else { params[0].clone() + Rat::one() };
        let edge_id = cells.len();
        cells.push(Cell { dim: 1, geom: CellGeom::Edge { circle: 0, t0: t0.clone(), t1: t1.clone() } });
        // positive-side entrance from the left endpoint
        arrows.push(Arrow {
            src: i,
            dst: edge_id,
            kind: ArrowKind::Branch { ray: vec![Int::one()] },
            wrap: vec![(params[i].clone() - t0).to_integer()],
        });
        // negative-side entrance from the right endpoint
        let head = (i + 1) % k;
        arrows.push(Arrow {
            src: head,
            dst: edge_id,
            kind: ArrowKind::Branch { ray: vec![-Int::one()] },
            wrap: vec![(params[head].clone() - t1).to_integer()],
        });
    }
    CellComplex {
        dim: 1,
        circles: vec![circle],
        cells,
        arrows,
        compose: BTreeMap::new(),
        links: BTreeMap::new(),
        sector_corners: BTreeMap::new(),
    }
}

const MAX_REFINEMENT_ROUNDS: usize = 8;

struct Dart {
    edge: CellId,
    tail: CellId,
    head: CellId,
    dirvec: Vec<Int>,
    /// canonical start position in the universal cover
    start: Vec<Rat>,
    /// displacement of a full traversal
    disp: Vec<Rat>,
    twin: usize,
}

fn torus_complex(mut circles: Vec<TorusCircle>, base_points: Vec<Vec<Rat>>) -> Result<CellComplex> {
    // refine: coordinate circles through every special point, to a fixpoint
    let mut round = 0;
    loop {
        round += 1;
        if round > MAX_REFINEMENT_ROUNDS {
            return Err(Error::RefinementDiverged(MAX_REFINEMENT_ROUNDS));
        }
        let mut special: BTreeSet<Vec<Rat>> =
            base_points.iter().map(|p| p.iter().map(fract).collect()).collect();
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                for p in circle_intersections(&circles[i], &circles[j]) {
                    special.insert(p);
                }
            }
        }
        if special.is_empty() {
            special.insert(vec![Rat::zero(), Rat::zero()]);
        }
        let mut grew = false;
        for p in &special {
            let v = TorusCircle::new(&[Int::one(), Int::zero()], p);
            let h = TorusCircle::new(&[Int::zero(), Int::one()], p);
            grew |= push_circle(&mut circles, v);
            grew |= push_circle(&mut circles, h);
        }
        if !grew {
            break;
        }
    }

    // vertices: all pairwise intersections
    let mut vertex_set: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            for p in circle_intersections(&circles[i], &circles[j]) {
                vertex_set.insert(p);
            }
        }
    }
    let vertices: Vec<Vec<Rat>> = vertex_set.into_iter().collect();
    let mut cells: Vec<Cell> = vertices
        .iter()
        .map(|p| Cell { dim: 0, geom: CellGeom::Vertex { pos: p.clone() } })
        .collect();

    // edges: arcs between consecutive vertex parameters on each circle
    let mut darts: Vec<Dart> = Vec::new();
    for (ci, circle) in circles.iter().enumerate() {
        let mut stops: Vec<(Rat, CellId)> = Vec::new();
        for (vi, p) in vertices.iter().enumerate() {
            if circle.contains(p) {
                stops.push((circle.param_of(p), vi));
            }
        }
        stops.sort_by(|a, b| a.0.cmp(&b.0));
        assert!(!stops.is_empty(), "every circle must carry a vertex after refinement");
        let k = stops.len();
        for i in 0..k {
            let (t0, tail_v) = stops[i].clone();
            let (t1, head_v) = if i + 1 < k {
                stops[i + 1].clone()
            } else {
                (stops[0].0.clone() + Rat::one(), stops[0].1)
            };
            let edge_id = cells.len();
            cells.push(Cell {
                dim: 1,
                geom: CellGeom::Edge { circle: ci, t0: t0.clone(), t1: t1.clone() },
            });
            let disp: Vec<Rat> = circle
                .dir
                .iter()
                .map(|d| (t1.clone() - t0.clone()) * Rat::from_integer(d.clone()))
                .collect();
            let fwd = darts.len();
            darts.push(Dart {
                edge: edge_id,
                tail: tail_v,
                head: head_v,
                dirvec: circle.dir.clone(),
                start: circle.point(&t0),
                disp: disp.clone(),
                twin: fwd + 1,
            });
            darts.push(Dart {
                edge: edge_id,
                tail: head_v,
                head: tail_v,
                dirvec: circle.dir.iter().map(|d| -d.clone()).collect(),
                start: circle.point(&t1),
                disp: disp.iter().map(|d| -d.clone()).collect(),
                twin: fwd,
            });
        }
    }

    // branch arrows, one per dart, from its tail vertex into its edge
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut branch_of_dart: Vec<ArrowId> = Vec::new();
    for dart in &darts {
        let pos = match &cells[dart.tail].geom {
            CellGeom::Vertex { pos } => pos.clone(),
            _ => unreachable!(),
        };
        let wrap: Vec<Int> = pos
            .iter()
            .zip(&dart.start)
            .map(|(a, b)| {
                let d = a.clone() - b.clone();
                assert!(d.is_integer(), "branch wrap must be integral");
                d.to_integer()
            })
            .collect();
        branch_of_dart.push(arrows.len());
        arrows.push(Arrow {
            src: dart.tail,
            dst: darts_edge(dart),
            kind: ArrowKind::Branch { ray: dart.dirvec.clone() },
            wrap,
        });
    }

    // counterclockwise angular order of outgoing darts at each vertex
    let mut order_at: BTreeMap<CellId, Vec<usize>> = BTreeMap::new();
    for (di, dart) in darts.iter().enumerate() {
        order_at.entry(dart.tail).or_default().push(di);
    }
    for list in order_at.values_mut() {
        list.sort_by(|&a, &b| angle_cmp(&darts[a].dirvec, &darts[b].dirvec));
        for w in list.windows(2) {
            assert!(
                darts[w[0]].dirvec != darts[w[1]].dirvec,
                "distinct darts share a direction"
            );
        }
    }

    // face tracing: next(d) = clockwise predecessor of twin(d) at head(d)
    let next_dart = |d: usize| -> usize {
        let at = &order_at[&darts[d].head];
        let idx = at.iter().position(|&x| x == darts[d].twin).expect("twin is outgoing at head");
        at[(idx + at.len() - 1) % at.len()]
    };
    let mut face_of_dart: Vec<Option<usize>> = vec![None; darts.len()];
    let mut face_cycles: Vec<Vec<usize>> = Vec::new();
    for d0 in 0..darts.len() {
        if face_of_dart[d0].is_some() {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = d0;
        loop {
            face_of_dart[d] = Some(face_cycles.len());
            cycle.push(d);
            d = next_dart(d);
            if d == d0 {
                break;
            }
        }
        face_cycles.push(cycle);
    }

    // face cells with exact boundary polygons in an unrolled frame
    let mut side_of_dart: Vec<ArrowId> = vec![usize::MAX; darts.len()];
    let mut face_cell: Vec<CellId> = Vec::new();
    for cycle in &face_cycles {
        // walk the boundary accumulating exact positions
        let mut pos: Vec<Vec<Rat>> = Vec::with_capacity(cycle.len());
        let mut cur = darts[cycle[0]].start.clone();
        for &d in cycle {
            pos.push(cur.clone());
            cur = cur.iter().zip(&darts[d].disp).map(|(a, b)| a.clone() + b.clone()).collect();
        }
        assert_eq!(cur, darts[cycle[0]].start, "face boundary must close up");
        let nc = Rat::from_integer(Int::from(pos.len() as i64));
        let centroid: Vec<Rat> = (0..2)
            .map(|k| pos.iter().map(|p| p[k].clone()).sum::<Rat>() / nc.clone())
            .collect();
        let anchor: Vec<Int> = centroid.iter().map(|x| x.floor().to_integer()).collect();
        let corners: Vec<Vec<Rat>> = pos
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&anchor)
                    .map(|(a, k)| a.clone() - Rat::from_integer(k.clone()))
                    .collect()
            })
            .collect();
        let sample: Vec<Rat> = centroid
            .iter()
            .zip(&anchor)
            .map(|(a, k)| a.clone() - Rat::from_integer(k.clone()))
            .collect();
        let fid = cells.len();
        face_cell.push(fid);
        cells.push(Cell { dim: 2, geom: CellGeom::Face { corners, sample } });

        // side arrows: one per boundary dart
        for (k, &d) in cycle.iter().enumerate() {
            let p_d = &pos[k];
            let w_d: Vec<Int> = p_d
                .iter()
                .zip(&darts[d].start)
                .map(|(a, b)| {
                    let v = a.clone() - b.clone();
                    assert!(v.is_integer(), "side wrap must be integral");
                    v.to_integer()
                })
                .collect();
            let wrap: Vec<Int> =
                anchor.iter().zip(&w_d).map(|(a, b)| a.clone() - b.clone()).collect();
            // face is on the left of a counterclockwise-traced boundary
            let inward = vec![-darts[d].dirvec[1].clone(), darts[d].dirvec[0].clone()];
            side_of_dart[d] = arrows.len();
            arrows.push(Arrow {
                src: darts_edge(&darts[d]),
                dst: fid,
                kind: ArrowKind::Side { inward },
                wrap,
            });
        }
    }

    // corner arrows and the composition table
    let mut compose = BTreeMap::new();
    for (f, cycle) in face_cycles.iter().enumerate() {
        let len = cycle.len();
        for k in 0..len {
            let d_in = cycle[(k + len - 1) % len];
            let d_out = cycle[k];
            let v = darts[d_out].tail;
            assert_eq!(darts[d_in].head, v);
            let b_out = branch_of_dart[d_out];
            let s_out = side_of_dart[d_out];
            let b_in = branch_of_dart[darts[d_in].twin];
            let s_in = side_of_dart[d_in];
            let wrap_a: Vec<Int> = arrows[b_out]
                .wrap
                .iter()
                .zip(&arrows[s_out].wrap)
                .map(|(x, y)| x.clone() + y.clone())
                .collect();
            let wrap_b: Vec<Int> = arrows[b_in]
                .wrap
                .iter()
                .zip(&arrows[s_in].wrap)
                .map(|(x, y)| x.clone() + y.clone())
                .collect();
            assert_eq!(wrap_a, wrap_b, "corner wrap must be decomposition independent");
            let corner_id = arrows.len();
            arrows.push(Arrow {
                src: v,
                dst: face_cell[f],
                kind: ArrowKind::Corner {
                    ray_first: darts[d_out].dirvec.clone(),
                    ray_second: darts[darts[d_in].twin].dirvec.clone(),
                },
                wrap: wrap_a,
            });
            compose.insert((b_out, s_out), corner_id);
            compose.insert((b_in, s_in), corner_id);
        }
    }

    // links: branch arrows counterclockwise, with the corner of each sector
    let mut links = BTreeMap::new();
    let mut sector_corners = BTreeMap::new();
    for (&v, list) in &order_at {
        let branches: Vec<ArrowId> = list.iter().map(|&d| branch_of_dart[d]).collect();
        let mut corners = Vec::new();
        for k in 0..list.len() {
            let ray_a = &darts[list[k]].dirvec;
            let ray_b = &darts[list[(k + 1) % list.len()]].dirvec;
            let found: Vec<ArrowId> = (0..arrows.len())
                .filter(|&a| {
                    arrows[a].src == v
                        && matches!(&arrows[a].kind,
                            ArrowKind::Corner { ray_first, ray_second }
                                if ray_first == ray_a && ray_second == ray_b)
                })
                .collect();
            assert_eq!(found.len(), 1, "each sector carries exactly one corner");
            corners.push(found[0]);
        }
        links.insert(v, branches);
        sector_corners.insert(v, corners);
    }

    let complex = CellComplex { dim: 2, circles, cells, arrows, compose, links, sector_corners };
    assert_eq!(complex.euler(), 0, "cell complex on the torus has Euler characteristic 0");
    Ok(complex)
}

fn darts_edge(d: &Dart) -> CellId {
    d.edge
}

/// Counterclockwise angular order of nonzero integer vectors starting at
/// the positive x-axis.
pub(crate) fn angle_cmp(a: &[Int], b: &[Int]) -> std::cmp::Ordering {
    let half = |v: &[Int]| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}
