//! Sheaf cohomology of toric line bundles through the Cox presentation:
//! class-group-graded line bundles on `(A^n \ Z)/G`, with `h^i` computed
//! degree by degree over the character lattice by the chamber method.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{is_simplicial, FanData, Stratum};
use crate::lattice::{
    character_sequence, kernel_basis, CharacterSequence, FinAbPresentation, QuotientClass,
};
use crate::linalg::{complex_cohomology_dims, FMatrix};
use crate::{IMat, Int, Rat};

/// The class group `Cl = Z^n / M` of a fan, with conversion between lifts
/// and canonical classes.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    cs: CharacterSequence,
}

impl ClassGroup {
    pub fn new(fd: &FanData) -> Result<Self> {
        fd.require_valid()?;
        Ok(ClassGroup { cs: character_sequence(&fd.f)? })
    }

    pub fn presentation(&self) -> &FinAbPresentation {
        self.cs.quotient()
    }

    /// Rank of the quotient torus `T = G_m^n / G`, the dimension of the
    /// stack.
    pub fn quotient_torus_rank(&self) -> usize {
        self.cs.sub_rank()
    }

    pub fn divisor(&self, lift: Vec<Int>) -> DivisorClass {
        let class = self.cs.class_of(&lift);
        DivisorClass { lift, class }
    }

    pub fn divisor_i64(&self, lift: &[i64]) -> DivisorClass {
        self.divisor(lift.iter().map(|&x| Int::from(x)).collect())
    }

    /// The canonical lift of a class (independent of the input lift).
    pub fn canonical_lift(&self, class: &QuotientClass) -> Vec<Int> {
        self.cs.lift_of(class)
    }

    pub fn m_inclusion(&self) -> &IMat {
        self.cs.m_inclusion()
    }
}

/// A divisor class: a chosen lift in `Z^n` plus its canonical form in the
/// class group.  Lifts differing by `M` canonicalize identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub lift: Vec<Int>,
    pub class: QuotientClass,
}

/// Cohomology dimensions `h^0..h^d`, optionally with the per-degree
/// contributions that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub dims: Vec<usize>,
    pub truncated: bool,
    #[serde(skip)]
    pub per_degree: Option<Vec<(Vec<Int>, Vec<usize>)>>,
}

impl CohomologyTable {
    pub fn h(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Completeness of a simplicial fan: every maximal stratum is full
/// dimensional and each of its facets is shared with exactly one other
/// maximal stratum sitting on the opposite side.
pub fn is_complete_simplicial(fd: &FanData) -> Result<bool> {
    if !is_simplicial(fd)? {
        return Err(Error::NotSimplicial);
    }
    let maximal = fd.maximal_strata();
    let tops: Vec<Stratum> = maximal.iter().filter(|s| s.len() == fd.d).copied().collect();
    if tops.is_empty() || maximal.iter().any(|s| s.len() != fd.d) {
        return Ok(false);
    }
    for s in &tops {
        for i in s.indices() {
            let facet = s.without(i);
            // integer normal of the facet hyperplane, oriented toward ray i
            let rows: IMat = fd.ray_submatrix(facet).transpose();
            let ker = kernel_basis(&rows);
            if ker.ncols() != 1 {
                return Ok(false);
            }
            let mut w = ker.column(0);
            let ri = fd.ray(i);
            let pair: Int = w.iter().zip(&ri).map(|(a, b)| a.clone() * b.clone()).sum();
            if pair.is_zero() {
                return Ok(false);
            }
            if pair.is_negative() {
                for x in w.iter_mut() {
                    *x = -x.clone();
                }
            }
            let matches = tops
                .iter()
                .filter(|t| {
                    if *t == s || !facet.is_subset(t) {
                        return false;
                    }
                    t.indices().iter().all(|&j| {
                        if facet.contains(j) {
                            return true;
                        }
                        let rj = fd.ray(j);
                        let p: Int =
                            w.iter().zip(&rj).map(|(a, b)| a.clone() * b.clone()).sum();
                        p.is_negative()
                    })
                })
                .count();
            if matches != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Integer degree box, inclusive on both ends.
#[derive(Clone, Debug)]
pub struct DegreeBox {
    pub lo: Vec<Int>,
    pub hi: Vec<Int>,
}

impl DegreeBox {
    fn points(&self) -> Vec<Vec<Int>> {
        let d = self.lo.len();
        let mut out: Vec<Vec<Int>> = vec![Vec::new()];
        for k in 0..d {
            let mut next = Vec::new();
            for p in &out {
                let mut v = self.lo[k].clone();
                while v <= self.hi[k] {
                    let mut q = p.clone();
                    q.push(v.clone());
                    next.push(q);
                    v += 1;
                }
            }
            out = next;
        }
        out
    }

    pub fn pad(&self, by: i64) -> DegreeBox {
        DegreeBox {
            lo: self.lo.iter().map(|x| x.clone() - Int::from(by)).collect(),
            hi: self.hi.iter().map(|x| x.clone() + Int::from(by)).collect(),
        }
    }
}

/// The box hull of the chamber vertices `{m : <m, ray_i> = -D_i for d
/// independent rays}`, padded by one; all chamber topology changes happen
/// at these vertices.
pub fn chamber_box(fd: &FanData, lift: &[Int]) -> Result<DegreeBox> {
    let d = fd.d;
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    for t in k_subsets(fd.n, d) {
        let a = FMatrix::<Rat>::from_fn(d, d, |r, c| Rat::from_integer(fd.f[(c, t[r])].clone()));
        let b: Vec<Rat> = t.iter().map(|&i| -Rat::from_integer(lift[i].clone())).collect();
        if a.rank() < d {
            continue;
        }
        if let Some(m) = a.solve(&b) {
            vertices.push(m);
        }
    }
    if vertices.is_empty() {
        return Err(Error::NotComplete);
    }
    let lo = (0..d)
        .map(|k| {
            vertices.iter().map(|v| v[k].floor().to_integer()).min().unwrap() - Int::from(1)
        })
        .collect();
    let hi = (0..d)
        .map(|k| {
            vertices.iter().map(|v| v[k].ceil().to_integer()).max().unwrap() + Int::from(1)
        })
        .collect();
    Ok(DegreeBox { lo, hi })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

/// Reduced simplicial cohomology dims of the subcomplex of strata whose
/// rays all pair negatively against the degree (shifted by one on output:
/// `h^i` picks up `H~^{i-1}`).
fn negative_complex_reduced_cohomology(fd: &FanData, neg: Stratum, out_len: usize) -> Vec<usize> {
    let faces: Vec<Stratum> = fd.strata.iter().filter(|s| s.is_subset(&neg)).copied().collect();
    // reduced cochain complex over Q; slot k holds faces with k vertices,
    // so slot 0 is the empty face
    let mut by_dim: Vec<Vec<Stratum>> = vec![Vec::new(); fd.d + 2];
    for s in &faces {
        if s.len() < by_dim.len() {
            by_dim[s.len()].push(*s);
        }
    }
    let dims: Vec<usize> = by_dim.iter().map(|v| v.len()).collect();
    let mut maps = Vec::new();
    for k in 0..by_dim.len() - 1 {
        let lower = &by_dim[k];
        let upper = &by_dim[k + 1];
        let index: std::collections::HashMap<Stratum, usize> =
            lower.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut mat = FMatrix::<Rat>::zeros(upper.len(), lower.len());
        for (r, s) in upper.iter().enumerate() {
            for (pos, i) in s.indices().into_iter().enumerate() {
                let face = s.without(i);
                if let Some(&c) = index.get(&face) {
                    let sign = if pos % 2 == 0 { Rat::one() } else { -Rat::one() };
                    mat[(r, c)] = sign;
                }
            }
        }
        maps.push(mat);
    }
    let coh = complex_cohomology_dims(&dims, &maps);
    (0..out_len).map(|i| coh.get(i).copied().unwrap_or(0)).collect()
}

fn cohomology_over_box(fd: &FanData, lift: &[Int], dbox: &DegreeBox) -> CohomologyTable {
    let mut dims = vec![0usize; fd.d + 1];
    let mut per_degree = Vec::new();
    for m in dbox.points() {
        let mut neg = Stratum::empty();
        for i in 0..fd.n {
            let pair: Int = m.iter().zip(fd.ray(i)).map(|(a, b)| a.clone() * b).sum();
            if pair < -lift[i].clone() {
                neg = Stratum(neg.0 | (1 << i));
            }
        }
        let local = negative_complex_reduced_cohomology(fd, neg, fd.d + 1);
        if local.iter().any(|&x| x > 0) {
            for (i, &c) in local.iter().enumerate() {
                dims[i] += c;
            }
            per_degree.push((m, local));
        }
    }
    CohomologyTable { dims, truncated: false, per_degree: Some(per_degree) }
}

/// `h^i(Y, O(D))` by the chamber method over the degree box derived from
/// the chamber vertices.  Requires valid simplicial complete fan data.
pub fn cohomology_dims(fd: &FanData, divisor: &DivisorClass) -> Result<CohomologyTable> {
    if !is_complete_simplicial(fd)? {
        return Err(Error::NotComplete);
    }
    let dbox = chamber_box(fd, &divisor.lift)?;
    Ok(cohomology_over_box(fd, &divisor.lift, &dbox))
}

/// Same computation over an explicit degree box, for non-complete fans;
/// the result is flagged as truncated.
pub fn cohomology_dims_boxed(
    fd: &FanData,
    divisor: &DivisorClass,
    dbox: &DegreeBox,
) -> Result<CohomologyTable> {
    if !is_simplicial(fd)? {
        return Err(Error::NotSimplicial);
    }
    let mut table = cohomology_over_box(fd, &divisor.lift, dbox);
    table.truncated = true;
    Ok(table)
}

/// `Ext^i(O(D1), O(D2)) = h^i(O(D2 - D1))` for line bundles.
pub fn hom_dims(
    fd: &FanData,
    cl: &ClassGroup,
    d1: &DivisorClass,
    d2: &DivisorClass,
) -> Result<CohomologyTable> {
    let diff: Vec<Int> =
        d2.lift.iter().zip(&d1.lift).map(|(a, b)| a.clone() - b.clone()).collect();
    cohomology_dims(fd, &cl.divisor(diff))
}

/// Pairwise `Ext` tables: entry `(i, j)` is `hom_dims(classes[i],
/// classes[j])`.
pub fn hom_matrix(
    fd: &FanData,
    cl: &ClassGroup,
    classes: &[DivisorClass],
) -> Result<Vec<Vec<CohomologyTable>>> {
    classes
        .iter()
        .map(|a| classes.iter().map(|b| hom_dims(fd, cl, a, b)).collect())
        .collect()
}

/// The canonical class, lifted as minus the sum of the ray divisors.
pub fn canonical_divisor(cl: &ClassGroup, n: usize) -> DivisorClass {
    cl.divisor(vec![-Int::from(1); n])
}

/// Serialization used by the command-line tool.
#[derive(Serialize, Deserialize)]
pub struct CohomologyWire {
    pub class: Vec<String>,
    pub h: Vec<usize>,
    pub truncated: bool,
}

pub fn table_to_wire(divisor: &DivisorClass, table: &CohomologyTable) -> CohomologyWire {
    CohomologyWire {
        class: divisor.lift.iter().map(|x| x.to_string()).collect(),
        h: table.dims.clone(),
        truncated: table.truncated,
    }
}

/// All maximal-cone strata, used by completeness diagnostics.
pub fn top_strata(fd: &FanData) -> BTreeSet<Stratum> {
    fd.maximal_strata().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{standard_fan, StandardFan};

    fn p1() -> (FanData, ClassGroup) {
        let fd = standard_fan(&StandardFan::Projective(1)).unwrap();
        let cl = ClassGroup::new(&fd).unwrap();
        (fd, cl)
    }

    fn p2() -> (FanData, ClassGroup) {
        let fd = standard_fan(&StandardFan::Projective(2)).unwrap();
        let cl = ClassGroup::new(&fd).unwrap();
        (fd, cl)
    }

    /// Independent two-chart computation on the projective line: a degree
    /// contributes to h^0 when it lives on both charts and to h^1 when it
    /// lives on neither.
    fn p1_cech_oracle(a0: i64, a1: i64) -> (usize, usize) {
        let window = 2 * (a0.abs() + a1.abs() + 2);
        let mut h0 = 0usize;
        let mut h1 = 0usize;
        for m in -window..=window {
            let on_chart0 = m >= -a0; // <m, 1> >= -a0
            let on_chart1 = -m >= -a1; // <m, -1> >= -a1
            if on_chart0 && on_chart1 {
                h0 += 1;
            }
            if !on_chart0 && !on_chart1 {
                h1 += 1;
            }
        }
        (h0, h1)
    }

    #[test]
    fn p1_line_bundles_match_cech_oracle() {
        let (fd, cl) = p1();
        for d in -4i64..=4 {
            let table = cohomology_dims(&fd, &cl.divisor_i64(&[d, 0])).unwrap();
            let (h0, h1) = p1_cech_oracle(d, 0);
            assert_eq!((table.h(0), table.h(1)), (h0, h1), "O({d})");
        }
        for d in 0i64..=4 {
            let table = cohomology_dims(&fd, &cl.divisor_i64(&[d, 0])).unwrap();
            assert_eq!(table.dims, vec![(d + 1) as usize, 0]);
        }
    }

    #[test]
    fn p2_standard_values() {
        let (fd, cl) = p2();
        let table = cohomology_dims(&fd, &cl.divisor_i64(&[-3, 0, 0])).unwrap();
        assert_eq!(table.dims, vec![0, 0, 1]);
        for k in 0i64..=4 {
            let table = cohomology_dims(&fd, &cl.divisor_i64(&[k, 0, 0])).unwrap();
            let expect = ((k + 1) * (k + 2) / 2) as usize;
            assert_eq!(table.dims, vec![expect, 0, 0], "O({k})");
        }
    }

    #[test]
    fn structure_sheaf_has_only_constants() {
        for which in [
            StandardFan::Projective(1),
            StandardFan::Projective(2),
            StandardFan::Hirzebruch(1),
            StandardFan::WeightedProjective(vec![1, 1, 2]),
            StandardFan::Product(
                Box::new(StandardFan::Projective(1)),
                Box::new(StandardFan::Projective(1)),
            ),
        ] {
            let fd = standard_fan(&which).unwrap();
            let cl = ClassGroup::new(&fd).unwrap();
            let zero = cl.divisor(vec![Int::zero(); fd.n]);
            let table = cohomology_dims(&fd, &zero).unwrap();
            assert_eq!(table.h(0), 1, "{which:?}");
            assert!(table.dims[1..].iter().all(|&x| x == 0), "{which:?}");
        }
    }

    #[test]
    fn hom_dims_are_difference_cohomology() {
        let (fd, cl) = p1();
        let o = cl.divisor_i64(&[0, 0]);
        let o1 = cl.divisor_i64(&[1, 0]);
        assert_eq!(hom_dims(&fd, &cl, &o, &o1).unwrap().dims, vec![2, 0]);
        assert_eq!(hom_dims(&fd, &cl, &o1, &o1).unwrap().dims, vec![1, 0]);

        let (fd, cl) = p2();
        let o = cl.divisor_i64(&[0, 0, 0]);
        let o1 = cl.divisor_i64(&[1, 0, 0]);
        let o2 = cl.divisor_i64(&[2, 0, 0]);
        assert_eq!(hom_dims(&fd, &cl, &o, &o1).unwrap().h(0), 3);
        assert_eq!(hom_dims(&fd, &cl, &o, &o2).unwrap().h(0), 6);
        assert_eq!(hom_dims(&fd, &cl, &o2, &o).unwrap().h(0), 0);
    }

    #[test]
    fn hom_matrix_p1_pattern() {
        let (fd, cl) = p1();
        let classes = vec![cl.divisor_i64(&[0, 0]), cl.divisor_i64(&[1, 0])];
        let m = hom_matrix(&fd, &cl, &classes).unwrap();
        let dims: Vec<Vec<usize>> =
            m.iter().map(|row| row.iter().map(|t| t.h(0)).collect()).collect();
        assert_eq!(dims, vec![vec![1, 2], vec![0, 1]]);
        assert!(m.iter().flatten().all(|t| t.h(1) == 0));
    }

    #[test]
    fn lift_independence() {
        let (fd, cl) = p2();
        let base = cl.divisor_i64(&[2, 0, 0]);
        let table = cohomology_dims(&fd, &base).unwrap();
        let m = cl.m_inclusion().clone();
        for (c0, c1) in [(1i64, 0i64), (0, 1), (2, -3), (-1, -1), (5, 2)] {
            let shift: Vec<Int> = (0..fd.n)
                .map(|i| m[(i, 0)].clone() * Int::from(c0) + m[(i, 1)].clone() * Int::from(c1))
                .collect();
            let lift: Vec<Int> =
                base.lift.iter().zip(&shift).map(|(a, b)| a.clone() + b.clone()).collect();
            let shifted = cl.divisor(lift);
            assert_eq!(shifted.class, base.class);
            assert_eq!(cohomology_dims(&fd, &shifted).unwrap().dims, table.dims);
        }
    }

    #[test]
    fn truncation_soundness_bigger_box_same_answer() {
        let (fd, cl) = p2();
        for lift in [[0i64, 0, 0], [-3, 0, 0], [1, 2, -1], [-5, 1, 1]] {
            let d = cl.divisor_i64(&lift);
            let table = cohomology_dims(&fd, &d).unwrap();
            let bigger = chamber_box(&fd, &d.lift).unwrap().pad(3);
            let wide = cohomology_over_box(&fd, &d.lift, &bigger);
            assert_eq!(wide.dims, table.dims, "O({lift:?})");
        }
    }

    #[test]
    fn serre_duality_on_golden_corpus() {
        let corpus = [
            StandardFan::Projective(1),
            StandardFan::Projective(2),
            StandardFan::Product(
                Box::new(StandardFan::Projective(1)),
                Box::new(StandardFan::Projective(1)),
            ),
            StandardFan::Hirzebruch(1),
        ];
        for which in corpus {
            let fd = standard_fan(&which).unwrap();
            let cl = ClassGroup::new(&fd).unwrap();
            let lifts: Vec<Vec<i64>> = vec![
                vec![0; fd.n],
                (0..fd.n).map(|i| if i == 0 { 2 } else { 0 }).collect(),
                (0..fd.n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
            ];
            for lift in lifts {
                let d = cl.divisor_i64(&lift);
                let h = cohomology_dims(&fd, &d).unwrap();
                let kd: Vec<Int> = d.lift.iter().map(|x| -Int::from(1) - x.clone()).collect();
                let hk = cohomology_dims(&fd, &cl.divisor(kd)).unwrap();
                for i in 0..=fd.d {
                    assert_eq!(h.h(i), hk.h(fd.d - i), "{which:?} O({lift:?}) i={i}");
                }
            }
        }
    }

    #[test]
    fn p1xp1_anticanonical_corner() {
        let fd = standard_fan(&StandardFan::Product(
            Box::new(StandardFan::Projective(1)),
            Box::new(StandardFan::Projective(1)),
        ))
        .unwrap();
        let cl = ClassGroup::new(&fd).unwrap();
        let table = cohomology_dims(&fd, &cl.divisor_i64(&[-1, 0, -1, 0])).unwrap();
        assert_eq!(table.dims, vec![0, 0, 0]);
    }

    #[test]
    fn incomplete_fans_need_a_box() {
        let fd = standard_fan(&StandardFan::Affine(2)).unwrap();
        let cl = ClassGroup::new(&fd).unwrap();
        let d = cl.divisor_i64(&[0, 0]);
        assert!(matches!(cohomology_dims(&fd, &d), Err(Error::NotComplete)));
        let dbox = DegreeBox {
            lo: vec![Int::from(-3), Int::from(-3)],
            hi: vec![Int::from(3), Int::from(3)],
        };
        let t = cohomology_dims_boxed(&fd, &d, &dbox).unwrap();
        assert!(t.truncated);
        // box-truncated sections of the structure sheaf of the plane
        assert_eq!(t.h(0), 16);
    }

    #[test]
    fn non_simplicial_is_rejected() {
        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        let cl = ClassGroup::new(&fd).unwrap();
        let d = cl.divisor(vec![Int::zero(); 4]);
        assert!(matches!(cohomology_dims(&fd, &d), Err(Error::NotSimplicial)));
    }

    #[test]
    fn completeness_detection() {
        for (which, expect) in [
            (StandardFan::Projective(1), true),
            (StandardFan::Projective(2), true),
            (StandardFan::Hirzebruch(1), true),
            (StandardFan::WeightedProjective(vec![1, 1, 2]), true),
            (StandardFan::Affine(2), false),
            (StandardFan::P2MinusVertex, false),
        ] {
            let fd = standard_fan(&which).unwrap();
            assert_eq!(is_complete_simplicial(&fd).unwrap(), expect, "{which:?}");
        }
    }
}
