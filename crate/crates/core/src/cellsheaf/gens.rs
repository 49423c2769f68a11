//! Compact generator candidates for the subcategory cut out by a skeleton:
//! arrows whose conormal chamber the skeleton excludes are forced to act
//! invertibly, the category is contracted along them, and the projectives
//! of the contraction are transported back.  A full microsupport check is
//! run on every candidate.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::complex::{ArrowKind, CellComplex, CellId};
use super::micro::{base_contains_cell, violating_chamber};
use super::sheaf::CellSheaf;
use crate::error::{Error, Result};
use crate::linalg::FMatrix;
use crate::skeleton::{cone_contains, SkeletonComponent};
use crate::{Int, Rat};

/// The conormal test chamber of a codimension-one arrow: the covector ray
/// whose negative side contains the target germ.
fn test_ray(cx: &CellComplex, arrow: usize) -> Option<Vec<Int>> {
    match &cx.arrows[arrow].kind {
        ArrowKind::Branch { ray } if cx.dim == 1 => Some(vec![-ray[0].clone()]),
        ArrowKind::Side { inward } if cx.dim == 2 => {
            Some(vec![-inward[0].clone(), -inward[1].clone()])
        }
        _ => None,
    }
}

/// Arrows that must act invertibly: their test chamber lies outside every
/// component over their source cell.
fn constrained_arrows(
    cx: &CellComplex,
    components: &[SkeletonComponent],
) -> Vec<usize> {
    let mut out = Vec::new();
    for a in 0..cx.arrows.len() {
        let Some(xi) = test_ray(cx, a) else {
            continue;
        };
        let xi_rat: Vec<Rat> = xi.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let allowed = components.iter().any(|comp| {
            base_contains_cell(cx, comp, cx.arrows[a].src) && cone_contains(&comp.cone, &xi_rat)
        });
        if !allowed {
            out.push(a);
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Paths in the contracted category are strings of surviving arrows; a
/// congruence generated by the corner relations identifies them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Path {
    src: usize, // class
    dst: usize, // class
    word: Vec<usize>,
}

struct Contraction {
    class_of_cell: Vec<usize>,
    classes: Vec<Vec<CellId>>,
    /// paths between classes, grouped into congruence classes; index by id
    paths: Vec<Path>,
    path_class: Vec<usize>,
    /// canonical class id of the composite (arrow . path), per (arrow, path)
    extend: BTreeMap<(usize, usize), usize>,
    /// identity path of each class
    id_path: Vec<usize>,
}

const MAX_PATHS: usize = 20_000;

fn contract(cx: &CellComplex, constrained: &[usize]) -> Result<Contraction> {
    let ncells = cx.cells.len();
    let mut uf = UnionFind::new(ncells);
    for &a in constrained {
        uf.union(cx.arrows[a].src, cx.arrows[a].dst);
    }
    let mut class_of_cell = vec![0usize; ncells];
    let mut reps: Vec<usize> = Vec::new();
    for c in 0..ncells {
        let r = uf.find(c);
        let idx = match reps.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                reps.push(r);
                reps.len() - 1
            }
        };
        class_of_cell[c] = idx;
    }
    let nclasses = reps.len();
    let mut classes: Vec<Vec<CellId>> = vec![Vec::new(); nclasses];
    for c in 0..ncells {
        classes[class_of_cell[c]].push(c);
    }

    // surviving generators and the class graph, which must be acyclic
    let survivors: Vec<usize> =
        (0..cx.arrows.len()).filter(|a| !constrained.contains(a)).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &a in &survivors {
        let (s, d) = (class_of_cell[cx.arrows[a].src], class_of_cell[cx.arrows[a].dst]);
        if s == d {
            return Err(Error::CodimTwoObstruction(format!(
                "contraction creates an endomorphism on the class of cell {}",
                cx.arrows[a].src
            )));
        }
        edges.push((s, d));
    }
    if has_cycle(nclasses, &edges) {
        return Err(Error::CodimTwoObstruction("contracted class graph has a cycle".into()));
    }

    // enumerate all composable words of surviving arrows
    let mut paths: Vec<Path> = (0..nclasses)
        .map(|c| Path { src: c, dst: c, word: Vec::new() })
        .collect();
    let id_path: Vec<usize> = (0..nclasses).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &p in &frontier {
            for &a in &survivors {
                if class_of_cell[cx.arrows[a].src] != paths[p].dst {
                    continue;
                }
                // words must be composable cell-wise, not just class-wise:
                // the arrow's source cell must match the word's末 target or
                // sit in the same class through contracted identifications
                if let Some(&last) = paths[p].word.last() {
                    let prev_dst = cx.arrows[last].dst;
                    if class_of_cell[prev_dst] != class_of_cell[cx.arrows[a].src] {
                        continue;
                    }
                }
                let mut word = paths[p].word.clone();
                word.push(a);
                let cand = Path {
                    src: paths[p].src,
                    dst: class_of_cell[cx.arrows[a].dst],
                    word,
                };
                if !paths.contains(&cand) {
                    paths.push(cand);
                    next.push(paths.len() - 1);
                    if paths.len() > MAX_PATHS {
                        return Err(Error::CodimTwoObstruction(
                            "path enumeration exceeded its bound".into(),
                        ));
                    }
                }
            }
        }
        frontier = next;
    }

    // congruence: corner relations, with constrained arrows read as id
    let npaths = paths.len();
    let mut puf = UnionFind::new(npaths);
    let reduce_word = |w: &[usize]| -> Vec<usize> {
        w.iter().copied().filter(|a| !constrained.contains(a)).collect()
    };
    let find_path = |paths: &[Path], src: usize, word: &[usize], dst: usize| -> Option<usize> {
        paths.iter().position(|p| p.src == src && p.dst == dst && p.word == word)
    };
    let mut relations: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (&(b, s), &c) in &cx.compose {
        relations.push((reduce_word(&[b, s]), reduce_word(&[c])));
    }
    // close the congruence under pre- and post-composition
    loop {
        let mut changed = false;
        for (l, r) in &relations {
            for p in 0..npaths {
                let w = &paths[p].word;
                // find every occurrence of l inside w and rewrite to r
                if l.len() > w.len() {
                    continue;
                }
                for start in 0..=w.len() - l.len() {
                    if &w[start..start + l.len()] == l.as_slice() {
                        let mut w2 = Vec::new();
                        w2.extend_from_slice(&w[..start]);
                        w2.extend_from_slice(r);
                        w2.extend_from_slice(&w[start + l.len()..]);
                        if let Some(q) = find_path(&paths, paths[p].src, &w2, paths[p].dst) {
                            if puf.find(p) != puf.find(q) {
                                puf.union(p, q);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut path_class = vec![0usize; npaths];
    let mut canon: Vec<usize> = Vec::new();
    for p in 0..npaths {
        let r = puf.find(p);
        let idx = match canon.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                canon.push(r);
                canon.len() - 1
            }
        };
        path_class[p] = idx;
    }

    // extension table: class of (arrow . path)
    let mut extend = BTreeMap::new();
    for (pid, p) in paths.iter().enumerate() {
        for a in 0..cx.arrows.len() {
            let asrc = class_of_cell[cx.arrows[a].src];
            if asrc != p.dst {
                continue;
            }
            if let Some(&last) = p.word.last() {
                if class_of_cell[cx.arrows[last].dst] != asrc {
                    continue;
                }
            }
            let target = if constrained.contains(&a) {
                path_class[pid]
            } else {
                let mut w = p.word.clone();
                w.push(a);
                let dst = class_of_cell[cx.arrows[a].dst];
                match find_path(&paths, p.src, &w, dst) {
                    Some(q) => path_class[q],
                    None => continue,
                }
            };
            extend.insert((a, path_class[pid]), target);
        }
    }

    Ok(Contraction { class_of_cell, classes, paths, path_class, extend, id_path })
}

fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    // Kahn peeling
    let mut indeg = vec![0usize; n];
    for &(_, d) in edges {
        indeg[d] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &(s, d) in edges {
            if s == v {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push(d);
                }
            }
        }
    }
    seen < n
}

/// One candidate generator per contraction class: the class's projective,
/// transported back to a representation of the original category.  Every
/// candidate must pass the full microsupport test.
pub fn generators(components: &[SkeletonComponent]) -> Result<Vec<CellSheaf>> {
    let cx = Arc::new(super::complex::build_adapted_complex(components)?);
    generators_on(cx, components)
}

/// Same, over an already-built complex (callers that also need the complex).
pub fn generators_on(
    cx: Arc<CellComplex>,
    components: &[SkeletonComponent],
) -> Result<Vec<CellSheaf>> {
    let constrained = constrained_arrows(&cx, components);
    let con = contract(&cx, &constrained)?;
    let nclasses = con.classes.len();

    // hom classes from x to each class, per class x
    let mut out = Vec::new();
    for x in 0..nclasses {
        // basis of R(cell): congruence classes of paths from x to the
        // cell's class
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); cx.cells.len()];
        for cell in 0..cx.cells.len() {
            let target = con.class_of_cell[cell];
            let mut classes_here: Vec<usize> = con
                .paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.src == x && p.dst == target)
                .map(|(pid, _)| con.path_class[pid])
                .collect();
            classes_here.sort_unstable();
            classes_here.dedup();
            basis[cell] = classes_here;
        }
        let _ = &con.id_path;
        let spaces: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let sheaf = CellSheaf::new(cx.clone(), spaces.clone(), |a| {
            let (src, dst) = (cx.arrows[a].src, cx.arrows[a].dst);
            let mut m = FMatrix::zeros(spaces[dst], spaces[src]);
            for (col, &pc) in basis[src].iter().enumerate() {
                if let Some(&target) = con.extend.get(&(a, pc)) {
                    if let Some(row) = basis[dst].iter().position(|&q| q == target) {
                        m[(row, col)] = Rat::one();
                    }
                }
            }
            m
        })?;
        if sheaf.is_zero() {
            continue;
        }
        out.push(sheaf);
    }

    // mandatory a-posteriori microsupport check
    for (i, cand) in out.iter().enumerate() {
        if let Some(entry) = violating_chamber(cand, components)? {
            return Err(Error::CodimTwoObstruction(format!(
                "candidate {i} has microsupport outside the skeleton at cell {} chamber {:?}",
                entry.cell, entry.chamber
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellsheaf::rhom;
    use crate::cellsheaf::GradedDims;
    use crate::fan::{standard_fan, StandardFan};
    use crate::skeleton::{reduce, GammaPoint};

    #[test]
    fn p1_generators_give_the_kronecker_pattern() {
        let fd = standard_fan(&StandardFan::Projective(1)).unwrap();
        let red = reduce(&fd, &GammaPoint::zero(2)).unwrap();
        let gens = generators(&red.components).unwrap();
        assert_eq!(gens.len(), 2);
        let mut dims = vec![vec![GradedDims::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                dims[i][j] = rhom(&gens[i], &gens[j]).unwrap();
            }
        }
        let h0: Vec<Vec<usize>> =
            dims.iter().map(|r| r.iter().map(|d| d.dim_at(0)).collect()).collect();
        let mut flat: Vec<usize> = h0.iter().flatten().copied().collect();
        flat.sort_unstable();
        assert_eq!(flat, vec![0, 1, 1, 2]);
        // no higher ext between projectives
        for r in &dims {
            for d in r {
                assert_eq!(d.dim_at(1), 0);
            }
        }
    }

    #[test]
    fn zero_section_only_gives_the_constant_type_generator() {
        use crate::skeleton::{AffineSubtorus, SkeletonComponent};
        use crate::fan::Stratum;
        use crate::IMat;
        // one component: the zero section of the 1-torus
        let comps = vec![SkeletonComponent {
            stratum: Stratum::empty(),
            base: AffineSubtorus {
                ambient_rank: 1,
                ambient_lattice: IMat::identity(1),
                direction: IMat::identity(1),
                cosets: vec![vec![crate::rat(0, 1)]],
                periods: Vec::new(),
            },
            cone: Vec::new(),
        }];
        let gens = generators(&comps).unwrap();
        assert_eq!(gens.len(), 1);
        let end = rhom(&gens[0], &gens[0]).unwrap();
        assert_eq!(end, GradedDims::new(0, vec![1, 1]));
    }

    #[test]
    fn p2_has_three_generators_with_beilinson_homs() {
        let fd = standard_fan(&StandardFan::Projective(2)).unwrap();
        let red = reduce(&fd, &GammaPoint::zero(3)).unwrap();
        let gens = generators(&red.components).unwrap();
        assert_eq!(gens.len(), 3);
        let mut h0 = vec![vec![0usize; 3]; 3];
        let mut higher = 0usize;
        for i in 0..3 {
            for j in 0..3 {
                let d = rhom(&gens[i], &gens[j]).unwrap();
                h0[i][j] = d.dim_at(0);
                higher += d.dims.iter().skip((1 - d.min_degree) as usize).sum::<usize>();
            }
        }
        // some ordering of the three generators realizes the pattern
        // 1,3,6 / 0,1,3 / 0,0,1
        let mut found = false;
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let get = |i: usize, j: usize| h0[perm[i]][perm[j]];
            let upper = get(0, 1) == 3 && get(1, 2) == 3 && get(0, 2) == 6;
            let diag = (0..3).all(|i| get(i, i) == 1);
            let lower = get(1, 0) == 0 && get(2, 0) == 0 && get(2, 1) == 0;
            if upper && diag && lower {
                found = true;
            }
        }
        assert!(found, "hom matrix {h0:?} does not match the expected pattern");
        assert_eq!(higher, 0, "no higher ext between the generators");
    }
}
