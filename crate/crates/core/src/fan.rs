//! Fan data: a ray map `f : Z^n -> N = Z^d` together with a downward-closed
//! set of coordinate strata whose image interiors are disjoint.  This is the
//! combinatorial input for both sides of the workbench.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::smith_normal_form;
use crate::lp::LinearSystem;
use crate::{IMat, Int, Rat};

/// Hard cap on the number of rays; strata are bitmasks.
pub const MAX_RAYS: usize = 20;

/// A coordinate stratum, i.e. a subset of the ray indices `0..n`, stored as
/// a bitmask.  The stratum `S` is the face of `R^n_{>=0}` where exactly the
/// coordinates *outside* `S` vanish.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Stratum(pub u32);

impl Stratum {
    pub fn empty() -> Self {
        Stratum(0)
    }

    pub fn singleton(i: usize) -> Self {
        Stratum(1 << i)
    }

    pub fn from_indices(ix: &[usize]) -> Self {
        Stratum(ix.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn without(&self, i: usize) -> Self {
        Stratum(self.0 & !(1 << i))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &Stratum) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based member indices, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..MAX_RAYS).filter(|&i| self.contains(i)).collect()
    }

    /// 1-based member indices, the convention of the fan file format.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices().iter().map(|i| i + 1).collect()
    }
}

impl fmt::Debug for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.one_based().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Fan data: `n` rays, lattice rank `d`, the ray map `f` (rays are its
/// columns) and the stratum set.
#[derive(Clone, Debug)]
pub struct FanData {
    pub n: usize,
    pub d: usize,
    pub f: IMat,
    pub strata: BTreeSet<Stratum>,
    /// set when the loader had to complete the downward closure
    pub closure_completed: bool,
}

/// One violated fan-data condition, with a witness where meaningful.
#[derive(Clone, Debug)]
pub enum Violation {
    NotDownwardClosed { stratum: Stratum, missing: Stratum },
    MissingSingleton { ray: usize },
    MissingEmptyStratum,
    ZeroRay { ray: usize },
    RankDeficient { rank: usize, expected: usize },
    RelintOverlap { s: Stratum, t: Stratum, witness: Vec<Rat> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDownwardClosed { stratum, missing } => {
                write!(f, "stratum {stratum:?} is listed but its face {missing:?} is not")
            }
            Violation::MissingSingleton { ray } => {
                write!(f, "coordinate ray {{{}}} is missing from the strata", ray + 1)
            }
            Violation::MissingEmptyStratum => write!(f, "the zero stratum {{}} is missing"),
            Violation::ZeroRay { ray } => write!(f, "ray {} maps to zero", ray + 1),
            Violation::RankDeficient { rank, expected } => {
                write!(
                    f,
                    "ray map has rank {rank}, expected {expected} (not rationally surjective)"
                )
            }
            Violation::RelintOverlap { s, t, witness } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "images of the interiors of {s:?} and {t:?} meet, e.g. at ({})",
                    w.join(", ")
                )
            }
        }
    }
}

/// Report-valued validation outcome.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid fan data")
        } else {
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

impl FanData {
    pub fn new(d: usize, rays: Vec<Vec<i64>>, strata: Vec<Vec<usize>>) -> Self {
        let n = rays.len();
        assert!(n <= MAX_RAYS, "at most {MAX_RAYS} rays supported");
        let f = IMat::from_columns(
            rays.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect(),
        );
        assert_eq!(f.nrows(), d);
        let strata = strata
            .iter()
            .map(|s| Stratum::from_indices(&s.iter().map(|&i| i - 1).collect::<Vec<_>>()))
            .collect();
        FanData { n, d, f, strata, closure_completed: false }
    }

    /// Ray `i` as a column vector in `N`.
    pub fn ray(&self, i: usize) -> Vec<Int> {
        self.f.column(i)
    }

    /// The ray map restricted to the columns of a stratum.
    pub fn ray_submatrix(&self, s: Stratum) -> IMat {
        self.f.select_columns(&s.indices())
    }

    /// Rank of the cone spanned by the rays of `s`.
    pub fn cone_dim(&self, s: Stratum) -> usize {
        if s.is_empty() {
            0
        } else {
            smith_normal_form(&self.ray_submatrix(s)).rank()
        }
    }

    /// Inclusion-maximal strata.
    pub fn maximal_strata(&self) -> Vec<Stratum> {
        self.strata
            .iter()
            .filter(|s| !self.strata.iter().any(|t| *s != t && s.is_subset(t)))
            .copied()
            .collect()
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidFan(report.to_string()))
        }
    }
}

/// Checks every fan-data condition and reports all violations with
/// witnesses.  Deterministic and independent of the strata listing order.
pub fn validate(fd: &FanData) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !fd.strata.contains(&Stratum::empty()) {
        report.violations.push(Violation::MissingEmptyStratum);
    }
    for i in 0..fd.n {
        if !fd.strata.contains(&Stratum::singleton(i)) {
            report.violations.push(Violation::MissingSingleton { ray: i });
        }
        if fd.ray(i).iter().all(|x| x.is_zero()) {
            report.violations.push(Violation::ZeroRay { ray: i });
        }
    }
    for s in &fd.strata {
        for face in required_faces(fd, *s) {
            if !fd.strata.contains(&face) {
                report
                    .violations
                    .push(Violation::NotDownwardClosed { stratum: *s, missing: face });
            }
        }
    }
    let rank = smith_normal_form(&fd.f).rank();
    if rank < fd.d {
        report.violations.push(Violation::RankDeficient { rank, expected: fd.d });
    }
    let strata: Vec<Stratum> = fd.strata.iter().copied().collect();
    for (a, s) in strata.iter().enumerate() {
        for t in strata.iter().skip(a + 1) {
            if let Some(witness) = relint_common_point(fd, *s, *t) {
                report.violations.push(Violation::RelintOverlap { s: *s, t: *t, witness });
            }
        }
    }
    report
}

/// The sub-strata a listed stratum forces into the fan: those cut out of
/// its image cone by a supporting functional.  For a simplicial stratum
/// this is every subset; for a non-simplicial one only the honest faces
/// (demanding every subset would make its interior collide with the
/// interiors of non-face sub-cones).
pub fn required_faces(fd: &FanData, s: Stratum) -> Vec<Stratum> {
    let ix = s.indices();
    if fd.cone_dim(s) == s.len() {
        // simplicial: every coordinate sub-stratum is a face
        let mut subs = Vec::new();
        let mut m = s.0;
        loop {
            m = m.wrapping_sub(1) & s.0;
            subs.push(Stratum(m));
            if m == 0 {
                break;
            }
        }
        return subs;
    }
    let mut faces = Vec::new();
    for mask in 0u32..(1u32 << ix.len()) {
        let t = Stratum(ix.iter().enumerate().fold(0, |acc, (k, &i)| {
            if mask & (1 << k) != 0 {
                acc | (1 << i)
            } else {
                acc
            }
        }));
        if t == s {
            continue;
        }
        // is there w with <w, ray_i> = 0 on t and >= 1 on s \ t?
        let mut sys = LinearSystem::<Rat>::new(fd.d);
        for i in t.indices() {
            sys.eq(
                (0..fd.d).map(|r| Rat::from_integer(fd.f[(r, i)].clone())).collect(),
                Rat::zero(),
            );
        }
        for i in ix.iter().filter(|i| !t.contains(**i)) {
            sys.ge(
                (0..fd.d).map(|r| Rat::from_integer(fd.f[(r, *i)].clone())).collect(),
                Rat::one(),
            );
        }
        if sys.feasible().is_some() {
            faces.push(t);
        }
    }
    faces
}

/// A common point of the two image interiors, if any.  Feasibility of
/// `f(lambda . 1_S) = f(mu . 1_T)` with all coefficients `>= 1` is exact;
/// scale invariance of interiors turns strict positivity into these bounds.
pub fn relint_common_point(fd: &FanData, s: Stratum, t: Stratum) -> Option<Vec<Rat>> {
    let si = s.indices();
    let ti = t.indices();
    let nvars = si.len() + ti.len();
    let mut sys = LinearSystem::<Rat>::new(nvars);
    for row in 0..fd.d {
        let mut coeffs = vec![Rat::zero(); nvars];
        for (k, &i) in si.iter().enumerate() {
            coeffs[k] = Rat::from_integer(fd.f[(row, i)].clone());
        }
        for (k, &j) in ti.iter().enumerate() {
            coeffs[si.len() + k] = -Rat::from_integer(fd.f[(row, j)].clone());
        }
        sys.eq(coeffs, Rat::zero());
    }
    for v in 0..nvars {
        sys.bound(v, Rat::one());
    }
    let x = sys.feasible()?;
    let point: Vec<Rat> = (0..fd.d)
        .map(|row| {
            si.iter()
                .enumerate()
                .map(|(k, &i)| Rat::from_integer(fd.f[(row, i)].clone()) * x[k].clone())
                .sum()
        })
        .collect();
    Some(point)
}

/// Whether the image interiors of two strata are disjoint.
pub fn relint_disjoint(fd: &FanData, s: Stratum, t: Stratum) -> bool {
    relint_common_point(fd, s, t).is_none()
}

/// A fan is simplicial when every stratum maps bijectively onto its cone.
pub fn is_simplicial(fd: &FanData) -> Result<bool> {
    fd.require_valid()?;
    Ok(fd.strata.iter().all(|s| fd.cone_dim(*s) == s.len()))
}

/// The irrelevant locus: coordinate subspaces `V(S) = {x_i = 0, i in S}`
/// for the minimal non-strata `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrelevantLocus {
    pub components: BTreeSet<Stratum>,
}

impl fmt::Display for IrrelevantLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "Z = (empty)");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|s| {
                let vars: Vec<String> = s.one_based().iter().map(|i| format!("x{i}")).collect();
                format!("V({})", vars.join(","))
            })
            .collect();
        write!(f, "Z = {}", parts.join(" u "))
    }
}

/// Minimal non-strata, i.e. the maximal coordinate subspaces of `Z`.
pub fn irrelevant_locus(fd: &FanData) -> Result<IrrelevantLocus> {
    fd.require_valid()?;
    let mut components = BTreeSet::new();
    for mask in 0u32..(1 << fd.n) {
        let s = Stratum(mask);
        if fd.strata.contains(&s) {
            continue;
        }
        let minimal = s.indices().iter().all(|&i| fd.strata.contains(&s.without(i)));
        if minimal {
            components.insert(s);
        }
    }
    Ok(IrrelevantLocus { components })
}

// ---------------------------------------------------------------------------
// fan file format

#[derive(Serialize, Deserialize)]
struct FanWire {
    n: usize,
    d: usize,
    rays: Vec<Vec<i64>>,
    strata: Vec<Vec<usize>>,
}

/// Parses the fan file format, completing the downward closure if the file
/// omitted implied faces.
pub fn fan_from_json(text: &str) -> Result<FanData> {
    let wire: FanWire = serde_json::from_str(text)?;
    if wire.rays.len() != wire.n {
        return Err(Error::InvalidFan(format!(
            "file lists {} rays but declares n = {}",
            wire.rays.len(),
            wire.n
        )));
    }
    if wire.n > MAX_RAYS {
        return Err(Error::InvalidFan(format!("n = {} exceeds the cap {MAX_RAYS}", wire.n)));
    }
    if wire.rays.iter().any(|r| r.len() != wire.d) {
        return Err(Error::InvalidFan("every ray needs exactly d coordinates".into()));
    }
    for s in wire.strata.iter().flatten() {
        if *s == 0 || *s > wire.n {
            return Err(Error::InvalidFan(format!(
                "stratum index {s} out of range 1..={}",
                wire.n
            )));
        }
    }
    let mut fd = FanData::new(wire.d, wire.rays, wire.strata);
    let listed = fd.strata.clone();
    // complete the face closure to a fixpoint
    loop {
        let mut grew = false;
        for s in fd.strata.clone() {
            for face in required_faces(&fd, s) {
                if fd.strata.insert(face) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    fd.closure_completed = fd.strata != listed;
    Ok(fd)
}

pub fn fan_to_json(fd: &FanData) -> String {
    let wire = FanWire {
        n: fd.n,
        d: fd.d,
        rays: (0..fd.n)
            .map(|i| fd.ray(i).iter().map(|x| i64::try_from(x).expect("small ray")).collect())
            .collect(),
        strata: fd.strata.iter().map(|s| s.one_based()).collect(),
    };
    serde_json::to_string_pretty(&wire).expect("serializable")
}

pub fn load_fan(path: &std::path::Path) -> Result<FanData> {
    fan_from_json(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// standard fans

/// Construction names for the golden corpus.
#[derive(Clone, Debug)]
pub enum StandardFan {
    Affine(usize),
    Projective(usize),
    WeightedProjective(Vec<i64>),
    Hirzebruch(i64),
    Product(Box<StandardFan>, Box<StandardFan>),
    P2MinusVertex,
    ConeOverSquare,
}

fn all_proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n) - 1).map(|m| Stratum(m).one_based()).collect()
}

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).map(|m| Stratum(m).one_based()).collect()
}

/// Builds and validates one of the named fans.
pub fn standard_fan(which: &StandardFan) -> Result<FanData> {
    let fd = match which {
        StandardFan::Affine(n) => {
            let rays =
                (0..*n).map(|i| (0..*n).map(|j| i64::from(i == j)).collect()).collect();
            FanData::new(*n, rays, all_subsets(*n))
        }
        StandardFan::Projective(n) => {
            let mut rays: Vec<Vec<i64>> =
                (0..*n).map(|i| (0..*n).map(|j| i64::from(i == j)).collect()).collect();
            rays.push(vec![-1; *n]);
            FanData::new(*n, rays, all_proper_subsets(*n + 1))
        }
        StandardFan::WeightedProjective(w) => {
            if w.len() < 2 || w.iter().any(|&x| x <= 0) {
                return Err(Error::UnknownName(format!("weighted_projective{w:?}")));
            }
            // rays = rows of a kernel basis of the weight row, so the single
            // relation among them is the weight vector itself
            let weights = IMat::from_i64(1, w.len(), w);
            let kernel = crate::lattice::kernel_basis(&weights);
            let f = kernel.transpose();
            let rays = (0..f.ncols())
                .map(|j| f.column(j).iter().map(|x| i64::try_from(x).expect("small")).collect())
                .collect();
            FanData::new(w.len() - 1, rays, all_proper_subsets(w.len()))
        }
        StandardFan::Hirzebruch(a) => {
            let rays = vec![vec![1, 0], vec![0, 1], vec![-1, *a], vec![0, -1]];
            let strata = vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![1, 4],
            ];
            FanData::new(2, rays, strata)
        }
        StandardFan::Product(a, b) => {
            let fa = standard_fan(a)?;
            let fb = standard_fan(b)?;
            let f = fa.f.block_diag(&fb.f);
            let mut strata = BTreeSet::new();
            for sa in &fa.strata {
                for sb in &fb.strata {
                    strata.insert(Stratum(sa.0 | (sb.0 << fa.n)));
                }
            }
            FanData { n: fa.n + fb.n, d: fa.d + fb.d, f, strata, closure_completed: false }
        }
        StandardFan::P2MinusVertex => {
            let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
            let strata = vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3]];
            FanData::new(2, rays, strata)
        }
        StandardFan::ConeOverSquare => {
            let rays = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
            let strata = vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 2],
                vec![1, 3],
                vec![2, 4],
                vec![3, 4],
                vec![1, 2, 3, 4],
            ];
            FanData::new(3, rays, strata)
        }
    };
    fd.require_valid()?;
    Ok(fd)
}

/// Parses names like `projective(2)`, `weighted_projective(1,1,2)`,
/// `product(projective(1),projective(1))`.
pub fn parse_standard_name(name: &str) -> Result<StandardFan> {
    let name = name.trim();
    let unknown = || Error::UnknownName(name.to_string());
    if name == "p2_minus_vertex" {
        return Ok(StandardFan::P2MinusVertex);
    }
    if name == "cone_over_square" {
        return Ok(StandardFan::ConeOverSquare);
    }
    let (head, args) = name.split_once('(').ok_or_else(unknown)?;
    let args = args.strip_suffix(')').ok_or_else(unknown)?;
    match head {
        "affine" => Ok(StandardFan::Affine(args.parse().map_err(|_| unknown())?)),
        "projective" => Ok(StandardFan::Projective(args.parse().map_err(|_| unknown())?)),
        "weighted_projective" => {
            let ws: std::result::Result<Vec<i64>, _> =
                args.split(',').map(|a| a.trim().parse()).collect();
            Ok(StandardFan::WeightedProjective(ws.map_err(|_| unknown())?))
        }
        "hirzebruch" => Ok(StandardFan::Hirzebruch(args.parse().map_err(|_| unknown())?)),
        "product" => {
            // split at the comma balancing parentheses
            let mut depth = 0usize;
            let mut split = None;
            for (k, c) in args.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        split = Some(k);
                        break;
                    }
                    _ => {}
                }
            }
            let k = split.ok_or_else(unknown)?;
            Ok(StandardFan::Product(
                Box::new(parse_standard_name(&args[..k])?),
                Box::new(parse_standard_name(&args[k + 1..])?),
            ))
        }
        _ => Err(unknown()),
    }
}

// ---------------------------------------------------------------------------
// random valid fan data, used by the equivalence property suites

use rand::Rng;

/// Generates valid fan data by sampling rays and greedily inserting strata
/// that keep all image interiors disjoint.
pub fn random_valid_fan<R: Rng>(rng: &mut R, max_n: usize, max_d: usize) -> FanData {
    loop {
        let d = rng.gen_range(1..=max_d);
        let n = rng.gen_range(d..=max_n.max(d));
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut attempts = 0;
        while rays.len() < n && attempts < 200 {
            attempts += 1;
            let cand: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            if cand.iter().all(|&x| x == 0) {
                continue;
            }
            // no positively parallel duplicate: its interior would coincide
            let parallel = rays.iter().any(|r| {
                let cross_zero =
                    (0..d).all(|i| (0..d).all(|j| r[i] * cand[j] == r[j] * cand[i]));
                let dot: i64 = (0..d).map(|i| r[i] * cand[i]).sum();
                cross_zero && dot > 0
            });
            if !parallel {
                rays.push(cand);
            }
        }
        if rays.len() < n {
            continue;
        }
        let f = IMat::from_columns(
            rays.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
        );
        if smith_normal_form(&f).rank() < d {
            continue;
        }
        let mut fd = FanData {
            n,
            d,
            f,
            strata: (0..n).map(Stratum::singleton).chain([Stratum::empty()]).collect(),
            closure_completed: false,
        };
        if !validate(&fd).is_valid() {
            continue;
        }
        // candidate bigger strata in random order, kept when compatible
        let mut candidates: Vec<Stratum> =
            (0u32..(1 << n)).map(Stratum).filter(|s| s.len() >= 2).collect();
        for i in (1..candidates.len()).rev() {
            candidates.swap(i, rng.gen_range(0..=i));
        }
        for s in candidates {
            if !required_faces(&fd, s).iter().all(|t| fd.strata.contains(t)) {
                continue;
            }
            if fd.strata.iter().all(|t| relint_disjoint(&fd, s, *t)) {
                fd.strata.insert(s);
            }
        }
        debug_assert!(validate(&fd).is_valid());
        return fd;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p2() -> FanData {
        standard_fan(&StandardFan::Projective(2)).unwrap()
    }

    #[test]
    fn p2_is_valid_and_simplicial() {
        let fd = p2();
        assert!(validate(&fd).is_valid());
        assert!(is_simplicial(&fd).unwrap());
        assert_eq!(fd.strata.len(), 7);
    }

    #[test]
    fn full_stratum_on_p2_overlaps() {
        let mut fd = p2();
        fd.strata.insert(Stratum::from_indices(&[0, 1, 2]));
        let report = validate(&fd);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::RelintOverlap { .. })));
    }

    #[test]
    fn affine_line_is_valid() {
        let fd = standard_fan(&StandardFan::Affine(1)).unwrap();
        assert!(validate(&fd).is_valid());
        assert!(is_simplicial(&fd).unwrap());
    }

    #[test]
    fn relint_pairs_on_p2() {
        let fd = p2();
        assert!(relint_disjoint(&fd, Stratum::singleton(0), Stratum::singleton(1)));
        assert!(!relint_disjoint(&fd, Stratum::singleton(0), Stratum::singleton(0)));
    }

    #[test]
    fn duplicated_ray_is_caught() {
        let fd =
            FanData::new(2, vec![vec![1, 0], vec![1, 0]], vec![vec![], vec![1], vec![2]]);
        assert!(!relint_disjoint(&fd, Stratum::singleton(0), Stratum::singleton(1)));
        assert!(!validate(&fd).is_valid());
    }

    #[test]
    fn cone_over_square_is_valid_but_not_simplicial() {
        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        assert!(validate(&fd).is_valid());
        assert!(!is_simplicial(&fd).unwrap());
    }

    #[test]
    fn affine_fans_are_simplicial() {
        let fd = standard_fan(&StandardFan::Affine(3)).unwrap();
        assert!(is_simplicial(&fd).unwrap());
    }

    #[test]
    fn irrelevant_locus_examples() {
        let fd = p2();
        let z = irrelevant_locus(&fd).unwrap();
        assert_eq!(
            z.components.into_iter().collect::<Vec<_>>(),
            vec![Stratum::from_indices(&[0, 1, 2])]
        );

        let fd = standard_fan(&StandardFan::P2MinusVertex).unwrap();
        let z = irrelevant_locus(&fd).unwrap();
        assert_eq!(format!("{}", z), "Z = V(x2,x3)");

        let fd = standard_fan(&StandardFan::Affine(3)).unwrap();
        assert!(irrelevant_locus(&fd).unwrap().components.is_empty());
    }

    #[test]
    fn minimal_nonfaces_match_brute_force() {
        let fd = standard_fan(&StandardFan::Hirzebruch(1)).unwrap();
        let z = irrelevant_locus(&fd).unwrap();
        for mask in 0u32..(1 << fd.n) {
            let s = Stratum(mask);
            let is_nonface = !fd.strata.contains(&s);
            let all_faces_below =
                s.indices().iter().all(|&i| fd.strata.contains(&s.without(i)));
            assert_eq!(z.components.contains(&s), is_nonface && all_faces_below);
        }
    }

    #[test]
    fn projective_line_fan_shape() {
        let fd = standard_fan(&StandardFan::Projective(1)).unwrap();
        assert_eq!((fd.n, fd.d), (2, 1));
        assert_eq!(fd.f, IMat::from_i64(1, 2, &[1, -1]));
        assert_eq!(fd.strata.len(), 3);
        let z = irrelevant_locus(&fd).unwrap();
        assert_eq!(format!("{z}"), "Z = V(x1,x2)");
    }

    #[test]
    fn hirzebruch_is_valid_simplicial() {
        let fd = standard_fan(&StandardFan::Hirzebruch(1)).unwrap();
        assert!(validate(&fd).is_valid());
        assert!(is_simplicial(&fd).unwrap());
    }

    #[test]
    fn weighted_projective_112() {
        let fd = standard_fan(&StandardFan::WeightedProjective(vec![1, 1, 2])).unwrap();
        assert!(validate(&fd).is_valid());
        // the weight relation holds among the rays
        let w = [1, 1, 2];
        for row in 0..fd.d {
            let sum: Int = (0..3).map(|i| fd.f[(row, i)].clone() * Int::from(w[i])).sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn json_roundtrip_and_closure_completion() {
        let text = r#"{"n":3,"d":2,"rays":[[1,0],[0,1],[-1,-1]],
                       "strata":[[1,2],[1,3],[2,3]]}"#;
        let fd = fan_from_json(text).unwrap();
        assert!(fd.closure_completed);
        assert_eq!(fd.strata.len(), 7);
        assert!(validate(&fd).is_valid());
        let back = fan_from_json(&fan_to_json(&fd)).unwrap();
        assert_eq!(back.strata, fd.strata);
        assert!(!back.closure_completed);
    }

    #[test]
    fn name_parsing() {
        assert!(standard_fan(&parse_standard_name("projective(2)").unwrap()).is_ok());
        assert!(standard_fan(
            &parse_standard_name("product(projective(1),projective(1))").unwrap()
        )
        .is_ok());
        assert!(matches!(parse_standard_name("nonsense(3)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn validation_is_order_independent() {
        let fd = p2();
        let r1 = validate(&fd);
        let mut fd2 = fd.clone();
        fd2.strata = fd.strata.iter().rev().copied().collect();
        let r2 = validate(&fd2);
        assert_eq!(r1.is_valid(), r2.is_valid());
    }

    #[test]
    fn random_fans_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let fd = random_valid_fan(&mut rng, 5, 3);
            assert!(validate(&fd).is_valid());
        }
    }
}
