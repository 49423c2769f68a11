//! Conic Lagrangian skeleta attached to fan data: the full skeleton on the
//! `n`-torus, its lift to the cover `R^n / M`, and the symplectic reduction
//! to a fiber torus `A_gamma`.
//!
//! Sign conventions, fixed here and reused by the sheaf engine: the fiber
//! torus `A_gamma` is coordinatized by `u` with `m = f^T u`, so its
//! cotangent fiber is `N tensor R` and the cone attached to a stratum `S`
//! is spanned by the *negatives* of its rays, `-f(e_i)` for `i` in `S`.
//! Upstairs (before reduction) the cone is spanned by `-e_i`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{is_simplicial, FanData, Stratum};
use crate::lattice::{coset_reps, smith_normal_form, solve_congruences};
use crate::lp::LinearSystem;
use crate::{IMat, Int, Rat};

/// An affine subtorus (or affine cylinder, when the ambient lattice has
/// deficient rank): finitely many cosets of a connected direction subgroup.
#[derive(Clone, Debug)]
pub struct AffineSubtorus {
    /// dimension k of the ambient `R^k`
    pub ambient_rank: usize,
    /// basis of the ambient lattice `L`, one column per generator
    pub ambient_lattice: IMat,
    /// saturated basis of the direction of the connected component
    pub direction: IMat,
    /// rational base points, one per coset, each in `[0,1)^k`
    pub cosets: Vec<Vec<Rat>>,
    /// translations generating the free part of the coset family; nonempty
    /// only on non-compact ambients where the family is periodic
    pub periods: Vec<Vec<Int>>,
}

impl AffineSubtorus {
    pub fn dim(&self) -> usize {
        self.direction.ncols()
    }
}

/// One piece of a skeleton: a base subtorus carrying a cone of covectors.
#[derive(Clone, Debug)]
pub struct SkeletonComponent {
    pub stratum: Stratum,
    pub base: AffineSubtorus,
    /// cone generators, one per ray of the stratum
    pub cone: Vec<Vec<Int>>,
}

impl SkeletonComponent {
    pub fn cone_dim(&self) -> usize {
        if self.cone.is_empty() {
            return 0;
        }
        smith_normal_form(&IMat::from_columns(self.cone.clone())).rank()
    }
}

/// A point of `R^n / M_R`, stored as a rational lift in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPoint(pub Vec<Rat>);

impl GammaPoint {
    pub fn zero(n: usize) -> Self {
        GammaPoint(vec![Rat::zero(); n])
    }

    pub fn shifted_by_int(&self, z: &[i64]) -> Self {
        GammaPoint(
            self.0
                .iter()
                .zip(z)
                .map(|(a, b)| a.clone() + Rat::from_integer(Int::from(*b)))
                .collect(),
        )
    }
}

fn coordinate_complement_basis(n: usize, s: Stratum) -> IMat {
    let keep: Vec<usize> = (0..n).filter(|i| !s.contains(*i)).collect();
    IMat::identity(n).select_columns(&keep)
}

fn lambda_z_components(
    n: usize,
    strata: &std::collections::BTreeSet<Stratum>,
) -> Vec<SkeletonComponent> {
    strata
        .iter()
        .map(|s| {
            let cone = s
                .indices()
                .iter()
                .map(|&i| {
                    let mut v = vec![Int::zero(); n];
                    v[i] = -Int::one();
                    v
                })
                .collect();
            SkeletonComponent {
                stratum: *s,
                base: AffineSubtorus {
                    ambient_rank: n,
                    ambient_lattice: IMat::identity(n),
                    direction: coordinate_complement_basis(n, *s),
                    cosets: vec![vec![Rat::zero(); n]],
                    periods: Vec::new(),
                },
                cone,
            }
        })
        .collect()
}

/// The skeleton on `(R/Z)^n`: for each stratum, the coordinate subtorus
/// `{p_i = 0, i in S}` carrying the cone spanned by `{-e_i, i in S}`.
pub fn lambda_z(fd: &FanData) -> Result<Vec<SkeletonComponent>> {
    fd.require_valid()?;
    Ok(lambda_z_components(fd.n, &fd.strata))
}

/// The same skeleton pulled back to the cover `R^n / M`: bases become
/// `{p : <p, e_i> in Z, i in S}`, finitely many cosets per fundamental
/// region with the free directions recorded as periods.
pub fn lambda_zm(fd: &FanData) -> Result<Vec<SkeletonComponent>> {
    fd.require_valid()?;
    let m_basis = fd.f.transpose(); // columns span M inside Z^n
    let out = fd
        .strata
        .iter()
        .map(|s| {
            let ix = s.indices();
            // cosets of the coordinate subtorus are classified by
            // Z^S / proj_S(M)
            let proj: IMat = m_basis.transpose().select_columns(&ix).transpose();
            let reps = coset_reps(&proj);
            let embed = |v: &[Int]| -> Vec<Int> {
                let mut w = vec![Int::zero(); fd.n];
                for (k, &i) in ix.iter().enumerate() {
                    w[i] = v[k].clone();
                }
                w
            };
            let cosets = reps
                .torsion_reps
                .iter()
                .map(|v| embed(v).iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect();
            let periods = reps.free_gens.iter().map(|v| embed(v)).collect();
            let cone = ix
                .iter()
                .map(|&i| {
                    let mut v = vec![Int::zero(); fd.n];
                    v[i] = -Int::one();
                    v
                })
                .collect();
            SkeletonComponent {
                stratum: *s,
                base: AffineSubtorus {
                    ambient_rank: fd.n,
                    ambient_lattice: m_basis.clone(),
                    direction: coordinate_complement_basis(fd.n, *s),
                    cosets,
                    periods,
                },
                cone,
            }
        })
        .collect();
    Ok(out)
}

/// Symplectic reduction of the skeleton at `gamma`, with empty strata
/// logged rather than returned.
#[derive(Clone, Debug)]
pub struct ReducedSkeleton {
    /// components on `A_gamma`, coordinatized as `R^d / Z^d`
    pub components: Vec<SkeletonComponent>,
    /// strata whose base locus is empty at this `gamma`
    pub empty_strata: Vec<Stratum>,
}

impl ReducedSkeleton {
    /// Combinatorial shape: per stratum, base dimension, coset count and
    /// cone dimension.  This is the data compared across `gamma`.
    pub fn signature(&self) -> Vec<(Stratum, usize, usize, usize)> {
        self.components
            .iter()
            .map(|c| (c.stratum, c.base.dim(), c.base.cosets.len(), c.cone_dim()))
            .collect()
    }
}

/// Reduces the skeleton to the fiber over `gamma`.  In the `u`-coordinates
/// of `A_gamma` the base of a stratum solves `f(e_i) . u = -gamma_i (mod Z)`
/// for `i` in `S`, and the cone is spanned by `{-f(e_i)}`.
pub fn reduce(fd: &FanData, gamma: &GammaPoint) -> Result<ReducedSkeleton> {
    fd.require_valid()?;
    assert_eq!(gamma.0.len(), fd.n, "gamma lift must have n coordinates");
    let mut components = Vec::new();
    let mut empty_strata = Vec::new();
    for s in &fd.strata {
        let ix = s.indices();
        let g = fd.ray_submatrix(*s).transpose();
        let target: Vec<Rat> = ix.iter().map(|&i| -gamma.0[i].clone()).collect();
        let fam = solve_congruences(&g, &target);
        if fam.is_empty() {
            empty_strata.push(*s);
            continue;
        }
        let cone = ix.iter().map(|&i| fd.ray(i).iter().map(|x| -x.clone()).collect()).collect();
        components.push(SkeletonComponent {
            stratum: *s,
            base: AffineSubtorus {
                ambient_rank: fd.d,
                ambient_lattice: IMat::identity(fd.d),
                direction: fam.direction,
                cosets: fam.points,
                periods: Vec::new(),
            },
            cone,
        });
    }
    Ok(ReducedSkeleton { components, empty_strata })
}

/// No covector carried by the skeleton over a stratum is pulled back from
/// the base of the fibration.  The covectors over the stratum `S` span the
/// coordinate subspace `R^S`, and pullbacks from the base form the kernel
/// of the ray map, so the test is feasibility of `{z supported on S,
/// f z = 0, z_k = 1}` for some `k`: a witness is a pair of distinct
/// nonnegative combinations of the rays of `S` with the same image
/// (positive and negative parts of `z`).
pub fn is_noncharacteristic(fd: &FanData) -> Result<bool> {
    fd.require_valid()?;
    for s in &fd.strata {
        let ix = s.indices();
        if ix.is_empty() {
            continue;
        }
        for k in 0..ix.len() {
            let mut sys = LinearSystem::<Rat>::new(ix.len());
            for row in 0..fd.d {
                sys.eq(
                    ix.iter().map(|&i| Rat::from_integer(fd.f[(row, i)].clone())).collect(),
                    Rat::zero(),
                );
            }
            let mut pick = vec![Rat::zero(); ix.len()];
            pick[k] = Rat::one();
            sys.eq(pick, Rat::one());
            if sys.feasible().is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every `{p : p_i = 0, i in S}` submerges onto `R^n / M_R`: the span of
/// the complementary coordinates together with `M_R` must be all of `R^n`.
pub fn is_submersive(fd: &FanData) -> Result<bool> {
    fd.require_valid()?;
    let m_basis = fd.f.transpose();
    for s in &fd.strata {
        let stacked = coordinate_complement_basis(fd.n, *s).hstack(&m_basis);
        if smith_normal_form(&stacked).rank() < fd.n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three conditions evaluated independently; they must agree on valid
/// fan data, so a disagreement is flagged as a defect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub simplicial: bool,
    pub noncharacteristic: bool,
    pub submersive: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.simplicial == self.noncharacteristic && self.simplicial == self.submersive
    }
}

pub fn check_equivalence(fd: &FanData) -> Result<EquivalenceReport> {
    Ok(EquivalenceReport {
        simplicial: is_simplicial(fd)?,
        noncharacteristic: is_noncharacteristic(fd)?,
        submersive: is_submersive(fd)?,
    })
}

/// Whether a rational covector lies in the cone spanned by `generators`.
pub fn cone_contains(generators: &[Vec<Int>], point: &[Rat]) -> bool {
    if point.iter().all(|x| x.is_zero()) {
        return true;
    }
    if generators.is_empty() {
        return false;
    }
    let d = point.len();
    let mut sys = LinearSystem::<Rat>::new(generators.len());
    for row in 0..d {
        sys.eq(
            generators.iter().map(|g| Rat::from_integer(g[row].clone())).collect(),
            point[row].clone(),
        );
    }
    for v in 0..generators.len() {
        sys.bound(v, Rat::zero());
    }
    sys.feasible().is_some()
}

// ---------------------------------------------------------------------------
// deterministic SVG rendering of the reduced skeleton (d <= 2)

fn fmt_f(x: f64) -> String {
    // canonical rounding keeps the output reproducible
    format!("{:.3}", (x * 1000.0).round() / 1000.0)
}

fn rat_f(x: &Rat) -> f64 {
    let n: f64 = x.numer().to_string().parse().unwrap_or(0.0);
    let d: f64 = x.denom().to_string().parse().unwrap_or(1.0);
    n / d
}

/// Draws base loci of `reduce(fd, gamma)` on the fundamental domain with a
/// small arrow glyph per cone generator.
pub fn emit_svg(fd: &FanData, gamma: &GammaPoint) -> Result<String> {
    if fd.d > 2 {
        return Err(Error::DimensionTooLarge(fd.d, 2));
    }
    let reduced = reduce(fd, gamma)?;
    let size = 400.0;
    let margin = 40.0;
    let mut svg = String::new();
    let total = size + 2.0 * margin;
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{t}\" height=\"{t}\" viewBox=\"0 0 {t} {t}\">\n",
        t = fmt_f(total)
    );
    if fd.d == 1 {
        emit_circle_diagram(&reduced, size, margin, &mut svg);
    } else {
        emit_square_diagram(&reduced, size, margin, &mut svg);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn emit_circle_diagram(reduced: &ReducedSkeleton, size: f64, margin: f64, svg: &mut String) {
    let c = margin + size / 2.0;
    let r = size / 2.0;
    let _ = write!(
        svg,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt_f(c),
        fmt_f(c),
        fmt_f(r)
    );
    for comp in &reduced.components {
        if comp.base.dim() > 0 {
            continue; // the zero section is the circle itself
        }
        for p in &comp.base.cosets {
            let theta = 2.0 * std::f64::consts::PI * rat_f(&p[0]);
            let (x, y) = (c + r * theta.cos(), c - r * theta.sin());
            let _ = write!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
                fmt_f(x),
                fmt_f(y)
            );
            for g in &comp.cone {
                let sign = if g[0].is_negative() { -1.0 } else { 1.0 };
                // cone rays drawn radially, outward for positive covectors
                let (dx, dy) = (theta.cos() * sign * 20.0, -theta.sin() * sign * 20.0);
                let _ = write!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"red\"/>\n",
                    fmt_f(x),
                    fmt_f(y),
                    fmt_f(x + dx),
                    fmt_f(y + dy)
                );
            }
        }
    }
}

fn emit_square_diagram(reduced: &ReducedSkeleton, size: f64, margin: f64, svg: &mut String) {
    let to_px = |x: f64, y: f64| (margin + x * size, margin + (1.0 - y) * size);
    let (x0, y0) = to_px(0.0, 1.0);
    let _ = write!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt_f(x0),
        fmt_f(y0),
        fmt_f(size),
        fmt_f(size)
    );
    for comp in &reduced.components {
        match comp.base.dim() {
            2 => {} // the zero section is the square itself
            1 => {
                let dir = comp.base.direction.column(0);
                for b in &comp.base.cosets {
                    for (_, _, seg0, seg1) in circle_segments(b, &dir) {
                        let (px0, py0) = to_px(rat_f(&seg0.0), rat_f(&seg0.1));
                        let (px1, py1) = to_px(rat_f(&seg1.0), rat_f(&seg1.1));
                        let _ = write!(
                            svg,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"blue\"/>\n",
                            fmt_f(px0),
                            fmt_f(py0),
                            fmt_f(px1),
                            fmt_f(py1)
                        );
                    }
                    emit_cone_glyphs(&comp.cone, b, size, margin, svg);
                }
            }
            _ => {
                for b in &comp.base.cosets {
                    let (px, py) = to_px(rat_f(&b[0]), rat_f(&b[1]));
                    let _ = write!(
                        svg,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
                        fmt_f(px),
                        fmt_f(py)
                    );
                    emit_cone_glyphs(&comp.cone, b, size, margin, svg);
                }
            }
        }
    }
}

fn emit_cone_glyphs(cone: &[Vec<Int>], base: &[Rat], size: f64, margin: f64, svg: &mut String) {
    let to_px = |x: f64, y: f64| (margin + x * size, margin + (1.0 - y) * size);
    let (px, py) = to_px(rat_f(&base[0]), rat_f(&base[1]));
    for g in cone {
        let gx: f64 = g[0].to_string().parse().unwrap_or(0.0);
        let gy: f64 = g[1].to_string().parse().unwrap_or(0.0);
        let norm = (gx * gx + gy * gy).sqrt().max(1.0);
        let (dx, dy) = (gx / norm * 18.0, -gy / norm * 18.0);
        let _ = write!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"red\"/>\n",
            fmt_f(px),
            fmt_f(py),
            fmt_f(px + dx),
            fmt_f(py + dy)
        );
    }
}

/// Splits the closed geodesic `{b + t dir : t in [0,1)}` into maximal
/// segments inside the fundamental square; returns parameter bounds and
/// exact endpoint pairs.
#[allow(clippy::type_complexity)]
fn circle_segments(b: &[Rat], dir: &[Int]) -> Vec<(Rat, Rat, (Rat, Rat), (Rat, Rat))> {
    // crossing times of either coordinate through an integer
    let mut cuts: Vec<Rat> = vec![Rat::zero(), Rat::one()];
    for k in 0..2 {
        if dir[k].is_zero() {
            continue;
        }
        let d = Rat::from_integer(dir[k].clone());
        let steps: i64 = dir[k].abs().to_string().parse().unwrap_or(0);
        for j in 0..=steps + 1 {
            for sgn in [1i64, -1] {
                let target = b[k].floor() + Rat::from_integer(Int::from(sgn * j));
                let t = (target - b[k].clone()) / d.clone();
                if t > Rat::zero() && t < Rat::one() {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0].clone(), w[1].clone());
        let mid = (t0.clone() + t1.clone()) / Rat::from_integer(Int::from(2));
        let at = |t: &Rat, k: usize| b[k].clone() + t.clone() * Rat::from_integer(dir[k].clone());
        // anchor the segment by the fractional part of its midpoint
        let (wx, wy) = (at(&mid, 0).floor(), at(&mid, 1).floor());
        let p0 = (at(&t0, 0) - wx.clone(), at(&t0, 1) - wy.clone());
        let p1 = (at(&t1, 0) - wx, at(&t1, 1) - wy);
        out.push((t0, t1, p0, p1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{standard_fan, StandardFan};
    use crate::rat;

    fn p1() -> FanData {
        standard_fan(&StandardFan::Projective(1)).unwrap()
    }

    fn p2() -> FanData {
        standard_fan(&StandardFan::Projective(2)).unwrap()
    }

    #[test]
    fn affine_line_skeleton_is_theta() {
        let fd = standard_fan(&StandardFan::Affine(1)).unwrap();
        let comps = lambda_z(&fd).unwrap();
        assert_eq!(comps.len(), 2);
        // zero section
        assert_eq!(comps[0].stratum, Stratum::empty());
        assert_eq!(comps[0].base.dim(), 1);
        assert!(comps[0].cone.is_empty());
        // nonpositive ray over the marked point
        assert_eq!(comps[1].stratum, Stratum::singleton(0));
        assert_eq!(comps[1].base.dim(), 0);
        assert_eq!(comps[1].cone, vec![vec![Int::from(-1)]]);
    }

    #[test]
    fn lambda_z_component_count_is_strata_count() {
        let fd = p2();
        let comps = lambda_z(&fd).unwrap();
        assert_eq!(comps.len(), fd.strata.len());
        // bases pairwise distinct (as direction/coset data)
        for (i, a) in comps.iter().enumerate() {
            for b in comps.iter().skip(i + 1) {
                assert!(a.stratum != b.stratum);
            }
        }
    }

    #[test]
    fn zero_section_only_for_bare_strata_set() {
        let strata = [Stratum::empty()].into_iter().collect();
        let comps = lambda_z_components(2, &strata);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].base.dim(), 2);
    }

    #[test]
    fn lambda_zm_on_p1_cylinder() {
        let fd = p1();
        let comps = lambda_zm(&fd).unwrap();
        // S = {} is the whole cylinder
        assert_eq!(comps[0].base.dim(), 2);
        // S = {1}: one coset, direction e_2, no torsion, no periods
        let c = &comps[1];
        assert_eq!(c.base.cosets.len(), 1);
        assert_eq!(c.base.dim(), 1);
        assert!(c.base.periods.is_empty());
    }

    #[test]
    fn lambda_zm_cone_over_square_top_stratum_is_periodic() {
        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        let comps = lambda_zm(&fd).unwrap();
        let top = comps.iter().find(|c| c.stratum.len() == 4).unwrap();
        // Z^4 / M has free rank one: a translation-periodic coset family
        assert_eq!(top.base.periods.len(), 1);
    }

    #[test]
    fn reduce_p1_at_zero_has_three_components() {
        let fd = p1();
        let red = reduce(&fd, &GammaPoint::zero(2)).unwrap();
        assert!(red.empty_strata.is_empty());
        assert_eq!(red.components.len(), 3);
        let sig = red.signature();
        // zero section (dim 1, cone 0) and two rays over the point 0
        assert_eq!(sig[0].1, 1);
        assert_eq!(sig[0].3, 0);
        for c in &red.components[1..] {
            assert_eq!(c.base.dim(), 0);
            assert_eq!(c.base.cosets, vec![vec![rat(0, 1)]]);
            assert_eq!(c.cone_dim(), 1);
        }
        // opposite rays
        assert_eq!(red.components[1].cone, vec![vec![Int::from(-1)]]);
        assert_eq!(red.components[2].cone, vec![vec![Int::from(1)]]);
    }

    #[test]
    fn reduce_p2_at_zero_matches_expected_dims() {
        let fd = p2();
        let red = reduce(&fd, &GammaPoint::zero(3)).unwrap();
        assert_eq!(red.components.len(), 7);
        let mut base_dims: Vec<usize> = red.components.iter().map(|c| c.base.dim()).collect();
        base_dims.sort_unstable();
        assert_eq!(base_dims, vec![0, 0, 0, 1, 1, 1, 2]);
        let mut cone_dims: Vec<usize> = red.components.iter().map(|c| c.cone_dim()).collect();
        cone_dims.sort_unstable();
        assert_eq!(cone_dims, vec![0, 1, 1, 1, 2, 2, 2]);
        // Lagrangian dimension count
        for c in &red.components {
            assert_eq!(c.base.dim() + c.cone_dim(), fd.d);
        }
    }

    #[test]
    fn gamma_dependence_of_cone_over_square() {
        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        let top = Stratum::from_indices(&[0, 1, 2, 3]);
        let at_zero = reduce(&fd, &GammaPoint::zero(4)).unwrap();
        assert!(at_zero.components.iter().any(|c| c.stratum == top));
        // generic gamma: the top stratum admits no solutions
        let gamma = GammaPoint(vec![rat(1, 5), rat(1, 7), rat(1, 11), rat(1, 13)]);
        let generic = reduce(&fd, &gamma).unwrap();
        assert!(generic.empty_strata.contains(&top));
    }

    #[test]
    fn integral_shifts_give_identical_reductions() {
        let fd = p2();
        let gamma = GammaPoint(vec![rat(1, 3), rat(2, 7), rat(0, 1)]);
        let base = reduce(&fd, &gamma).unwrap();
        for z in [[1, 0, 0], [0, -2, 3], [5, 5, 5]] {
            let shifted = reduce(&fd, &gamma.shifted_by_int(&z)).unwrap();
            assert_eq!(shifted.signature(), base.signature());
            for (a, b) in base.components.iter().zip(&shifted.components) {
                assert_eq!(a.base.cosets, b.base.cosets);
                assert_eq!(a.cone, b.cone);
            }
        }
    }

    #[test]
    fn simplicial_reductions_are_gamma_independent_in_shape() {
        let fd = p2();
        let strip = |sig: Vec<(Stratum, usize, usize, usize)>| {
            sig.into_iter().map(|(s, b, c, k)| (s, b, c, k)).collect::<Vec<_>>()
        };
        let sig0 = strip(reduce(&fd, &GammaPoint::zero(3)).unwrap().signature());
        for k in 1..10i64 {
            let gamma = GammaPoint(vec![rat(k, 17), rat(3 * k, 23), rat(k * k, 29)]);
            let sig = strip(reduce(&fd, &gamma).unwrap().signature());
            assert_eq!(sig, sig0);
        }
    }

    #[test]
    fn equivalence_triple_on_examples() {
        let fd = p2();
        let r = check_equivalence(&fd).unwrap();
        assert_eq!((r.simplicial, r.noncharacteristic, r.submersive), (true, true, true));

        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        let r = check_equivalence(&fd).unwrap();
        assert_eq!((r.simplicial, r.noncharacteristic, r.submersive), (false, false, false));

        let fd = standard_fan(&StandardFan::Affine(3)).unwrap();
        let r = check_equivalence(&fd).unwrap();
        assert!(r.agree() && r.simplicial);
    }

    #[test]
    fn cone_membership() {
        let gens = vec![vec![Int::from(-1), Int::from(0)], vec![Int::from(0), Int::from(-1)]];
        assert!(cone_contains(&gens, &[rat(-1, 2), rat(-1, 3)]));
        assert!(!cone_contains(&gens, &[rat(1, 2), rat(0, 1)]));
        assert!(cone_contains(&gens, &[rat(0, 1), rat(0, 1)]));
        assert!(!cone_contains(&[], &[rat(1, 1)]));
        assert!(cone_contains(&[], &[rat(0, 1)]));
    }

    #[test]
    fn svg_is_deterministic_and_shows_loci() {
        let fd = p2();
        let svg1 = emit_svg(&fd, &GammaPoint::zero(3)).unwrap();
        let svg2 = emit_svg(&fd, &GammaPoint::zero(3)).unwrap();
        assert_eq!(svg1, svg2);
        // three circles drawn as blue line segments, plus the origin marks
        assert!(svg1.matches("stroke=\"blue\"").count() >= 3);
        assert!(svg1.contains("fill=\"black\""));

        let fd = p1();
        let svg = emit_svg(&fd, &GammaPoint::zero(2)).unwrap();
        assert!(svg.contains("<circle"));

        let fd = standard_fan(&StandardFan::ConeOverSquare).unwrap();
        assert!(matches!(
            emit_svg(&fd, &GammaPoint::zero(4)),
            Err(Error::DimensionTooLarge(3, 2))
        ));
    }
}
