//! Rational cones, half-open cones with polyhedral models, polytopes and
//! their normal fans, triangulations, and lattice-point generating functions.
//!
//! A half-open cone is cut out of the nonnegative orthant by weak
//! (`>= 0`) and strict (`> 0`) integer constraints. Every emptiness or
//! witness query factors through its polyhedral model, obtained by replacing
//! each strict constraint with `>= 1`; the model has the same lattice points
//! as the cone.

pub mod dd;
pub mod faces;
pub mod genfun;
pub mod lp;

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_traits::{Signed, Zero};
use once_cell::race::OnceBox;

use crate::arith::{
    dot_int, dot_int_i64, int_vec, primitive_int, rank_int, smith_normal_form,
};
use crate::{Int, Rat};

pub use dd::{double_description, DdResult};
pub use faces::{face_lattice, FaceLattice};
pub use genfun::{generating_function, substitute_monomial, GeneratingFunction, GfTerm};
pub use lp::Constraint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyhedraError {
    EmptyCone,
    DimensionMismatch,
    BadFirstColumn,
    EmptyPointSet,
}

impl core::fmt::Display for PolyhedraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolyhedraError::EmptyCone => write!(f, "operation requires a nonempty cone"),
            PolyhedraError::DimensionMismatch => write!(f, "ambient dimensions differ"),
            PolyhedraError::BadFirstColumn => {
                write!(f, "substitution matrix must have an all-ones first column")
            }
            PolyhedraError::EmptyPointSet => write!(f, "polytope needs at least one point"),
        }
    }
}

impl core::error::Error for PolyhedraError {}

/// A closed rational polyhedral cone, described by generators.
///
/// `lineality` vectors may be used with both signs; `rays` only
/// nonnegatively. Both lists are primitive, deduplicated, and sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    n: usize,
    lineality: Vec<Vec<Int>>,
    rays: Vec<Vec<Int>>,
}

impl Cone {
    pub fn from_rays(n: usize, rays: Vec<Vec<Int>>) -> Cone {
        let set: BTreeSet<Vec<Int>> = rays
            .into_iter()
            .map(primitive_int)
            .filter(|r| !crate::arith::is_zero_vec(r))
            .collect();
        Cone {
            n,
            lineality: Vec::new(),
            rays: set.into_iter().collect(),
        }
    }

    /// Cone `{x : <a, x> >= 0 for all rows a}` via double description.
    pub fn from_constraints(n: usize, rows: &[Vec<Int>]) -> Cone {
        let r = double_description(rows, n);
        Cone {
            n,
            lineality: r.lineality,
            rays: r.rays,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut gens = self.lineality.clone();
        gens.extend(self.rays.iter().cloned());
        rank_int(&gens)
    }

    /// Facet description `{x : <r, x> >= 0, <l, x> = 0}` of this cone:
    /// returns (inequality normals, equation normals).
    pub fn constraints(&self) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let dual = double_description(&gens, self.n);
        (dual.rays, dual.lineality)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let (ineqs, eqs) = self.constraints();
        ineqs.iter().all(|a| !dot_int(a, v).is_negative())
            && eqs.iter().all(|a| dot_int(a, v).is_zero())
    }
}

/// A simplicial cone: linearly independent primitive rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplicialCone {
    n: usize,
    rays: Vec<Vec<Int>>,
}

impl SimplicialCone {
    pub fn new(n: usize, rays: Vec<Vec<Int>>) -> SimplicialCone {
        debug_assert_eq!(rank_int(&rays), rays.len(), "rays must be independent");
        SimplicialCone {
            n,
            rays: rays.into_iter().map(primitive_int).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    /// Lattice index of the ray span: the number of lattice points in the
    /// half-open fundamental parallelepiped. Product of the Smith invariant
    /// factors of the ray matrix.
    pub fn index(&self) -> Int {
        if self.rays.is_empty() {
            return Int::from(1);
        }
        let snf = smith_normal_form(&self.rays);
        let mut prod = Int::from(1);
        for d in &snf.diag {
            debug_assert!(!d.is_zero());
            prod *= d;
        }
        prod
    }
}

/// All lattice points in `{sum a_i rays_i : 0 <= a_i < 1}`.
pub fn parallelepiped_points(sigma: &SimplicialCone) -> Vec<Vec<Int>> {
    genfun::parallelepiped_points_half_open(sigma.ambient_dim(), sigma.rays(), &[])
}

/// A polyhedron `{x >= 0 componentwise-free : <a, x> >= rhs}` standing in for
/// a half-open cone; same lattice points as the cone it models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralModel {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Default)]
struct HocCaches {
    witness: OnceBox<Option<Vec<Rat>>>,
    closure: OnceBox<Vec<Vec<Int>>>,
}

/// A half-open rational cone inside the nonnegative orthant.
///
/// Stored as canonicalized weak and strict constraint lists; the orthant
/// inequalities are always part of the weak list. Emptiness, witness points,
/// and the closure are memoized (shared across clones).
#[derive(Clone, Debug)]
pub struct HalfOpenCone {
    n: usize,
    weak: Vec<Vec<Int>>,
    strict: Vec<Vec<Int>>,
    caches: Arc<HocCaches>,
}

impl PartialEq for HalfOpenCone {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.weak == other.weak && self.strict == other.strict
    }
}

impl Eq for HalfOpenCone {}

impl PartialOrd for HalfOpenCone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfOpenCone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.weak, &self.strict).cmp(&(other.n, &other.weak, &other.strict))
    }
}

impl HalfOpenCone {
    /// Builds a half-open cone from raw constraint lists; the orthant rows
    /// are added automatically and everything is canonicalized.
    pub fn new(n: usize, weak: Vec<Vec<Int>>, strict: Vec<Vec<Int>>) -> HalfOpenCone {
        let mut wset: BTreeSet<Vec<Int>> = BTreeSet::new();
        for i in 0..n {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::from(1);
            wset.insert(e);
        }
        for w in weak {
            debug_assert_eq!(w.len(), n);
            let w = primitive_int(w);
            if !crate::arith::is_zero_vec(&w) {
                wset.insert(w);
            }
        }
        // A zero strict row (0 > 0) is kept: it canonically marks emptiness.
        let sset: BTreeSet<Vec<Int>> = strict
            .into_iter()
            .map(|s| {
                debug_assert_eq!(s.len(), n);
                primitive_int(s)
            })
            .collect();
        for s in &sset {
            wset.remove(s);
        }
        HalfOpenCone {
            n,
            weak: wset.into_iter().collect(),
            strict: sset.into_iter().collect(),
            caches: Arc::new(HocCaches::default()),
        }
    }

    pub fn orthant(n: usize) -> HalfOpenCone {
        HalfOpenCone::new(n, Vec::new(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn weak(&self) -> &[Vec<Int>] {
        &self.weak
    }

    pub fn strict(&self) -> &[Vec<Int>] {
        &self.strict
    }

    pub fn with_weak(&self, v: Vec<Int>) -> HalfOpenCone {
        let mut weak = self.weak.clone();
        weak.push(v);
        HalfOpenCone::new(self.n, weak, self.strict.clone())
    }

    pub fn with_strict(&self, v: Vec<Int>) -> HalfOpenCone {
        let mut strict = self.strict.clone();
        strict.push(v);
        HalfOpenCone::new(self.n, self.weak.clone(), strict)
    }

    /// Adds the equality `<v, x> = 0` as a pair of weak constraints.
    pub fn with_equality(&self, v: Vec<Int>) -> HalfOpenCone {
        let mut weak = self.weak.clone();
        weak.push(v.iter().map(|x| -x).collect());
        weak.push(v);
        HalfOpenCone::new(self.n, weak, self.strict.clone())
    }

    /// The polyhedral model: strict constraints become `>= 1`.
    pub fn model(&self) -> PolyhedralModel {
        let mut constraints: Vec<Constraint> = self
            .weak
            .iter()
            .map(|w| Constraint {
                normal: w.clone(),
                rhs: Int::zero(),
            })
            .collect();
        constraints.extend(self.strict.iter().map(|s| Constraint {
            normal: s.clone(),
            rhs: Int::from(1),
        }));
        PolyhedralModel {
            n: self.n,
            constraints,
        }
    }

    /// A rational point of the model (hence of the cone), if any.
    pub fn witness(&self) -> Option<&Vec<Rat>> {
        self.caches
            .witness
            .get_or_init(|| Box::new(lp::feasible_point(&self.model().constraints, self.n)))
            .as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.witness().is_none()
    }

    /// Exact membership test for a lattice (or rational) point.
    pub fn contains_point(&self, x: &[Rat]) -> bool {
        debug_assert_eq!(x.len(), self.n);
        self.weak
            .iter()
            .all(|w| !crate::arith::dot_rat_int(x, w).is_negative())
            && self
                .strict
                .iter()
                .all(|s| crate::arith::dot_rat_int(x, s).is_positive())
    }

    pub fn contains_lattice_point(&self, x: &[i64]) -> bool {
        self.weak.iter().all(|w| !dot_int_i64(w, x).is_negative())
            && self.strict.iter().all(|s| dot_int_i64(s, x).is_positive())
    }

    /// Intersection: union of the constraint lists.
    pub fn intersect(&self, other: &HalfOpenCone) -> Result<HalfOpenCone, PolyhedraError> {
        if self.n != other.n {
            return Err(PolyhedraError::DimensionMismatch);
        }
        let mut weak = self.weak.clone();
        weak.extend(other.weak.iter().cloned());
        let mut strict = self.strict.clone();
        strict.extend(other.strict.iter().cloned());
        Ok(HalfOpenCone::new(self.n, weak, strict))
    }

    /// Generators of the topological closure, the smallest closed cone
    /// containing the model: vertex directions plus recession rays of the
    /// model, read off from the homogenization.
    pub fn closure_rays(&self) -> Result<&[Vec<Int>], PolyhedraError> {
        if self.is_empty() {
            return Err(PolyhedraError::EmptyCone);
        }
        Ok(self.caches.closure.get_or_init(|| {
            // Homogenize: variables (t, x); t >= 0, weak rows unchanged,
            // strict rows become <s, x> - t >= 0.
            let mut rows: Vec<Vec<Int>> = Vec::with_capacity(1 + self.weak.len() + self.strict.len());
            let mut t_row = vec![Int::zero(); self.n + 1];
            t_row[0] = Int::from(1);
            rows.push(t_row);
            for w in &self.weak {
                let mut row = vec![Int::zero()];
                row.extend(w.iter().cloned());
                rows.push(row);
            }
            for s in &self.strict {
                let mut row = vec![-Int::from(1)];
                row.extend(s.iter().cloned());
                rows.push(row);
            }
            let ddr = double_description(&rows, self.n + 1);
            debug_assert!(ddr.lineality.is_empty());
            let set: BTreeSet<Vec<Int>> = ddr
                .rays
                .into_iter()
                .map(|r| primitive_int(r[1..].to_owned()))
                .filter(|r| !crate::arith::is_zero_vec(r))
                .collect();
            Box::new(set.into_iter().collect::<Vec<_>>())
        }))
    }

    pub fn closure(&self) -> Result<Cone, PolyhedraError> {
        Ok(Cone::from_rays(self.n, self.closure_rays()?.to_vec()))
    }

    /// Dimension of the cone (= dimension of its closure).
    pub fn dim(&self) -> Result<usize, PolyhedraError> {
        Ok(rank_int(self.closure_rays()?))
    }

    /// Whether `<alpha, omega> >= 0` holds for every point of the cone, i.e.
    /// membership of `alpha` in the dual cone of the closure.
    pub fn dual_contains(&self, alpha: &[i64]) -> Result<bool, PolyhedraError> {
        Ok(self
            .closure_rays()?
            .iter()
            .all(|g| !dot_int_i64(g, alpha).is_negative()))
    }
}

/// Spec-shaped free functions over the types above.
pub fn model_of(c0: &HalfOpenCone) -> PolyhedralModel {
    c0.model()
}

pub fn hoc_intersect(
    a: &HalfOpenCone,
    b: &HalfOpenCone,
) -> Result<HalfOpenCone, PolyhedraError> {
    a.intersect(b)
}

pub fn hoc_is_empty(c0: &HalfOpenCone) -> bool {
    c0.is_empty()
}

pub fn hoc_closure(c0: &HalfOpenCone) -> Result<Cone, PolyhedraError> {
    c0.closure()
}

pub fn dual_contains(c0: &HalfOpenCone, alpha: &[i64]) -> Result<bool, PolyhedraError> {
    c0.dual_contains(alpha)
}

/// A lattice polytope, stored as its (deduplicated, sorted) defining point
/// set; the hull is implicit and faces are computed on demand.
#[derive(Clone, Debug)]
pub struct Polytope {
    n: usize,
    points: Vec<Vec<i64>>,
    lattice: Arc<OnceBox<FaceLattice>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.points == other.points
    }
}
impl Eq for Polytope {}

impl Polytope {
    pub fn hull(n: usize, points: Vec<Vec<i64>>) -> Result<Polytope, PolyhedraError> {
        if points.is_empty() {
            return Err(PolyhedraError::EmptyPointSet);
        }
        let set: BTreeSet<Vec<i64>> = points.into_iter().collect();
        Ok(Polytope {
            n,
            points: set.into_iter().collect(),
            lattice: Arc::new(OnceBox::new()),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        let p0 = &self.points[0];
        let diffs: Vec<Vec<Int>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| Int::from(a - b)).collect())
            .collect();
        rank_int(&diffs)
    }

    /// Face lattice of the cone over `(1, p)`; face members are indices into
    /// `points()`, and include non-extreme points lying on the face.
    pub fn face_lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let gens: Vec<Vec<Int>> = self
                .points
                .iter()
                .map(|p| {
                    let mut v = vec![Int::from(1)];
                    v.extend(p.iter().map(|&x| Int::from(x)));
                    v
                })
                .collect();
            Box::new(face_lattice(self.n + 1, &gens))
        })
    }

    /// Indices of the extreme points.
    pub fn vertices(&self) -> Vec<usize> {
        self.face_lattice().extreme().to_vec()
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope, PolyhedraError> {
        if self.n != other.n {
            return Err(PolyhedraError::DimensionMismatch);
        }
        let mut pts = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Polytope::hull(self.n, pts)
    }

    /// Restricts the point set to the extreme points (same hull).
    pub fn pruned(&self) -> Polytope {
        let verts = self.vertices();
        let pts: Vec<Vec<i64>> = verts.iter().map(|&i| self.points[i].clone()).collect();
        Polytope::hull(self.n, pts).expect("vertex set nonempty")
    }

    /// `n! * (n-dimensional volume)`; zero for lower-dimensional polytopes.
    /// Always an integer for lattice polytopes.
    pub fn volume_times_factorial(&self) -> Int {
        let lat = self.face_lattice();
        let cells = lat.pulling_cells();
        let mut total = Int::zero();
        for cell in cells {
            if cell.len() != self.n + 1 {
                continue;
            }
            let p0 = &self.points[cell[0] as usize];
            let mat: Vec<Vec<Int>> = cell[1..]
                .iter()
                .map(|&i| {
                    self.points[i as usize]
                        .iter()
                        .zip(p0)
                        .map(|(a, b)| Int::from(a - b))
                        .collect()
                })
                .collect();
            total += crate::arith::det_int(&mat).abs();
        }
        total
    }
}

/// Enumerates the faces `tau` of `P` whose (half-open encoded) normal cone
/// meets `C0`; pieces partition `C0` by which face of `P` the linear form
/// `<., omega>` is minimized on.
pub fn normal_fan_pieces(
    p: &Polytope,
    c0: &HalfOpenCone,
) -> Result<Vec<(Vec<usize>, HalfOpenCone)>, PolyhedraError> {
    if p.ambient_dim() != c0.ambient_dim() {
        return Err(PolyhedraError::DimensionMismatch);
    }
    if c0.is_empty() {
        return Err(PolyhedraError::EmptyCone);
    }
    let lat = p.face_lattice();
    let mut out = Vec::new();
    for face in lat.faces() {
        let members: Vec<usize> = face.iter().map(|&i| i as usize).collect();
        let beta0 = &p.points[members[0]];
        let mut piece = c0.clone();
        let mut in_face = vec![false; p.points.len()];
        for &i in &members {
            in_face[i] = true;
        }
        for &i in &members[1..] {
            let diff: Vec<Int> = p.points[i]
                .iter()
                .zip(beta0)
                .map(|(a, b)| Int::from(a - b))
                .collect();
            piece = piece.with_equality(diff);
        }
        for (k, pt) in p.points.iter().enumerate() {
            if in_face[k] {
                continue;
            }
            let diff: Vec<Int> = pt.iter().zip(beta0).map(|(a, b)| Int::from(a - b)).collect();
            piece = piece.with_strict(diff);
        }
        if !piece.is_empty() {
            out.push((members, piece));
        }
    }
    Ok(out)
}

/// A linear form minimized on `P` exactly at the given point set: constant
/// on members and strictly larger on every other point. `None` when the set
/// is not a face of `P`. The whole point set yields the zero form.
pub fn face_normal(p: &Polytope, members: &[usize]) -> Option<Vec<Rat>> {
    let n = p.ambient_dim();
    if members.is_empty() {
        return None;
    }
    let base = &p.points[members[0]];
    let mut in_face = vec![false; p.points.len()];
    for &i in members {
        in_face[i] = true;
    }
    // The form is unconstrained in sign, so split it as y+ - y- over 2n
    // nonnegative LP variables.
    let split = |diff: &[Int], rhs: i64| -> Constraint {
        let mut normal: Vec<Int> = diff.to_owned();
        normal.extend(diff.iter().map(|x| -x));
        Constraint {
            normal,
            rhs: Int::from(rhs),
        }
    };
    let mut cons: Vec<Constraint> = Vec::new();
    for &i in &members[1..] {
        let diff: Vec<Int> = p.points[i]
            .iter()
            .zip(base)
            .map(|(a, b)| Int::from(a - b))
            .collect();
        let neg: Vec<Int> = diff.iter().map(|x| -x).collect();
        cons.push(split(&diff, 0));
        cons.push(split(&neg, 0));
    }
    for (k, pt) in p.points.iter().enumerate() {
        if in_face[k] {
            continue;
        }
        let diff: Vec<Int> = pt.iter().zip(base).map(|(a, b)| Int::from(a - b)).collect();
        cons.push(split(&diff, 1));
    }
    let y = lp::feasible_point(&cons, 2 * n)?;
    Some((0..n).map(|j| &y[j] - &y[n + j]).collect())
}

/// Deterministic triangulation of a cone into simplicial cones. Pointed
/// cones get the pulling triangulation over lexicographically sorted rays;
/// lineality is handled by recursively splitting along hyperplanes, which
/// yields an interior-disjoint simplicial cover of the same support.
pub fn triangulate(c: &Cone) -> Vec<SimplicialCone> {
    if c.rays.is_empty() && c.lineality.is_empty() {
        return Vec::new();
    }
    if c.is_pointed() {
        let lat = face_lattice(c.n, &c.rays);
        return lat
            .pulling_cells()
            .iter()
            .map(|cell| {
                SimplicialCone::new(
                    c.n,
                    cell.iter().map(|&i| c.rays[i as usize].clone()).collect(),
                )
            })
            .collect();
    }
    // Split along the first lineality direction.
    let h = c.lineality[0].clone();
    let (ineqs, eqs) = c.constraints();
    let mut base: Vec<Vec<Int>> = ineqs;
    for e in eqs {
        base.push(e.iter().map(|x| -x).collect());
        base.push(e);
    }
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let mut rows = base.clone();
        rows.push(h.iter().map(|x| x * Int::from(sign)).collect());
        let half = Cone::from_constraints(c.n, &rows);
        out.extend(triangulate(&half));
    }
    out.sort();
    out.dedup();
    out
}

/// Smith normal form, re-exported in the (C, D, A) convention with
/// C * B * A = D.
pub fn smith_decomposition(b: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Int>, Vec<Vec<Int>>) {
    let s = smith_normal_form(b);
    (s.u, s.diag, s.v)
}

/// Convenience: half-open cone from i64 rows (tests and input documents).
pub fn hoc_from_i64(n: usize, weak: &[&[i64]], strict: &[&[i64]]) -> HalfOpenCone {
    HalfOpenCone::new(
        n,
        weak.iter().map(|r| int_vec(r)).collect(),
        strict.iter().map(|r| int_vec(r)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn orthant_not_empty() {
        let c = HalfOpenCone::orthant(3);
        assert!(!c.is_empty());
        assert_eq!(c.dim().unwrap(), 3);
        assert!(c.dual_contains(&[1, 2, 3]).unwrap());
        assert!(!c.dual_contains(&[-1, 0, 0]).unwrap());
    }

    #[test]
    fn contradictory_stricts_empty() {
        let c = hoc_from_i64(2, &[], &[&[1, -1], &[-1, 1]]);
        assert!(c.is_empty());
    }

    #[test]
    fn strict_halfline_closure() {
        // {w in Orth^1 : w > 0} has closure Orth^1.
        let c = hoc_from_i64(1, &[], &[&[1]]);
        assert!(!c.is_empty());
        assert_eq!(c.closure_rays().unwrap(), &[int_vec(&[1])]);
    }

    #[test]
    fn wedge_closure() {
        // {w in Orth^2 : w1 > w2} has closure {w1 >= w2 >= 0}.
        let c = hoc_from_i64(2, &[], &[&[1, -1]]);
        let rays = c.closure_rays().unwrap();
        assert_eq!(rays, &[int_vec(&[1, 0]), int_vec(&[1, 1])]);
        assert!(c.dual_contains(&[1, -1]).unwrap());
        assert!(!c.dual_contains(&[-1, 1]).unwrap());
    }

    #[test]
    fn closed_cone_closure_is_itself() {
        let c = hoc_from_i64(2, &[&[1, -1]], &[]);
        let rays = c.closure_rays().unwrap();
        assert_eq!(rays, &[int_vec(&[1, 0]), int_vec(&[1, 1])]);
    }

    #[test]
    fn model_examples() {
        let c = hoc_from_i64(2, &[], &[&[1, -1]]);
        let m = c.model();
        assert!(m
            .constraints
            .iter()
            .any(|cc| cc.normal == int_vec(&[1, -1]) && cc.rhs == Int::one()));
        // Model of a closed cone has all-zero right-hand sides.
        let closed = hoc_from_i64(2, &[&[1, -1]], &[]);
        assert!(closed.model().constraints.iter().all(|cc| cc.rhs.is_zero()));
    }

    #[test]
    fn intersect_and_emptiness() {
        let a = hoc_from_i64(2, &[], &[&[1, -1]]);
        let b = hoc_from_i64(2, &[], &[&[-1, 1]]);
        let c = a.intersect(&b).unwrap();
        assert!(c.is_empty());
        let same = a.intersect(&a).unwrap();
        assert_eq!(same, a);
    }

    #[test]
    fn zero_cone() {
        let c = hoc_from_i64(1, &[&[-1]], &[]);
        assert!(!c.is_empty());
        assert_eq!(c.dim().unwrap(), 0);
        assert!(c.closure_rays().unwrap().is_empty());
    }

    #[test]
    fn zero_strict_row_marks_empty() {
        let c = HalfOpenCone::new(2, vec![], vec![vec![Int::zero(), Int::zero()]]);
        assert!(c.is_empty());
    }

    #[test]
    fn simplicial_index() {
        let unimod = SimplicialCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(unimod.index(), Int::one());
        let s = SimplicialCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[1, 2])]);
        assert_eq!(s.index(), Int::from(2));
    }

    #[test]
    fn parallelepiped_examples() {
        let s = SimplicialCone::new(2, vec![int_vec(&[1, 0]), int_vec(&[1, 2])]);
        let pts = parallelepiped_points(&s);
        assert_eq!(pts, vec![int_vec(&[0, 0]), int_vec(&[1, 1])]);
        let unimod = SimplicialCone::new(3, vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0])]);
        assert_eq!(parallelepiped_points(&unimod), vec![int_vec(&[0, 0, 0])]);
    }

    #[test]
    fn triangulate_orthant_is_itself() {
        let c = Cone::from_rays(3, vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])]);
        let t = triangulate(&c);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].rays().len(), 3);
    }

    #[test]
    fn triangulate_square_cone() {
        // cone((1,0),(1,1),(0,1)) in the plane splits into two cells.
        let c = Cone::from_rays(2, vec![int_vec(&[1, 0]), int_vec(&[1, 1]), int_vec(&[0, 1])]);
        let t = triangulate(&c);
        // (1,1) is not extreme, so the cone is already simplicial.
        assert_eq!(t.len(), 1);
        let c2 = Cone::from_rays(
            3,
            vec![
                int_vec(&[1, 0, 0]),
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 0, 1]),
                int_vec(&[0, 1, 1]),
            ],
        );
        let t2 = triangulate(&c2);
        assert_eq!(t2.len(), 2);
    }

    #[test]
    fn triangulate_with_lineality_covers() {
        // The whole plane: four quadrant-like pieces (or fewer), covering R^2.
        let c = Cone::from_constraints(2, &[]);
        let t = triangulate(&c);
        assert!(!t.is_empty());
        for pt in [[3i64, 5], [-2, 7], [-4, -4], [6, -1], [0, 0]] {
            let inside = t.iter().any(|s| {
                simplicial_contains(s, &int_vec(&pt))
            });
            assert!(inside, "{pt:?} not covered");
        }
    }

    fn simplicial_contains(s: &SimplicialCone, v: &[Int]) -> bool {
        use crate::arith::solve_rat;
        let e = s.rays().len();
        let n = s.ambient_dim();
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..e)
                    .map(|j| Rat::from_integer(s.rays()[j][i].clone()))
                    .collect()
            })
            .collect();
        let b: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        match solve_rat(&m, &b) {
            Some(a) => {
                // solve_rat returns one solution; rays independent => unique
                // on span, but must also verify it reproduces v.
                let mut ok = a.iter().all(|x| !x.is_negative());
                for i in 0..n {
                    let mut acc = Rat::zero();
                    for j in 0..e {
                        acc += &a[j] * Rat::from_integer(s.rays()[j][i].clone());
                    }
                    ok &= acc == b[i];
                }
                ok
            }
            None => false,
        }
    }

    #[test]
    fn normal_fan_of_segment() {
        // conv{(-3,0),(0,-3)} against Orth^2: three pieces.
        let p = Polytope::hull(2, vec![vec![-3, 0], vec![0, -3]]).unwrap();
        let c0 = HalfOpenCone::orthant(2);
        let pieces = normal_fan_pieces(&p, &c0).unwrap();
        assert_eq!(pieces.len(), 3);
        // Pieces partition lattice points of Orth^2 in a small box.
        for x in 0..4i64 {
            for y in 0..4 {
                let hits = pieces
                    .iter()
                    .filter(|(_, c)| c.contains_lattice_point(&[x, y]))
                    .count();
                assert_eq!(hits, 1, "point ({x},{y})");
            }
        }
    }

    #[test]
    fn normal_fan_of_point() {
        let p = Polytope::hull(2, vec![vec![5, 7]]).unwrap();
        let c0 = HalfOpenCone::orthant(2);
        let pieces = normal_fan_pieces(&p, &c0).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].1, c0);
    }

    #[test]
    fn polytope_volume() {
        // Unit square: 2! * 1 = 2.
        let sq = Polytope::hull(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(sq.volume_times_factorial(), Int::from(2));
        // Standard simplex: 1.
        let tri = Polytope::hull(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(tri.volume_times_factorial(), Int::one());
        // Segment in the plane: volume zero.
        let seg = Polytope::hull(2, vec![vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(seg.volume_times_factorial(), Int::zero());
    }

    #[test]
    fn minkowski_sum_points() {
        let a = Polytope::hull(1, vec![vec![0], vec![1]]).unwrap();
        let b = Polytope::hull(1, vec![vec![0], vec![2]]).unwrap();
        let s = a.minkowski_sum(&b).unwrap();
        assert_eq!(s.points(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(s.vertices().len(), 2);
    }

    #[test]
    fn smith_decomposition_convention() {
        let b = vec![int_vec(&[2, 0]), int_vec(&[0, 3])];
        let (c, d, a) = smith_decomposition(&b);
        assert_eq!(d, vec![Int::one(), Int::from(6)]);
        let prod = crate::arith::mat_mul(&crate::arith::mat_mul(&c, &b), &a);
        assert_eq!(prod[0][0], Int::one());
        assert_eq!(prod[1][1], Int::from(6));
        assert!(prod[0][1].is_zero() && prod[1][0].is_zero());
    }
}
