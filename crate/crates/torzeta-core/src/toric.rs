//! Toric data and the first-stage transformations: balancing a datum along
//! the normal fan of its Newton polytope, simplification to a weakly
//! equivalent simple datum, regularity testing, and the greedy reduction
//! step used when regularity fails.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{int_vec, smith_normal_form};
use crate::ideals::{jacobian_minors, IdealsError, MonomialOrder, PolyIdeal};
use crate::laurent::{LaurentError, LaurentPolynomial};
use crate::polyhedra::{normal_fan_pieces, HalfOpenCone, Polytope};
use crate::{Exp, Int, Rat};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricError {
    /// An operation requiring a balanced datum received an unbalanced one.
    NotBalanced,
    /// `find_min_singular_subset` or `reduce` was called on a regular datum.
    IsRegular,
    /// Reduction gave up on this datum.
    Fail(FailReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// The minimal singular subset is a singleton; no candidate exists.
    SingletonSubset,
    /// Every piece of the chosen reduction would exceed the depth cap.
    DepthCapExceeded,
}

impl core::fmt::Display for ToricError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ToricError::NotBalanced => write!(f, "toric datum is not balanced"),
            ToricError::IsRegular => write!(f, "toric datum is already regular"),
            ToricError::Fail(FailReason::SingletonSubset) => {
                write!(f, "reduction failed: singular subset is a singleton")
            }
            ToricError::Fail(FailReason::DepthCapExceeded) => {
                write!(f, "reduction failed: depth cap exceeded")
            }
        }
    }
}

impl core::error::Error for ToricError {}

/// A half-open cone inside the nonnegative orthant together with an ordered
/// family of Laurent polynomials. The depth counter records how often
/// reduction failed to decrease the weight along the way here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDatum {
    cone: HalfOpenCone,
    polys: Vec<LaurentPolynomial>,
    depth: u32,
}

impl ToricDatum {
    pub fn new(cone: HalfOpenCone, polys: Vec<LaurentPolynomial>, depth: u32) -> ToricDatum {
        for f in &polys {
            assert_eq!(
                f.num_vars(),
                cone.ambient_dim(),
                "polynomial/cone dimension mismatch"
            );
        }
        ToricDatum { cone, polys, depth }
    }

    pub fn cone(&self) -> &HalfOpenCone {
        &self.cone
    }

    pub fn polys(&self) -> &[LaurentPolynomial] {
        &self.polys
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn num_vars(&self) -> usize {
        self.cone.ambient_dim()
    }

    /// A datum with empty cone contributes nothing.
    pub fn is_trivial(&self) -> bool {
        self.cone.is_empty()
    }
}

/// Initial forms of the nonzero members, paired with their original indices.
pub(crate) fn initial_forms(t: &ToricDatum) -> Result<Vec<(usize, LaurentPolynomial)>, ToricError> {
    let mut out = Vec::new();
    for (i, f) in t.polys.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        match f.initial_form_on_cone(&t.cone) {
            Ok(g) => out.push((i, g)),
            Err(LaurentError::NotBalanced) => return Err(ToricError::NotBalanced),
            Err(e) => unreachable!("initial form on nonempty cone: {:?}", e),
        }
    }
    Ok(out)
}

/// True iff the datum is trivial or every nonzero member has a well-defined
/// initial form across the whole cone; equivalently the cone lies inside a
/// single normal-fan piece of the Newton polytope of the product.
pub fn is_balanced(t: &ToricDatum) -> bool {
    if t.is_trivial() {
        return true;
    }
    initial_forms(t).is_ok()
}

/// Newton polytope of the product of the nonzero members; the empty product
/// has Newton polytope {0}.
fn product_newton(t: &ToricDatum) -> Polytope {
    let n = t.num_vars();
    let mut p = Polytope::hull(n, vec![vec![0; n]]).expect("origin polytope");
    for f in &t.polys {
        if f.is_zero() {
            continue;
        }
        let q = f.newton_polytope().expect("nonzero polynomial");
        p = p.minkowski_sum(&q).expect("same ambient dimension").pruned();
    }
    p
}

/// Partitions the cone along the normal fan of the product Newton polytope.
/// Every returned datum is balanced, the cones are pairwise disjoint, and
/// their union is the input cone. A trivial datum yields no pieces.
pub fn balance(t: &ToricDatum) -> Vec<ToricDatum> {
    if t.is_trivial() {
        return Vec::new();
    }
    let p = product_newton(t);
    normal_fan_pieces(&p, &t.cone)
        .expect("nontrivial datum")
        .into_iter()
        .map(|(_, piece)| ToricDatum {
            cone: piece,
            polys: t.polys.clone(),
            depth: t.depth,
        })
        .collect()
}

/// Restricts a family of polynomials to the variables actually occurring in
/// it, returning the sorted occurring-variable list and the rewritten family.
fn restrict_to_occurring(
    polys: &[LaurentPolynomial],
) -> (Vec<usize>, Vec<LaurentPolynomial>) {
    let mut occ: BTreeSet<usize> = BTreeSet::new();
    for f in polys {
        for e in f.support() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    occ.insert(i);
                }
            }
        }
    }
    let vars: Vec<usize> = occ.into_iter().collect();
    let restricted = polys
        .iter()
        .map(|f| {
            LaurentPolynomial::from_terms(
                vars.len(),
                f.terms()
                    .map(|(e, c)| (vars.iter().map(|&i| e[i]).collect::<Exp>(), c.clone())),
            )
        })
        .collect();
    (vars, restricted)
}

/// Eliminates torus factors: every grading orthogonal to all in-member
/// exponent differences scales each polynomial by a unit, so a unimodular
/// change of torus coordinates rewrites the family over `rank(differences)`
/// variables without changing the vanishing locus or the Jacobian rank at
/// its points. Returns `None` when every member is a single term (the
/// family has no zero on the torus).
fn torus_reduce(polys: &[LaurentPolynomial]) -> Option<Vec<LaurentPolynomial>> {
    let m = polys.first().map_or(0, |f| f.num_vars());
    let mut diffs: Vec<Vec<Int>> = Vec::new();
    for f in polys {
        let sup = f.support();
        for e in &sup[1..] {
            diffs.push(
                e.iter()
                    .zip(sup[0].iter())
                    .map(|(a, b)| Int::from(a - b))
                    .collect(),
            );
        }
    }
    if diffs.is_empty() {
        return None;
    }
    let snf = smith_normal_form(&diffs);
    let r = snf.diag.iter().filter(|d| !d.is_zero()).count();
    if r == m {
        return Some(polys.to_vec());
    }
    let reduced = polys
        .iter()
        .map(|f| {
            let sup = f.support();
            let base = &sup[0];
            LaurentPolynomial::from_terms(
                r,
                f.terms().map(|(e, c)| {
                    let col = |k: usize| {
                        let mut acc = Int::from(0);
                        for (i, (a, b)) in e.iter().zip(base.iter()).enumerate() {
                            acc += Int::from(a - b) * &snf.v[i][k];
                        }
                        acc
                    };
                    let img: Vec<i64> = (0..r)
                        .map(|k| i64::try_from(&col(k)).expect("small transformed exponent"))
                        .collect();
                    debug_assert!((r..m).all(|k| col(k).is_zero()));
                    (img, c.clone())
                }),
            )
            .clear_denominators()
            .expect("nonzero member")
            .0
        })
        .collect();
    Some(reduced)
}

/// The rank condition at one index subset: the coordinate product must lie
/// in the radical of the ideal spanned by the cleared initial forms together
/// with the maximal minors of their Jacobian.
pub(crate) fn regular_at(cleared: &[LaurentPolynomial], subset: &[usize]) -> bool {
    let chosen: Vec<LaurentPolynomial> = subset.iter().map(|&i| cleared[i].clone()).collect();
    // A unit among the generators settles it immediately.
    if chosen
        .iter()
        .any(|f| !f.is_zero() && f.support().iter().all(|e| e.iter().all(|&x| x == 0)))
    {
        return true;
    }
    // Variables absent from every generator only produce zero Jacobian rows
    // and can be dropped; the coordinate-product test is unaffected.
    let (_, occurring) = restrict_to_occurring(&chosen);
    // Scaling directions fixing every member shrink the system further; a
    // member reduced to a single term is a unit on the torus.
    let restricted = match torus_reduce(&occurring) {
        None => return true,
        Some(reduced) => reduced,
    };
    if restricted
        .iter()
        .any(|f| f.support().iter().all(|e| e.iter().all(|&x| x == 0)))
    {
        return true;
    }
    let m = restricted.first().map_or(0, |f| f.num_vars());
    let mut gens = restricted.clone();
    if subset.len() <= m {
        let minors = jacobian_minors(m, &restricted).expect("checked |J| <= #vars");
        gens.extend(minors.into_iter().filter(|f| !f.is_zero()));
    }
    // With more equations than occurring variables the minor ideal is zero.
    let ideal = match PolyIdeal::new(m, MonomialOrder::DegRevLex, gens) {
        Ok(i) => i,
        Err(IdealsError::NegativeExponent) => unreachable!("cleared polynomials"),
        Err(_) => unreachable!(),
    };
    let coord_product = LaurentPolynomial::monomial(m, vec![1; m], Rat::from_integer(Int::from(1)));
    ideal
        .radical_contains(&coord_product)
        .expect("polynomial inputs")
}

/// Enumerates index subsets of `universe` by increasing size, lexicographic
/// within each size, returning the first singular one.
fn first_singular_subset(t: &ToricDatum) -> Result<Option<Vec<usize>>, ToricError> {
    if t.is_trivial() {
        return Ok(None);
    }
    let inits = initial_forms(t)?;
    let cleared: Vec<LaurentPolynomial> = inits
        .iter()
        .map(|(_, g)| g.clear_denominators().expect("nonzero initial form").0)
        .collect();
    let r = cleared.len();
    for size in 1..=r {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if !regular_at(&cleared, &subset) {
                return Ok(Some(subset.iter().map(|&k| inits[k].0).collect()));
            }
            // Next lexicographic size-combination of {0..r-1}.
            let mut idx = size;
            loop {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                if subset[idx] != idx + r - size {
                    subset[idx] += 1;
                    for j in idx + 1..size {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if idx == 0 && subset[0] == r - size {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether every index subset satisfies the rank condition. Requires a
/// balanced datum; trivial data are regular.
pub fn is_regular(t: &ToricDatum) -> Result<bool, ToricError> {
    Ok(first_singular_subset(t)?.is_none())
}

/// The inclusion-minimal singular index subset (smallest size, then
/// lexicographic); errors with `IsRegular` when none exists.
pub fn find_min_singular_subset(t: &ToricDatum) -> Result<Vec<usize>, ToricError> {
    first_singular_subset(t)?.ok_or(ToricError::IsRegular)
}

/// Sum over the family of the support sizes of the initial forms.
pub fn weight(t: &ToricDatum) -> Result<usize, ToricError> {
    if t.is_trivial() {
        return Ok(0);
    }
    Ok(initial_forms(t)?
        .iter()
        .map(|(_, g)| g.num_terms())
        .sum())
}

fn dual_has(cone: &HalfOpenCone, alpha: &[i64]) -> bool {
    cone.dual_contains(alpha).unwrap_or(true)
}

/// Rewrites the datum into a weakly equivalent simple one: drop terms that
/// are regular functions on the cone's patch, drop zero members, drop
/// members that are multiples of another member by such a regular function,
/// and turn single-term initial forms into cone conditions. Runs to a
/// fixpoint.
pub fn simplify(t: &ToricDatum) -> ToricDatum {
    let mut cone = t.cone.clone();
    let mut polys = t.polys.clone();
    loop {
        if cone.is_empty() {
            polys.clear();
            break;
        }
        let mut changed = false;
        // Terms lying in the monoid algebra of the dual cone are units or
        // integral there and may be deleted.
        for f in polys.iter_mut() {
            let kept = LaurentPolynomial::from_terms(
                f.num_vars(),
                f.terms()
                    .filter(|(e, _)| !dual_has(&cone, e))
                    .map(|(e, c)| (e.clone(), c.clone())),
            );
            if kept != *f {
                *f = kept;
                changed = true;
            }
        }
        let before = polys.len();
        polys.retain(|f| !f.is_zero());
        changed |= polys.len() != before;
        // Pairwise redundancy: f_i divisible by f_j with quotient supported
        // on the dual cone.
        let mut drop = vec![false; polys.len()];
        for i in 0..polys.len() {
            for j in 0..polys.len() {
                if i == j || drop[j] {
                    continue;
                }
                if let Some(q) = polys[i].div_exact(&polys[j]) {
                    if q.support().iter().all(|e| dual_has(&cone, e)) {
                        drop[i] = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
        if drop.iter().any(|&d| d) {
            let mut it = drop.iter();
            polys.retain(|_| !*it.next().expect("same length"));
        }
        // A member whose initial form is a single term forces a valuation
        // condition; fold it into the cone.
        let mut shrank = false;
        for (i, f) in polys.iter().enumerate() {
            if let Ok(g) = f.initial_form_on_cone(&cone) {
                if g.num_terms() == 1 {
                    let alpha = g.support().remove(0);
                    cone = cone.with_weak(int_vec(&alpha));
                    polys.remove(i);
                    shrank = true;
                    changed = true;
                    break;
                }
            }
        }
        let _ = shrank;
        if !changed {
            break;
        }
    }
    ToricDatum {
        cone,
        polys,
        depth: t.depth,
    }
}

/// One reduction move: indices `i < j` into the family together with a term
/// of each initial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCandidate {
    pub i: usize,
    pub j: usize,
    pub ti: (Exp, Rat),
    pub tj: (Exp, Rat),
}

fn candidate_pieces(t: &ToricDatum, cand: &ReductionCandidate) -> Vec<ToricDatum> {
    let (ei, ci) = &cand.ti;
    let (ej, cj) = &cand.tj;
    let delta: Exp = ej.iter().zip(ei.iter()).map(|(a, b)| a - b).collect();
    let neg_delta: Exp = delta.iter().map(|x| -x).collect();
    let mut out = Vec::new();
    let c_le = t.cone.with_weak(int_vec(&delta));
    if !c_le.is_empty() {
        debug_assert!(dual_has(&c_le, &delta));
        let mut polys = t.polys.clone();
        let shift = polys[cand.i].mul_term(&delta, &(cj / ci));
        polys[cand.j] = polys[cand.j].sub(&shift);
        out.extend(balance(&simplify(&ToricDatum {
            cone: c_le,
            polys,
            depth: t.depth,
        })));
    }
    let c_gt = t.cone.with_strict(int_vec(&neg_delta));
    if !c_gt.is_empty() {
        debug_assert!(dual_has(&c_gt, &neg_delta));
        let mut polys = t.polys.clone();
        let shift = polys[cand.j].mul_term(&neg_delta, &(ci / cj));
        polys[cand.i] = polys[cand.i].sub(&shift);
        out.extend(balance(&simplify(&ToricDatum {
            cone: c_gt,
            polys,
            depth: t.depth,
        })));
    }
    out
}

fn finalize_pieces(
    t: &ToricDatum,
    mut pieces: Vec<ToricDatum>,
    depth_cap: u32,
) -> Result<Vec<ToricDatum>, ToricError> {
    let base = weight(t)?;
    for p in pieces.iter_mut() {
        let w = weight(p)?;
        p.depth = if w >= base { t.depth + 1 } else { t.depth };
        if p.depth > depth_cap {
            return Err(ToricError::Fail(FailReason::DepthCapExceeded));
        }
    }
    Ok(pieces)
}

/// Greedy reduction of a balanced, simple, singular datum. Splits the cone
/// along the exponent difference of a term pair drawn from the initial forms
/// on the minimal singular subset, eliminates in each half, and refines via
/// simplify-then-balance. The first candidate whose refinement is entirely
/// regular wins; otherwise the candidate minimizing average singular weight.
/// Pieces that fail to shed weight carry an incremented depth; exceeding
/// `depth_cap` aborts with `Fail`.
pub fn reduce(t: &ToricDatum, depth_cap: u32) -> Result<Vec<ToricDatum>, ToricError> {
    let min_subset = find_min_singular_subset(t)?;
    if min_subset.len() == 1 {
        return Err(ToricError::Fail(FailReason::SingletonSubset));
    }
    let inits = initial_forms(t)?;
    let init_of = |idx: usize| -> &LaurentPolynomial {
        &inits
            .iter()
            .find(|(i, _)| *i == idx)
            .expect("singular subset indexes nonzero members")
            .1
    };
    let mut best: Option<(Rat, Vec<ToricDatum>)> = None;
    for (a, &i) in min_subset.iter().enumerate() {
        for &j in &min_subset[a + 1..] {
            for (ei, ci) in init_of(i).terms() {
                for (ej, cj) in init_of(j).terms() {
                    let cand = ReductionCandidate {
                        i,
                        j,
                        ti: (ei.clone(), ci.clone()),
                        tj: (ej.clone(), cj.clone()),
                    };
                    let pieces = candidate_pieces(t, &cand);
                    let mut singular_weight = 0usize;
                    let mut singular_count = 0usize;
                    for p in &pieces {
                        if !is_regular(p)? {
                            singular_weight += weight(p)?;
                            singular_count += 1;
                        }
                    }
                    if singular_count == 0 {
                        // Entirely regular refinement: take it immediately.
                        return finalize_pieces(t, pieces, depth_cap);
                    }
                    let score = Rat::new(
                        Int::from(singular_weight as i64),
                        Int::from(singular_count as i64),
                    );
                    let better = match &best {
                        None => true,
                        Some((s, _)) => score < *s,
                    };
                    if better {
                        best = Some((score, pieces));
                    }
                }
            }
        }
    }
    let (_, pieces) = best.expect("at least one candidate for a non-singleton subset");
    finalize_pieces(t, pieces, depth_cap)
}
