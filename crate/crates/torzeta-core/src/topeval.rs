//! Topological evaluation of a single regular toric datum.
//!
//! A regular datum `(C0; f_1..f_r)` in `n` variables, together with a
//! nonnegative integer matrix `beta` whose rows record how each counting
//! variable pairs with the lattice points of the cone, determines a finite
//! sum over index subsets `J`: an integer multiplicity (an alternating sum
//! of Euler characteristics of torus varieties) times the reduction of a
//! cone generating function. This module computes that sum exactly as a
//! stream of simple terms `c / prod(<a,s> + b)`, specializes the counting
//! variables to a single variable `s`, and reconstructs the final univariate
//! rational function by exact interpolation against a candidate denominator.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::euler::{self, EulerCache, EulerResult, TorusVariety};
use crate::laurent::LaurentPolynomial;
use crate::polyhedra::{triangulate, HalfOpenCone};
use crate::toric::{self, ToricDatum};
use crate::{rat_int, Exp, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopevalError {
    /// A chosen exponent lies outside the support of its initial form.
    BadGamma,
    /// The cone handed to the reduction exceeds the expected dimension.
    DimensionMismatch,
    /// An Euler characteristic computation declined; carries its reason.
    EulerFailure(String),
    /// The interpolated numerator failed the spare-point check. This cannot
    /// happen on well-formed input and signals an internal bug.
    VerificationMismatch,
}

impl fmt::Display for TopevalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopevalError::BadGamma => {
                write!(f, "chosen exponent not in the support of the initial form")
            }
            TopevalError::DimensionMismatch => write!(f, "cone dimension exceeds expectation"),
            TopevalError::EulerFailure(reason) => {
                write!(f, "euler characteristic unavailable: {reason}")
            }
            TopevalError::VerificationMismatch => {
                write!(f, "interpolation failed verification at the spare point")
            }
        }
    }
}

impl core::error::Error for TopevalError {}

/// One linear factor `<a, s> + b` in the counting variables. The univariate
/// specialized form has a single-entry `a`; the factor `a[0]*s + b` then
/// matches the classical notation `A*s - B` with `B = -b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factor {
    pub a: Vec<i64>,
    pub b: i64,
}

impl Factor {
    /// Exact value at a rational point; the slice length must match `a`.
    pub fn evaluate(&self, s: &[Rat]) -> Rat {
        assert_eq!(self.a.len(), s.len(), "variable count mismatch");
        let mut v = rat_int(self.b);
        for (ai, si) in self.a.iter().zip(s) {
            v += rat_int(*ai) * si;
        }
        v
    }
}

/// One summand `coefficient / prod(factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleTerm {
    pub coefficient: Rat,
    pub factors: Vec<Factor>,
}

impl SimpleTerm {
    /// Exact value at a rational point, or `None` when a factor vanishes.
    pub fn evaluate(&self, s: &[Rat]) -> Option<Rat> {
        let mut den = Rat::one();
        for f in &self.factors {
            let v = f.evaluate(s);
            if v.is_zero() {
                return None;
            }
            den *= v;
        }
        Some(self.coefficient.clone() / den)
    }
}

/// A finite sum of simple terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleTermSum {
    pub terms: Vec<SimpleTerm>,
}

impl SimpleTermSum {
    /// Exact value at a rational point, or `None` when a factor vanishes.
    pub fn evaluate(&self, s: &[Rat]) -> Option<Rat> {
        let mut total = Rat::zero();
        for t in &self.terms {
            total += t.evaluate(s)?;
        }
        Some(total)
    }
}

/// Nonnegative integer matrix with an all-ones first column. Pairing a ray
/// with its columns yields the factor data `(b, a_1..a_m)` of a denominator
/// factor `<a, s> + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    rows: Vec<Vec<i64>>,
}

impl SubstitutionMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> SubstitutionMatrix {
        assert!(!rows.is_empty(), "substitution matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols >= 1, "substitution matrix needs the all-ones column");
        for row in &rows {
            assert_eq!(row.len(), cols, "ragged substitution matrix");
            assert_eq!(row[0], 1, "first column must be all ones");
            assert!(row.iter().all(|&x| x >= 0), "entries must be nonnegative");
        }
        SubstitutionMatrix { rows }
    }

    /// Block layout for a datum with `n` cone variables, `extra` appended
    /// strict variables, and counting rows `beta`: row `i < n` is
    /// `(1, beta[0][i], .., beta[m-1][i])`, the last `extra` rows are
    /// `(1, 0, .., 0)`.
    pub fn block(n: usize, extra: usize, beta: &[Vec<i64>]) -> SubstitutionMatrix {
        let m = beta.len();
        for row in beta {
            assert_eq!(row.len(), n, "counting row length must equal n");
        }
        let mut rows = Vec::with_capacity(n + extra);
        for i in 0..n {
            let mut row = Vec::with_capacity(m + 1);
            row.push(1);
            for b in beta {
                row.push(b[i]);
            }
            rows.push(row);
        }
        for _ in 0..extra {
            let mut row = vec![0; m + 1];
            row[0] = 1;
            rows.push(row);
        }
        SubstitutionMatrix::new(rows)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Right-multiplies a ray by the matrix and splits off the first entry:
    /// returns `(b, a)` with `b = <ray, column 0>` and `a_j = <ray, column j>`.
    pub fn pair(&self, ray: &[Int]) -> (Int, Vec<Int>) {
        assert_eq!(ray.len(), self.rows.len(), "ray length mismatch");
        let m = self.num_cols() - 1;
        let mut out = vec![Int::zero(); m + 1];
        for (ri, row) in ray.iter().zip(&self.rows) {
            for (oj, aj) in out.iter_mut().zip(row) {
                *oj += ri * Int::from(*aj);
            }
        }
        let b = out.remove(0);
        (b, out)
    }
}

/// Affine specialization of the counting variables: `s_j -> s - shifts[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    shifts: Vec<i64>,
}

impl Specialization {
    pub fn new(shifts: Vec<i64>) -> Specialization {
        Specialization { shifts }
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn num_vars(&self) -> usize {
        self.shifts.len()
    }

    /// Rewrites one multivariate term in the single variable `s`. Factors
    /// that lose the variable fold into the coefficient; the rest are made
    /// primitive with the extracted content folded in as well.
    pub fn apply(&self, term: &SimpleTerm) -> SimpleTerm {
        let mut coefficient = term.coefficient.clone();
        let mut factors = Vec::with_capacity(term.factors.len());
        for f in &term.factors {
            assert_eq!(f.a.len(), self.shifts.len(), "variable count mismatch");
            let a: i64 = f.a.iter().sum();
            let mut b = f.b;
            for (ai, ci) in f.a.iter().zip(&self.shifts) {
                b -= ai * ci;
            }
            if a == 0 {
                // the entire a-vector was zero, so b is the original constant
                debug_assert!(b > 0, "constant factor must be positive");
                coefficient /= rat_int(b);
            } else {
                let g = a.gcd(&b);
                coefficient /= rat_int(g);
                factors.push(Factor {
                    a: vec![a / g],
                    b: b / g,
                });
            }
        }
        factors.sort();
        SimpleTerm {
            coefficient,
            factors,
        }
    }
}

/// Builds the extended cone attached to an index subset: the original cone
/// crossed with a strictly positive coordinate per member of `j`, cut down
/// by one weak row `<gamma_i, x> + [i in j] o_i >= 0` per nonzero member.
/// Member positions refer to the nonzero members in order; `gammas` holds
/// one chosen exponent per nonzero member and must come from the support of
/// the corresponding initial form.
pub fn cone_cj(
    t: &ToricDatum,
    j: &[usize],
    gammas: &[Exp],
) -> Result<HalfOpenCone, TopevalError> {
    let inits: Vec<LaurentPolynomial> = toric::initial_forms(t)
        .expect("cone extension requires a balanced datum")
        .into_iter()
        .map(|(_, f)| f)
        .collect();
    build_cone_cj(t.cone(), &inits, j, gammas)
}

fn build_cone_cj(
    cone: &HalfOpenCone,
    inits: &[LaurentPolynomial],
    j: &[usize],
    gammas: &[Exp],
) -> Result<HalfOpenCone, TopevalError> {
    let r = inits.len();
    assert_eq!(gammas.len(), r, "one chosen exponent per nonzero member");
    assert!(
        j.windows(2).all(|w| w[0] < w[1]),
        "index subset must be strictly increasing"
    );
    assert!(j.iter().all(|&i| i < r), "member index out of range");
    for (f, g) in inits.iter().zip(gammas) {
        if !f.support().contains(g) {
            return Err(TopevalError::BadGamma);
        }
    }
    let n = cone.ambient_dim();
    let k = j.len();
    let extend = |row: &[Int]| -> Vec<Int> {
        let mut v = row.to_vec();
        v.resize(n + k, Int::zero());
        v
    };
    let mut weak: Vec<Vec<Int>> = cone.weak().iter().map(|r| extend(r)).collect();
    let mut strict: Vec<Vec<Int>> = cone.strict().iter().map(|r| extend(r)).collect();
    for l in 0..k {
        let mut row = vec![Int::zero(); n + k];
        row[n + l] = Int::one();
        strict.push(row);
    }
    for (i, g) in gammas.iter().enumerate() {
        let mut row: Vec<Int> = g.iter().map(|&x| Int::from(x)).collect();
        row.resize(n + k, Int::zero());
        if let Ok(pos) = j.binary_search(&i) {
            row[n + pos] = Int::one();
        }
        weak.push(row);
    }
    Ok(HalfOpenCone::new(n + k, weak, strict))
}

/// Reduction of the paired generating function of a cone inside the
/// nonnegative orthant: triangulates the closure, keeps the cells of
/// dimension exactly `d`, and emits one term per cell, the cell's lattice
/// index over the product of its paired rays. The sum comes out empty
/// exactly when `dim c < d`; a cone of dimension above `d` is rejected.
pub fn wj_reduction(
    c: &HalfOpenCone,
    a: &SubstitutionMatrix,
    d: usize,
) -> Result<SimpleTermSum, TopevalError> {
    let mut out = SimpleTermSum::default();
    wj_reduction_visit(c, a, d, &mut |t| out.terms.push(t))?;
    Ok(out)
}

/// Streaming form of [`wj_reduction`]: each emitted term is handed to `emit`
/// instead of being collected.
pub fn wj_reduction_visit(
    c: &HalfOpenCone,
    a: &SubstitutionMatrix,
    d: usize,
    emit: &mut dyn FnMut(SimpleTerm),
) -> Result<(), TopevalError> {
    if c.is_empty() {
        return Ok(());
    }
    assert_eq!(c.ambient_dim(), a.num_rows(), "matrix row count mismatch");
    let closure = c.closure().expect("nonempty cone has a closure");
    let dim = closure.dim();
    if dim > d {
        return Err(TopevalError::DimensionMismatch);
    }
    if dim < d {
        return Ok(());
    }
    if d == 0 {
        // the zero cone: one lattice point, empty product
        emit(SimpleTerm {
            coefficient: Rat::one(),
            factors: Vec::new(),
        });
        return Ok(());
    }
    for sigma in triangulate(&closure) {
        if sigma.rays().len() != d {
            continue;
        }
        let mut factors = Vec::with_capacity(d);
        for ray in sigma.rays() {
            let (b, avec) = a.pair(ray);
            debug_assert!(b.is_positive(), "rays in the orthant pair positively");
            factors.push(Factor {
                a: avec
                    .iter()
                    .map(|x| x.to_i64().expect("factor entry fits in i64"))
                    .collect(),
                b: b.to_i64().expect("factor entry fits in i64"),
            });
        }
        factors.sort();
        emit(SimpleTerm {
            coefficient: Rat::from_integer(sigma.index()),
            factors,
        });
    }
    Ok(())
}

/// Shared per-datum state: initial forms, chosen exponents, and memoized
/// torus splittings and Euler characteristics per member subset.
struct EvalContext<'a> {
    n: usize,
    r: usize,
    cone: &'a HalfOpenCone,
    inits: Vec<LaurentPolynomial>,
    gammas: Vec<Exp>,
    cache: &'a dyn EulerCache,
    split_memo: BTreeMap<u64, (usize, Vec<LaurentPolynomial>)>,
    chi_memo: BTreeMap<u64, Int>,
}

impl<'a> EvalContext<'a> {
    fn new(
        t: &'a ToricDatum,
        gammas: Option<Vec<Exp>>,
        cache: &'a dyn EulerCache,
    ) -> Result<EvalContext<'a>, TopevalError> {
        let inits: Vec<LaurentPolynomial> = toric::initial_forms(t)
            .expect("evaluation requires a balanced datum")
            .into_iter()
            .map(|(_, f)| f)
            .collect();
        let r = inits.len();
        assert!(r < 64, "member count exceeds subset mask width");
        let gammas = match gammas {
            Some(g) => g,
            // lexicographically smallest support exponent of each initial form
            None => inits
                .iter()
                .map(|f| f.support().first().cloned().expect("initial form is nonzero"))
                .collect(),
        };
        for (f, g) in inits.iter().zip(&gammas) {
            if !f.support().contains(g) {
                return Err(TopevalError::BadGamma);
            }
        }
        Ok(EvalContext {
            n: t.num_vars(),
            r,
            cone: t.cone(),
            inits,
            gammas,
            cache,
            split_memo: BTreeMap::new(),
            chi_memo: BTreeMap::new(),
        })
    }

    fn members(&self, mask: u64) -> Vec<usize> {
        (0..self.r).filter(|i| mask >> i & 1 == 1).collect()
    }

    fn split(&mut self, mask: u64) -> &(usize, Vec<LaurentPolynomial>) {
        if !self.split_memo.contains_key(&mask) {
            let polys: Vec<LaurentPolynomial> = self
                .members(mask)
                .into_iter()
                .map(|i| self.inits[i].clone())
                .collect();
            let v = TorusVariety::new(self.n, polys).expect("members share the ambient dimension");
            let (_, reduced, torus_rank) = euler::torus_split(&v);
            self.split_memo
                .insert(mask, (self.n - torus_rank, reduced));
        }
        &self.split_memo[&mask]
    }

    /// Dimension of the Minkowski sum of the members' initial Newton
    /// polytopes, read off as the rank of their joint exponent lattice.
    fn newton_dim(&mut self, mask: u64) -> usize {
        self.split(mask).0
    }

    fn chi(&mut self, mask: u64) -> Result<Int, TopevalError> {
        if let Some(v) = self.chi_memo.get(&mask) {
            return Ok(v.clone());
        }
        let (d, reduced) = self.split(mask).clone();
        let u = TorusVariety::new(d, reduced).expect("rewritten system lives in d variables");
        match euler::euler_characteristic_cached(&u, self.cache) {
            EulerResult::Value(v) => {
                self.chi_memo.insert(mask, v.clone());
                Ok(v)
            }
            EulerResult::Failure(reason) => Err(TopevalError::EulerFailure(reason)),
        }
    }

    fn cone_j(&self, jmask: u64) -> Result<HalfOpenCone, TopevalError> {
        build_cone_cj(self.cone, &self.inits, &self.members(jmask), &self.gammas)
    }

    /// Alternating sum of Euler characteristics over the supersets of `j`
    /// whose Newton dimension matches the extended cone's dimension.
    fn euler_coeff(&mut self, jmask: u64, dim_cj: usize) -> Result<Int, TopevalError> {
        let jsize = jmask.count_ones() as usize;
        let mut total = Int::zero();
        for tmask in 0..1u64 << self.r {
            if tmask & jmask != jmask {
                continue;
            }
            let dt = self.newton_dim(tmask);
            if self.n + jsize != dim_cj + dt {
                continue;
            }
            let chi = self.chi(tmask)?;
            if (jsize + tmask.count_ones() as usize) % 2 == 0 {
                total += chi;
            } else {
                total -= chi;
            }
        }
        Ok(total)
    }
}

/// The integer multiplicity attached to an index subset of a regular
/// nontrivial datum: the alternating sum, over supersets of `j` meeting the
/// dimension condition, of the Euler characteristics of the rewritten
/// initial-form varieties. Chosen exponents are the lexicographically
/// smallest support points of the initial forms. Returns zero when the
/// extended cone is empty.
pub fn euler_coefficient(
    t: &ToricDatum,
    j: &[usize],
    cache: &dyn EulerCache,
) -> Result<Int, TopevalError> {
    assert!(!t.is_trivial(), "datum must be nontrivial");
    let mut ctx = EvalContext::new(t, None, cache)?;
    let jmask = j.iter().fold(0u64, |m, &i| {
        assert!(i < ctx.r, "member index out of range");
        m | 1 << i
    });
    let cj = ctx.cone_j(jmask)?;
    if cj.is_empty() {
        return Ok(Int::zero());
    }
    let dim_cj = cj.dim().expect("nonempty cone has a dimension");
    ctx.euler_coeff(jmask, dim_cj)
}

/// Full topological evaluation of a regular datum. For every index subset
/// with nonzero multiplicity the cone reduction runs with the expected
/// dimension `n - dim tau + |J|`, where `dim tau` is the Newton dimension of
/// the whole member family, and every emitted term is specialized to the
/// single variable `s` on the spot. A trivial datum yields the empty sum.
pub fn evaluate_topologically(
    t: &ToricDatum,
    beta: &[Vec<i64>],
    spec: &Specialization,
    cache: &dyn EulerCache,
) -> Result<SimpleTermSum, TopevalError> {
    let mut out = SimpleTermSum::default();
    evaluate_topologically_visit(t, beta, spec, cache, &mut |term| out.terms.push(term))?;
    Ok(out)
}

/// Streaming form of [`evaluate_topologically`].
pub fn evaluate_topologically_visit(
    t: &ToricDatum,
    beta: &[Vec<i64>],
    spec: &Specialization,
    cache: &dyn EulerCache,
    emit: &mut dyn FnMut(SimpleTerm),
) -> Result<(), TopevalError> {
    evaluate_with_gammas(t, beta, spec, cache, None, emit)
}

pub(crate) fn evaluate_with_gammas(
    t: &ToricDatum,
    beta: &[Vec<i64>],
    spec: &Specialization,
    cache: &dyn EulerCache,
    gammas: Option<Vec<Exp>>,
    emit: &mut dyn FnMut(SimpleTerm),
) -> Result<(), TopevalError> {
    if t.is_trivial() {
        return Ok(());
    }
    let n = t.num_vars();
    assert_eq!(spec.num_vars(), beta.len(), "one shift per counting row");
    for row in beta {
        assert_eq!(row.len(), n, "counting row length must equal n");
        assert!(row.iter().all(|&x| x >= 0), "counting rows are nonnegative");
    }
    let mut ctx = EvalContext::new(t, gammas, cache)?;
    let full = (1u64 << ctx.r) - 1;
    let dim_tau = ctx.newton_dim(full);
    for jmask in 0..=full {
        let cj = ctx.cone_j(jmask)?;
        if cj.is_empty() {
            continue;
        }
        let dim_cj = cj.dim().expect("nonempty cone has a dimension");
        let ej = ctx.euler_coeff(jmask, dim_cj)?;
        if ej.is_zero() {
            continue;
        }
        let jsize = jmask.count_ones() as usize;
        let amat = SubstitutionMatrix::block(n, jsize, beta);
        let scale = Rat::from_integer(ej);
        wj_reduction_visit(&cj, &amat, n - dim_tau + jsize, &mut |mut term| {
            term.coefficient *= &scale;
            emit(spec.apply(&term));
        })?;
    }
    Ok(())
}

/// Folds one univariate term into a running candidate denominator: each
/// distinct factor is recorded with the largest multiplicity it attains
/// inside any single term.
pub fn accumulate_denominator(acc: &mut BTreeMap<Factor, usize>, term: &SimpleTerm) {
    let mut local: BTreeMap<&Factor, usize> = BTreeMap::new();
    for f in &term.factors {
        *local.entry(f).or_insert(0) += 1;
    }
    for (f, c) in local {
        let e = acc.entry(f.clone()).or_insert(0);
        if *e < c {
            *e = c;
        }
    }
}

/// Candidate denominator of a univariate sum: the smallest factor multiset
/// guaranteed to clear every term.
pub fn candidate_denominator(s: &SimpleTermSum) -> BTreeMap<Factor, usize> {
    let mut acc = BTreeMap::new();
    for term in &s.terms {
        accumulate_denominator(&mut acc, term);
    }
    acc
}

/// Evaluation grid for a candidate denominator with total degree `D`: the
/// `D + 2` consecutive points `M, M+1, ..` with `M = 1 + max(-b/a)` over the
/// factors (`M = 1` when there are none), so every point clears every root.
/// The final point is the spare used for verification.
pub fn interpolation_points(g: &BTreeMap<Factor, usize>) -> Vec<Rat> {
    let deg: usize = g.values().sum();
    let mut m = Rat::one();
    for f in g.keys() {
        assert_eq!(f.a.len(), 1, "candidate factors must be univariate");
        assert!(f.a[0] > 0, "candidate factors must involve s");
        let bound = Rat::new(Int::from(-f.b), Int::from(f.a[0])) + Rat::one();
        if bound > m {
            m = bound;
        }
    }
    (0..deg + 2)
        .map(|k| &m + Rat::from_integer(Int::from(k as i64)))
        .collect()
}

fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut v = Rat::zero();
    for c in coeffs.iter().rev() {
        v = v * x + c;
    }
    v
}

fn poly_trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact quotient of a rational polynomial by `a*s + b`, valid when `-b/a`
/// is a root.
fn poly_div_linear(p: &[Rat], a: i64, b: i64) -> Vec<Rat> {
    let deg = p.len() - 1;
    let ar = rat_int(a);
    let br = rat_int(b);
    let mut q = vec![Rat::zero(); deg];
    let mut carry = p[deg].clone();
    for k in (1..=deg).rev() {
        q[k - 1] = carry / &ar;
        carry = &p[k - 1] - &br * &q[k - 1];
    }
    debug_assert!(carry.is_zero(), "division must be exact at a root");
    q
}

fn lagrange(points: &[Rat], values: &[Rat]) -> Vec<Rat> {
    let k = points.len();
    let mut acc = vec![Rat::zero(); k];
    for i in 0..k {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..k {
            if j == i {
                continue;
            }
            // multiply basis by (s - x_j)
            basis.push(Rat::zero());
            for t in (0..basis.len() - 1).rev() {
                let old = basis[t].clone();
                basis[t + 1] += &old;
                basis[t] = old * -(&points[j]);
            }
            denom *= &points[i] - &points[j];
        }
        let scale = &values[i] / denom;
        for (a, b) in acc.iter_mut().zip(&basis) {
            *a += b * &scale;
        }
    }
    acc
}

/// Reconstructs the univariate sum as a reduced rational function. The sum
/// is evaluated exactly at `deg g + 1` grid points, the numerator of `g * S`
/// is interpolated, a spare point re-checks the result, and common linear
/// factors are cancelled.
pub fn interpolate(
    s: &SimpleTermSum,
    g: &BTreeMap<Factor, usize>,
) -> Result<RationalFunction1V, TopevalError> {
    let points = interpolation_points(g);
    let values: Vec<Rat> = points
        .iter()
        .map(|x| {
            s.evaluate(core::slice::from_ref(x))
                .expect("grid points avoid all factor roots")
        })
        .collect();
    interpolate_from_values(g, &points, &values)
}

/// As [`interpolate`], but takes the exact values of the sum at the grid
/// points of [`interpolation_points`]; this is the entry point for callers
/// that stream terms and never materialize the sum.
pub fn interpolate_from_values(
    g: &BTreeMap<Factor, usize>,
    points: &[Rat],
    values: &[Rat],
) -> Result<RationalFunction1V, TopevalError> {
    let deg: usize = g.values().sum();
    assert_eq!(points.len(), deg + 2, "grid size must be deg + 2");
    assert_eq!(values.len(), deg + 2, "one value per grid point");
    let gval = |x: &Rat| -> Rat {
        let mut v = Rat::one();
        for (f, mult) in g {
            let fv = f.evaluate(core::slice::from_ref(x));
            for _ in 0..*mult {
                v *= &fv;
            }
        }
        v
    };
    let ys: Vec<Rat> = points.iter().zip(values).map(|(x, v)| v * gval(x)).collect();
    let coeffs = poly_trim(lagrange(&points[..deg + 1], &ys[..deg + 1]));
    if poly_eval(&coeffs, &points[deg + 1]) != ys[deg + 1] {
        return Err(TopevalError::VerificationMismatch);
    }
    if coeffs.is_empty() {
        return Ok(RationalFunction1V::zero());
    }
    let mut num = coeffs;
    let mut mults = g.clone();
    for (f, mult) in mults.iter_mut() {
        let root = Rat::new(Int::from(-f.b), Int::from(f.a[0]));
        while *mult > 0 && num.len() > 1 && poly_eval(&num, &root).is_zero() {
            num = poly_div_linear(&num, f.a[0], f.b);
            *mult -= 1;
        }
    }
    Ok(RationalFunction1V::from_rational_poly(num, &mults))
}

/// Univariate rational function `numerator / (constant * prod(A*s - B))` in
/// canonical form: integer numerator coefficients (ascending), a positive
/// integer constant coprime to the numerator content, and primitive factors
/// `(A, B)` with `A > 0` sorted lexicographically. The degree of the
/// numerator never exceeds the number of factors. Zero is represented with
/// an empty numerator, constant one, and no factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction1V {
    numerator: Vec<Int>,
    constant: Int,
    factors: Vec<(i64, i64)>,
}

impl RationalFunction1V {
    pub fn zero() -> RationalFunction1V {
        RationalFunction1V {
            numerator: Vec::new(),
            constant: Int::one(),
            factors: Vec::new(),
        }
    }

    /// Normalizing constructor: trims the numerator, makes the factors
    /// primitive, and moves shared integer content between the numerator
    /// and the constant.
    pub fn new(
        numerator: Vec<Int>,
        constant: Int,
        factors: Vec<(i64, i64)>,
    ) -> RationalFunction1V {
        let mut numerator = numerator;
        while numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        if numerator.is_empty() {
            return RationalFunction1V::zero();
        }
        assert!(constant.is_positive(), "constant must be positive");
        let mut constant = constant;
        let mut canon = Vec::with_capacity(factors.len());
        for (a, b) in factors {
            assert!(a > 0, "factors must involve s positively");
            let g = a.gcd(&b);
            constant *= Int::from(g);
            canon.push((a / g, b / g));
        }
        canon.sort_unstable();
        let mut content = Int::zero();
        for c in &numerator {
            content = content.gcd(c);
        }
        let shared = content.gcd(&constant);
        if shared > Int::one() {
            for c in numerator.iter_mut() {
                *c /= &shared;
            }
            constant /= &shared;
        }
        assert!(
            numerator.len() <= canon.len() + 1,
            "numerator degree must not exceed denominator degree"
        );
        RationalFunction1V {
            numerator,
            constant,
            factors: canon,
        }
    }

    fn from_rational_poly(num: Vec<Rat>, mults: &BTreeMap<Factor, usize>) -> RationalFunction1V {
        let mut den_lcm = Int::one();
        for c in &num {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scale = Rat::from_integer(den_lcm.clone());
        let ints: Vec<Int> = num.iter().map(|c| (c * &scale).to_integer()).collect();
        let mut content = Int::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        let shared = content.gcd(&den_lcm);
        let numerator: Vec<Int> = ints.iter().map(|c| c / &shared).collect();
        let constant = den_lcm / shared;
        let mut factors = Vec::new();
        for (f, mult) in mults {
            for _ in 0..*mult {
                factors.push((f.a[0], -f.b));
            }
        }
        RationalFunction1V::new(numerator, constant, factors)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator coefficients in ascending order of powers of `s`.
    pub fn numerator(&self) -> &[Int] {
        &self.numerator
    }

    pub fn constant(&self) -> &Int {
        &self.constant
    }

    /// Linear factors `(A, B)` denoting `A*s - B`, with multiplicity.
    pub fn factors(&self) -> &[(i64, i64)] {
        &self.factors
    }

    /// Degree in `s` (numerator degree minus denominator degree), or `None`
    /// for the zero function.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.numerator.len() as i64 - 1 - self.factors.len() as i64)
    }

    /// Exact value at a rational point, or `None` at a pole.
    pub fn evaluate(&self, x: &Rat) -> Option<Rat> {
        let mut den = Rat::from_integer(self.constant.clone());
        for &(a, b) in &self.factors {
            let v = rat_int(a) * x - rat_int(b);
            if v.is_zero() {
                return None;
            }
            den *= v;
        }
        Some(poly_eval_int(&self.numerator, x) / den)
    }
}

fn poly_eval_int(coeffs: &[Int], x: &Rat) -> Rat {
    let mut v = Rat::zero();
    for c in coeffs.iter().rev() {
        v = v * x + Rat::from_integer(c.clone());
    }
    v
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: &Int, k: usize, lead: bool) -> fmt::Result {
    let mag = c.abs();
    if lead {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if k == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if k == 1 {
        write!(f, "s")
    } else {
        write!(f, "s^{k}")
    }
}

impl fmt::Display for RationalFunction1V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let monomials = self.numerator.iter().filter(|c| !c.is_zero()).count();
        let plain = self.factors.is_empty() && self.constant.is_one();
        let wrap = !plain && monomials > 1;
        if wrap {
            write!(f, "(")?;
        }
        let mut lead = true;
        for (k, c) in self.numerator.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_monomial(f, c, k, lead)?;
            lead = false;
        }
        if wrap {
            write!(f, ")")?;
        }
        if plain {
            return Ok(());
        }
        write!(f, "/(")?;
        let mut first = true;
        if !self.constant.is_one() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        let mut i = 0;
        while i < self.factors.len() {
            let (a, b) = self.factors[i];
            let mut mult = 1;
            while i + mult < self.factors.len() && self.factors[i + mult] == (a, b) {
                mult += 1;
            }
            i += mult;
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if (a, b) == (1, 0) {
                write!(f, "s")?;
            } else if b == 0 {
                write!(f, "({a}*s)")?;
            } else {
                let sign = if b > 0 { '-' } else { '+' };
                let mag = b.abs();
                if a == 1 {
                    write!(f, "(s {sign} {mag})")?;
                } else {
                    write!(f, "({a}*s {sign} {mag})")?;
                }
            }
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::NoCache;
    use crate::laurent::LaurentPolynomial;
    use crate::polyhedra::{generating_function, hoc_from_i64};
    use crate::rat_int;
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            n,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rat::from_integer(Int::from(*c)))),
        )
    }

    fn fac(a: &[i64], b: i64) -> Factor {
        Factor { a: a.to_vec(), b }
    }

    fn term(c: Rat, factors: Vec<Factor>) -> SimpleTerm {
        SimpleTerm {
            coefficient: c,
            factors,
        }
    }

    /// The cone with apex at the origin spanned by (1,0) and (1,2).
    fn wedge() -> HalfOpenCone {
        hoc_from_i64(2, &[&[0, 1], &[2, -1]], &[])
    }

    /// Datum carrying one polynomial with full-cone initial form: the cone
    /// is the origin, where every exponent pairs to zero.
    fn point_datum() -> ToricDatum {
        let cone = hoc_from_i64(2, &[&[-1, 0], &[0, -1]], &[]);
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        ToricDatum::new(cone, vec![f], 0)
    }

    #[test]
    fn block_layout_and_pair() {
        let a = SubstitutionMatrix::block(2, 1, &[vec![1, 0], vec![2, 3]]);
        assert_eq!(
            a.rows(),
            &[vec![1, 1, 2], vec![1, 0, 3], vec![1, 0, 0]]
        );
        let (b, avec) = a.pair(&[Int::from(1), Int::from(2), Int::from(5)]);
        assert_eq!(b, Int::from(8));
        assert_eq!(avec, vec![Int::from(1), Int::from(8)]);
    }

    #[test]
    fn specialization_folds_constants_and_contents() {
        let spec = Specialization::new(vec![1, 2]);
        // 6 / ((s1 + s2 + 1)(2s1 + 2s2 + 4)(constant 3))
        let t = term(
            rat(6, 1),
            vec![
                fac(&[1, 1], 1),
                fac(&[2, 2], 4),
                fac(&[0, 0], 3),
            ],
        );
        let u = spec.apply(&t);
        // s1 + s2 + 1 -> 2s - 2, primitive s - 1; 2s1 + 2s2 + 4 -> 4s - 2, primitive 2s - 1
        assert_eq!(u.factors, vec![fac(&[1], -1), fac(&[2], -1)]);
        // 6 / (3 constant * 2 content * 2 content) = 1/2
        assert_eq!(u.coefficient, rat(1, 2));
        // at s = 7 the original variables sit at (6, 5)
        let x = rat(7, 1);
        assert_eq!(
            u.evaluate(core::slice::from_ref(&x)).unwrap(),
            rat(6, 1) / (rat(12, 1) * rat(26, 1) * rat(3, 1))
        );
    }

    #[test]
    fn cone_extension_shape_and_bad_gamma() {
        let t = point_datum();
        let gammas = vec![vec![0, 0]];
        let c0 = cone_cj(&t, &[], &gammas).unwrap();
        assert_eq!(c0.ambient_dim(), 2);
        assert!(!c0.is_empty());
        assert_eq!(c0.dim().unwrap(), 0);
        let c1 = cone_cj(&t, &[0], &gammas).unwrap();
        assert_eq!(c1.ambient_dim(), 3);
        assert_eq!(c1.dim().unwrap(), 1);
        assert!(c1.contains_point(&[rat(0, 1), rat(0, 1), rat(5, 1)]));
        assert!(!c1.contains_point(&[rat(0, 1), rat(0, 1), rat(0, 1)]));
        assert_eq!(
            cone_cj(&t, &[], &[vec![5, 5]]),
            Err(TopevalError::BadGamma)
        );
    }

    #[test]
    fn reduction_examples() {
        // single primitive ray (1,2): one factor from the paired matrix
        let ray = hoc_from_i64(2, &[&[2, -1], &[-2, 1]], &[]);
        let a = SubstitutionMatrix::block(2, 0, &[vec![1, 0]]);
        let s = wj_reduction(&ray, &a, 1).unwrap();
        assert_eq!(s.terms, vec![term(rat(1, 1), vec![fac(&[1], 3)])]);

        // two-dimensional wedge: one simplicial cell of lattice index 2
        let s = wj_reduction(&wedge(), &a, 2).unwrap();
        assert_eq!(
            s.terms,
            vec![term(rat(2, 1), vec![fac(&[1], 1), fac(&[1], 3)])]
        );

        // the zero cone contributes the empty product at dimension zero
        let origin = hoc_from_i64(2, &[&[-1, 0], &[0, -1]], &[]);
        let s = wj_reduction(&origin, &a, 0).unwrap();
        assert_eq!(s.terms, vec![term(rat(1, 1), vec![])]);
        // and nothing at higher expected dimension
        assert!(wj_reduction(&origin, &a, 1).unwrap().terms.is_empty());

        // a cone wider than expected is rejected
        assert_eq!(
            wj_reduction(&wedge(), &a, 1),
            Err(TopevalError::DimensionMismatch)
        );

        // the empty cone contributes nothing
        let empty = hoc_from_i64(2, &[&[-1, -1]], &[&[1, 0]]);
        assert!(empty.is_empty());
        assert!(wj_reduction(&empty, &a, 1).unwrap().terms.is_empty());
    }

    fn binomial_series(w: &Rat, len: usize) -> Vec<Rat> {
        let mut out = Vec::with_capacity(len);
        out.push(Rat::one());
        for k in 1..len {
            let next = &out[k - 1] * (w - rat_int(k as i64 - 1)) / rat_int(k as i64);
            out.push(next);
        }
        out
    }

    fn series_mul(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, ai) in a.iter().enumerate().take(len) {
            for (j, bj) in b.iter().enumerate().take(len - i) {
                out[i + j] += ai * bj;
            }
        }
        out
    }

    fn series_inv(a: &[Rat], len: usize) -> Vec<Rat> {
        assert!(!a[0].is_zero());
        let inv0 = Rat::one() / &a[0];
        let mut out = vec![Rat::zero(); len];
        out[0] = inv0.clone();
        for k in 1..len {
            let mut acc = Rat::zero();
            for i in 1..=k {
                if i < a.len() {
                    acc += &a[i] * &out[k - i];
                }
            }
            out[k] = -acc * &inv0;
        }
        out
    }

    /// Independent route to the reduced value at a rational sample point:
    /// expand the paired generating function as a Laurent series in u with
    /// q = 1 + u and read off the coefficient of u^{-d}.
    fn reduction_via_series(c: &HalfOpenCone, a: &SubstitutionMatrix, d: usize, s0: &[Rat]) -> Rat {
        let affine = |v: &[Int]| -> Rat {
            let (b, avec) = a.pair(v);
            let mut out = Rat::from_integer(b);
            for (aj, sj) in avec.iter().zip(s0) {
                out += Rat::from_integer(aj.clone()) * sj;
            }
            out
        };
        let gf = generating_function(c);
        let mut total = Rat::zero();
        for t in &gf.terms {
            let e = t.rays.len();
            if e < d {
                continue;
            }
            let len = e - d + 1;
            let mut num = vec![Rat::zero(); len];
            for p in &t.numerator {
                let w = -affine(p);
                for (ni, bi) in num.iter_mut().zip(binomial_series(&w, len)) {
                    *ni += bi;
                }
            }
            let mut den = vec![Rat::zero(); len];
            den[0] = Rat::one();
            for ray in &t.rays {
                let ev = affine(ray);
                // (1 - (1+u)^{-e}) / u as a series
                let bs = binomial_series(&-ev, len + 1);
                let factor: Vec<Rat> = (0..len).map(|k| -&bs[k + 1]).collect();
                den = series_mul(&den, &factor, len);
            }
            let prod = series_mul(&num, &series_inv(&den, len), len);
            total += Rat::from_integer(t.coeff.clone()) * &prod[len - 1];
        }
        total
    }

    #[test]
    fn reduction_agrees_with_series_expansion() {
        let a = SubstitutionMatrix::block(2, 0, &[vec![1, 0]]);
        let s = wj_reduction(&wedge(), &a, 2).unwrap();
        for s0 in [rat(7, 1), rat(3, 2)] {
            let direct = s.evaluate(core::slice::from_ref(&s0)).unwrap();
            let series = reduction_via_series(&wedge(), &a, 2, core::slice::from_ref(&s0));
            assert_eq!(direct, series);
        }
        // expected closed form 2/((s+1)(s+3))
        let x = rat(7, 1);
        assert_eq!(s.evaluate(core::slice::from_ref(&x)).unwrap(), rat(1, 40));

        // the reduction only sees the closure: a half-open variant of the
        // same cone must reduce to the same value
        let half_open = hoc_from_i64(2, &[&[0, 1], &[2, -1]], &[&[1, 0]]);
        assert!(!half_open.is_empty());
        let series = reduction_via_series(&half_open, &a, 2, core::slice::from_ref(&x));
        assert_eq!(series, rat(1, 40));

        // two counting variables
        let a2 = SubstitutionMatrix::block(2, 0, &[vec![1, 0], vec![0, 1]]);
        let s2 = wj_reduction(&wedge(), &a2, 2).unwrap();
        let pt = [rat(2, 1), rat(5, 1)];
        assert_eq!(
            s2.evaluate(&pt).unwrap(),
            reduction_via_series(&wedge(), &a2, 2, &pt)
        );
        assert_eq!(s2.evaluate(&pt).unwrap(), rat(2, 45));
    }

    #[test]
    fn euler_coefficients_of_plane_curve_over_a_point() {
        // f = X1 + X2 + 1 on the origin cone: chi of the curve in the torus
        // is -1; the dimension condition picks the full member set only.
        let t = point_datum();
        assert_eq!(
            euler_coefficient(&t, &[], &NoCache).unwrap(),
            Int::from(1)
        );
        assert_eq!(
            euler_coefficient(&t, &[0], &NoCache).unwrap(),
            Int::from(-1)
        );
    }

    #[test]
    fn evaluation_of_constant_family_cancels() {
        // beta = 0 makes the counting variable invisible, so the whole
        // evaluation must be the zero function.
        let t = point_datum();
        let spec = Specialization::new(vec![0]);
        let s = evaluate_topologically(&t, &[vec![0, 0]], &spec, &NoCache).unwrap();
        for x in [rat(9, 1), rat(4, 1), rat(-5, 2)] {
            assert_eq!(
                s.evaluate(core::slice::from_ref(&x)).unwrap(),
                Rat::zero()
            );
        }
        let g = candidate_denominator(&s);
        let f = interpolate(&s, &g).unwrap();
        assert!(f.is_zero());
        assert_eq!(format!("{f}"), "0");
    }

    #[test]
    fn evaluation_of_free_rank_two_lattice() {
        // no members, full orthant cone, identity counting rows with shifts
        // 1 and 2: the classical count of finite-index sublattices of Z^2.
        let cone = hoc_from_i64(2, &[], &[]);
        let t = ToricDatum::new(cone, vec![], 0);
        let spec = Specialization::new(vec![1, 2]);
        let s =
            evaluate_topologically(&t, &[vec![1, 0], vec![0, 1]], &spec, &NoCache).unwrap();
        let g = candidate_denominator(&s);
        let f = interpolate(&s, &g).unwrap();
        assert_eq!(f, RationalFunction1V::new(vec![Int::one()], Int::one(), vec![(1, 0), (1, 1)]));
        assert_eq!(format!("{f}"), "1/(s*(s - 1))");
    }

    #[test]
    fn trivial_datum_evaluates_to_the_empty_sum() {
        let cone = hoc_from_i64(1, &[&[-1]], &[&[1]]);
        assert!(cone.is_empty());
        let t = ToricDatum::new(cone, vec![], 0);
        let spec = Specialization::new(vec![0]);
        let s = evaluate_topologically(&t, &[vec![1]], &spec, &NoCache).unwrap();
        assert!(s.terms.is_empty());
    }

    #[test]
    fn candidate_denominator_takes_per_term_maxima() {
        let s_factor = fac(&[1], 0);
        let s_minus_1 = fac(&[1], -1);
        // 1/(s(s-1)) + 1/s
        let sum = SimpleTermSum {
            terms: vec![
                term(rat(1, 1), vec![s_factor.clone(), s_minus_1.clone()]),
                term(rat(1, 1), vec![s_factor.clone()]),
            ],
        };
        let g = candidate_denominator(&sum);
        assert_eq!(
            g,
            BTreeMap::from([(s_factor.clone(), 1), (s_minus_1.clone(), 1)])
        );
        // 1/s^2 + 1/s
        let sum = SimpleTermSum {
            terms: vec![
                term(rat(1, 1), vec![s_factor.clone(), s_factor.clone()]),
                term(rat(1, 1), vec![s_factor.clone()]),
            ],
        };
        assert_eq!(candidate_denominator(&sum), BTreeMap::from([(s_factor, 2)]));
    }

    #[test]
    fn interpolation_merges_and_cancels() {
        // 2/((s+1)(s+3)) + 1/(s+1) = (s+5)/((s+1)(s+3))
        let sum = SimpleTermSum {
            terms: vec![
                term(rat(2, 1), vec![fac(&[1], 1), fac(&[1], 3)]),
                term(rat(1, 1), vec![fac(&[1], 1)]),
            ],
        };
        let f = interpolate(&sum, &candidate_denominator(&sum)).unwrap();
        assert_eq!(
            f,
            RationalFunction1V::new(
                vec![Int::from(5), Int::one()],
                Int::one(),
                vec![(1, -1), (1, -3)]
            )
        );
        // factors sort by (A, B), so roots appear in ascending order
        assert_eq!(format!("{f}"), "(s + 5)/((s + 3)*(s + 1))");

        // 1/(s(s-1)) - 1/(s(s-1)) + 1/s collapses to 1/s after cancelling
        let pair = vec![fac(&[1], 0), fac(&[1], -1)];
        let sum = SimpleTermSum {
            terms: vec![
                term(rat(1, 1), pair.clone()),
                term(rat(-1, 1), pair),
                term(rat(1, 1), vec![fac(&[1], 0)]),
            ],
        };
        let f = interpolate(&sum, &candidate_denominator(&sum)).unwrap();
        assert_eq!(
            f,
            RationalFunction1V::new(vec![Int::one()], Int::one(), vec![(1, 0)])
        );
    }

    #[test]
    fn rational_function_canonical_form_and_display() {
        let f = RationalFunction1V::new(
            vec![Int::from(3)],
            Int::from(2),
            vec![(1, 0), (1, 1), (2, 3)],
        );
        assert_eq!(format!("{f}"), "3/(2*s*(s - 1)*(2*s - 3))");
        assert_eq!(f.evaluate(&rat(2, 1)).unwrap(), rat(3, 4));
        assert_eq!(f.evaluate(&rat(1, 1)), None);

        // shared content moves into the constant, factor content extracts
        let g = RationalFunction1V::new(vec![Int::from(6)], Int::from(4), vec![(2, -2)]);
        assert_eq!(g.numerator(), &[Int::from(3)]);
        assert_eq!(g.constant(), &Int::from(4));
        assert_eq!(g.factors(), &[(1, -1)]);

        let h = RationalFunction1V::new(
            vec![Int::from(-1), Int::zero(), Int::from(2)],
            Int::one(),
            vec![(1, 1), (1, 1), (1, 0)],
        );
        assert_eq!(format!("{h}"), "(2*s^2 - 1)/(s*(s - 1)^2)");
    }

    /// Small regular datum on the open diagonal ray in two variables, with a
    /// two-point initial support allowing different exponent choices. The
    /// origin is excluded so the mixed term stays strictly above the rest.
    fn diagonal_datum(c1: i64, c2: i64, extra_monomial: bool) -> ToricDatum {
        let cone = hoc_from_i64(2, &[&[1, -1], &[-1, 1]], &[&[1, 1]]);
        let mut polys = vec![poly(
            2,
            &[(&[1, 0], c1), (&[0, 1], c2), (&[1, 1], 1)],
        )];
        if extra_monomial {
            polys.push(poly(2, &[(&[2, 1], 3)]));
        }
        ToricDatum::new(cone, polys, 0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn reduction_is_triangulation_independent(
            raw in proptest::collection::vec((0i64..4, 0i64..4, 0i64..4), 2..5),
            beta_row in proptest::collection::vec(0i64..3, 3),
            perm in 0usize..6,
        ) {
            let rays: Vec<Vec<i64>> = raw
                .iter()
                .map(|&(x, y, z)| vec![x, y, z])
                .filter(|v| v.iter().any(|&x| x > 0))
                .collect();
            prop_assume!(!rays.is_empty());
            let cone = cone_from_rays(3, &rays);
            let d = cone.dim().unwrap();
            let a = SubstitutionMatrix::block(3, 0, &[beta_row.clone()]);
            let w = wj_reduction(&cone, &a, d).unwrap();

            // permuted coordinates: same cone up to relabeling, so the
            // pulling order of the rays changes while values must not
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let p = perms[perm];
            let prays: Vec<Vec<i64>> = rays.iter().map(|v| p.iter().map(|&i| v[i]).collect()).collect();
            let pcone = cone_from_rays(3, &prays);
            let pbeta: Vec<i64> = p.iter().map(|&i| beta_row[i]).collect();
            let pa = SubstitutionMatrix::block(3, 0, &[pbeta]);
            let pw = wj_reduction(&pcone, &pa, d).unwrap();

            for k in 0..5u32 {
                let x = [rat(2 * k as i64 + 3, 2)];
                prop_assert_eq!(w.evaluate(&x).unwrap(), pw.evaluate(&x).unwrap());
            }
        }

        #[test]
        fn reduction_respects_degree_bounds(
            raw in proptest::collection::vec((0i64..4, 0i64..4, 0i64..4), 1..5),
            beta_row in proptest::collection::vec(0i64..3, 3),
        ) {
            let rays: Vec<Vec<i64>> = raw
                .iter()
                .map(|&(x, y, z)| vec![x, y, z])
                .filter(|v| v.iter().any(|&x| x > 0))
                .collect();
            prop_assume!(!rays.is_empty());
            let cone = cone_from_rays(3, &rays);
            let d = cone.dim().unwrap();
            let a = SubstitutionMatrix::block(3, 0, &[beta_row]);
            let w = wj_reduction(&cone, &a, d).unwrap();
            prop_assume!(!w.terms.is_empty());
            for t in &w.terms {
                prop_assert_eq!(t.factors.len(), d);
                prop_assert!(t.factors.iter().all(|f| f.a[0] >= 0 && f.b >= 1));
            }
            // growth check: on positive points every term is positive, and
            // degree between -d and 0 bounds the ratio across a 10^6 stretch
            let x1 = [rat(1_000_000, 1)];
            let x2 = [rat(1_000_000_000_000, 1)];
            let v1 = w.evaluate(&x1).unwrap();
            let v2 = w.evaluate(&x2).unwrap();
            prop_assert!(v1.is_positive() && v2.is_positive());
            prop_assert!(&v2 <= &(&v1 * rat(2, 1)));
            let drop = Rat::new(Int::one(), Int::from(10u64).pow(6 * d as u32) * Int::from(2));
            prop_assert!(&v2 >= &(&v1 * drop));
        }

        #[test]
        fn reduction_empty_exactly_when_dimension_falls_short(
            raw in proptest::collection::vec((0i64..4, 0i64..4, 0i64..4), 1..4),
        ) {
            let rays: Vec<Vec<i64>> = raw
                .iter()
                .map(|&(x, y, z)| vec![x, y, z])
                .filter(|v| v.iter().any(|&x| x > 0))
                .collect();
            prop_assume!(!rays.is_empty());
            let cone = cone_from_rays(3, &rays);
            let d = cone.dim().unwrap();
            let a = SubstitutionMatrix::block(3, 0, &[vec![1, 1, 1]]);
            prop_assert!(!wj_reduction(&cone, &a, d).unwrap().terms.is_empty());
            prop_assert!(wj_reduction(&cone, &a, d + 1).unwrap().terms.is_empty());
        }

        #[test]
        fn evaluation_is_independent_of_exponent_choice(
            c1 in 1i64..5,
            c2 in 1i64..5,
            extra in proptest::bool::ANY,
            b1 in 0i64..3,
            b2 in 0i64..3,
            shift in 0i64..3,
        ) {
            let t = diagonal_datum(c1, c2, extra);
            prop_assume!(toric::is_regular(&t).unwrap());
            let beta = vec![vec![b1, b2]];
            let spec = Specialization::new(vec![shift]);
            let r = if extra { 2 } else { 1 };
            // lexicographically smallest versus largest support choice
            let lo: Vec<Exp> = toric::initial_forms(&t)
                .unwrap()
                .iter()
                .map(|(_, f)| f.support().first().cloned().unwrap())
                .collect();
            let hi: Vec<Exp> = toric::initial_forms(&t)
                .unwrap()
                .iter()
                .map(|(_, f)| f.support().last().cloned().unwrap())
                .collect();
            prop_assert_eq!(lo.len(), r);
            let mut sum_lo = SimpleTermSum::default();
            let mut sum_hi = SimpleTermSum::default();
            evaluate_with_gammas(&t, &beta, &spec, &NoCache, Some(lo), &mut |t| sum_lo.terms.push(t)).unwrap();
            evaluate_with_gammas(&t, &beta, &spec, &NoCache, Some(hi), &mut |t| sum_hi.terms.push(t)).unwrap();
            for k in 0..5u32 {
                let x = [rat(2 * k as i64 + 7, 2)];
                prop_assert_eq!(sum_lo.evaluate(&x), sum_hi.evaluate(&x));
            }
        }

        #[test]
        fn interpolation_reconstructs_random_sums(
            raw in proptest::collection::vec(
                ((-20i64..20, 1i64..6), proptest::collection::vec(0usize..6, 0..5)),
                1..40,
            ),
        ) {
            let pool = [
                fac(&[1], 0),
                fac(&[1], -1),
                fac(&[1], 1),
                fac(&[2], -3),
                fac(&[3], 1),
                fac(&[1], 2),
            ];
            let sum = SimpleTermSum {
                terms: raw
                    .iter()
                    .map(|((p, q), picks)| term(
                        rat(*p, *q),
                        picks.iter().map(|&i| pool[i].clone()).collect(),
                    ))
                    .collect(),
            };
            let g = candidate_denominator(&sum);
            let f = interpolate(&sum, &g).unwrap();
            for x in [rat(101, 1), rat(103, 2), rat(-7, 1)] {
                let direct = sum.evaluate(core::slice::from_ref(&x)).unwrap();
                prop_assert_eq!(f.evaluate(&x).unwrap(), direct);
            }
        }
    }

    /// Closed cone generated by the given rays, as a half-open cone inside
    /// the nonnegative orthant.
    fn cone_from_rays(n: usize, rays: &[Vec<i64>]) -> HalfOpenCone {
        use crate::polyhedra::Cone;
        let c = Cone::from_rays(
            n,
            rays.iter()
                .map(|v| v.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        );
        let (weak, eq) = c.constraints();
        let mut rows = weak;
        for e in eq {
            rows.push(e.iter().map(|x| -x).collect());
            rows.push(e);
        }
        HalfOpenCone::new(n, rows, Vec::new())
    }
}
