//! Lattice-point generating functions of half-open cones.
//!
//! A half-open cone's generating function is assembled by inclusion-exclusion
//! over its strict constraints (each exchanged for an equality), a pulling
//! triangulation of each resulting closed cone, and a half-open decomposition
//! of the triangulation cells chosen so that the cells tile the cone
//! disjointly. Cell contributions are the classical parallelepiped-numerator
//! over product-of-(1 - lambda^ray) expressions.
//!
//! This machinery is exact but enumerative; it is meant for moderate sizes
//! (cross-checks and small inputs), not for the main evaluation pipeline.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::arith::{dot_rat_int, solve_rat};
use crate::polyhedra::dd::double_description;
use crate::polyhedra::faces::face_lattice;
use crate::polyhedra::{HalfOpenCone, PolyhedraError};
use crate::{Int, Rat};

/// One signed summand `coeff * (sum of lambda^p) / prod(1 - lambda^ray)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfTerm {
    pub coeff: Int,
    pub numerator: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingFunction {
    pub n: usize,
    pub terms: Vec<GfTerm>,
}

/// Inverse of a unimodular integer matrix.
fn inv_unimodular(v: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = v.len();
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer(v[i][j].clone())).collect())
        .collect();
    let mut out = vec![vec![Int::zero(); n]; n];
    for col in 0..n {
        let b: Vec<Rat> = (0..n)
            .map(|i| {
                if i == col {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let x = solve_rat(&m, &b).expect("unimodular matrix is invertible");
        for (i, xi) in x.iter().enumerate() {
            debug_assert!(xi.is_integer());
            out[i][col] = xi.to_integer();
        }
    }
    out
}

/// Lattice points of the fundamental parallelepiped of independent rays,
/// with the facets listed in `open` (by ray position) excluded: coordinates
/// range in `(0, 1]` there and `[0, 1)` elsewhere.
pub fn parallelepiped_points_half_open(
    n: usize,
    rays: &[Vec<Int>],
    open: &[usize],
) -> Vec<Vec<Int>> {
    let e = rays.len();
    if e == 0 {
        return vec![vec![Int::zero(); n]];
    }
    let snf = crate::arith::smith_normal_form(rays);
    let index: Int = snf.diag.iter().product();
    debug_assert!(index.is_positive(), "rays must be independent");
    let vinv = inv_unimodular(&snf.v);
    // Rows 0..e of V^-1 form a lattice basis of Z^n intersected with the ray
    // span; the ray lattice sits inside with elementary divisors diag.
    let mut reps: Vec<Vec<Int>> = vec![vec![Int::zero(); n]];
    for i in 0..e {
        let d = match u64::try_from(&snf.diag[i]) {
            Ok(d) => d,
            Err(_) => panic!("parallelepiped index too large to enumerate"),
        };
        let mut next = Vec::with_capacity(reps.len() * d as usize);
        for r in &reps {
            for k in 0..d {
                let mut x = r.clone();
                for (xj, bj) in x.iter_mut().zip(&vinv[i]) {
                    *xj += Int::from(k) * bj;
                }
                next.push(x);
            }
        }
        reps = next;
    }
    // Reduce each representative into the (half-open) box via barycentric
    // coordinates.
    let mat: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..e).map(|j| Rat::from_integer(rays[j][i].clone())).collect())
        .collect();
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(reps.len());
    for x in reps {
        let b: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        let a = solve_rat(&mat, &b).expect("representative lies in the ray span");
        let mut coords: Vec<Rat> = a.iter().map(|ai| ai - ai.floor()).collect();
        for &i in open {
            if coords[i].is_zero() {
                coords[i] = Rat::one();
            }
        }
        let mut pt = vec![Rat::zero(); n];
        for (j, c) in coords.iter().enumerate() {
            for (pk, rk) in pt.iter_mut().zip(&rays[j]) {
                *pk += c * Rat::from_integer(rk.clone());
            }
        }
        let pt: Vec<Int> = pt
            .into_iter()
            .map(|v| {
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        out.push(pt);
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(Int::from(out.len() as u64), index);
    out
}

/// Some vector `u` with `<u, rays[j]> = delta_{ij}`; lies in the dual span.
fn cell_facet_normal(n: usize, rays: &[Vec<Int>], i: usize) -> Vec<Rat> {
    let e = rays.len();
    let m: Vec<Vec<Rat>> = (0..e)
        .map(|j| (0..n).map(|k| Rat::from_integer(rays[j][k].clone())).collect())
        .collect();
    let b: Vec<Rat> = (0..e)
        .map(|j| if j == i { Rat::one() } else { Rat::zero() })
        .collect();
    solve_rat(&m, &b).expect("independent rays admit dual vectors")
}

/// Whether the facet of the cell opposite ray `i` should be excluded, using
/// a symbolically perturbed interior point `w0 + sum eps^j all_rays[j]`.
fn facet_excluded(u: &[Rat], w0: &[Int], all_rays: &[Vec<Int>]) -> bool {
    let s = dot_rat_int(u, w0);
    if !s.is_zero() {
        return s.is_negative();
    }
    for r in all_rays {
        let t = dot_rat_int(u, r);
        if !t.is_zero() {
            return t.is_negative();
        }
    }
    unreachable!("perturbation direction spans the cell's span");
}

/// The generating function `sum over C0 lattice points of lambda^point` as a
/// signed combination of simplicial-cone series.
pub fn generating_function(c0: &HalfOpenCone) -> GeneratingFunction {
    let n = c0.ambient_dim();
    if c0.is_empty() {
        return GeneratingFunction {
            n,
            terms: Vec::new(),
        };
    }
    let strict = c0.strict();
    assert!(
        strict.len() <= 16,
        "generating_function is enumerative; too many strict constraints"
    );
    let mut terms = Vec::new();
    for mask in 0u32..(1 << strict.len()) {
        let sign = if mask.count_ones() % 2 == 0 {
            Int::one()
        } else {
            -Int::one()
        };
        let mut rows: Vec<Vec<Int>> = c0.weak().to_vec();
        for (i, s) in strict.iter().enumerate() {
            rows.push(s.clone());
            if mask & (1 << i) != 0 {
                rows.push(s.iter().map(|x| -x).collect());
            }
        }
        let ddr = double_description(&rows, n);
        debug_assert!(
            ddr.lineality.is_empty(),
            "cones inside the orthant are pointed"
        );
        if ddr.rays.is_empty() {
            terms.push(GfTerm {
                coeff: sign,
                numerator: vec![vec![Int::zero(); n]],
                rays: Vec::new(),
            });
            continue;
        }
        let lat = face_lattice(n, &ddr.rays);
        let mut w0 = vec![Int::zero(); n];
        for r in &ddr.rays {
            for (w, x) in w0.iter_mut().zip(r) {
                *w += x;
            }
        }
        for cell in lat.pulling_cells() {
            let rays = lat.cell_rays(cell);
            let mut open = Vec::new();
            for i in 0..rays.len() {
                let u = cell_facet_normal(n, &rays, i);
                if facet_excluded(&u, &w0, &ddr.rays) {
                    open.push(i);
                }
            }
            let numerator = parallelepiped_points_half_open(n, &rays, &open);
            terms.push(GfTerm {
                coeff: sign.clone(),
                numerator,
                rays,
            });
        }
    }
    GeneratingFunction { n, terms }
}

/// Applies the monomial substitution `lambda^v -> Y^(v A)` to every numerator
/// point and denominator ray. `a` is n-by-(m+1), entrywise nonnegative, with
/// an all-ones first column (so that nonzero nonnegative rays stay nonzero).
pub fn substitute_monomial(
    g: &GeneratingFunction,
    a: &[Vec<Int>],
) -> Result<GeneratingFunction, PolyhedraError> {
    if a.len() != g.n {
        return Err(PolyhedraError::DimensionMismatch);
    }
    if a.iter().any(|row| row.first() != Some(&Int::one())) {
        return Err(PolyhedraError::BadFirstColumn);
    }
    if a.iter().any(|row| row.iter().any(|x| x.is_negative())) {
        return Err(PolyhedraError::BadFirstColumn);
    }
    let m1 = a.first().map(|r| r.len()).unwrap_or(0);
    let map = |v: &Vec<Int>| -> Vec<Int> {
        (0..m1)
            .map(|j| (0..g.n).map(|i| &v[i] * &a[i][j]).sum())
            .collect()
    };
    let terms = g
        .terms
        .iter()
        .map(|t| GfTerm {
            coeff: t.coeff.clone(),
            numerator: t.numerator.iter().map(&map).collect(),
            rays: t.rays.iter().map(&map).collect(),
        })
        .collect();
    Ok(GeneratingFunction { n: m1, terms })
}

/// Series expansion truncated to the box `[0, bound]^n`; exact coefficients.
pub fn series(g: &GeneratingFunction, bound: i64) -> BTreeMap<Vec<i64>, Int> {
    let n = g.n;
    let mut boxpts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(boxpts.len() * (bound as usize + 1));
        for p in &boxpts {
            for k in 0..=bound {
                let mut q = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        boxpts = next;
    }
    boxpts.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    let mut total: BTreeMap<Vec<i64>, Int> = BTreeMap::new();
    for t in &g.terms {
        let mut acc: BTreeMap<Vec<i64>, Int> = BTreeMap::new();
        for p in &t.numerator {
            let Some(p64) = to_i64_in_box(p, bound) else {
                continue;
            };
            *acc.entry(p64).or_insert_with(Int::zero) += Int::one();
        }
        for ray in &t.rays {
            let r64: Vec<i64> = ray
                .iter()
                .map(|x| i64::try_from(x).expect("ray entry fits i64"))
                .collect();
            // Geometric-series convolution, ascending by coordinate sum.
            for p in &boxpts {
                let prev: Option<Vec<i64>> = p
                    .iter()
                    .zip(&r64)
                    .map(|(a, b)| {
                        let d = a - b;
                        if d < 0 {
                            None
                        } else {
                            Some(d)
                        }
                    })
                    .collect();
                if let Some(prev) = prev {
                    if let Some(v) = acc.get(&prev).cloned() {
                        *acc.entry(p.clone()).or_insert_with(Int::zero) += v;
                    }
                }
            }
        }
        for (k, v) in acc {
            if !v.is_zero() {
                let e = total.entry(k).or_insert_with(Int::zero);
                *e += &v * &t.coeff;
            }
        }
    }
    total.retain(|_, v| !v.is_zero());
    total
}

fn to_i64_in_box(p: &[Int], bound: i64) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(p.len());
    for x in p {
        let v = i64::try_from(x).ok()?;
        if !(0..=bound).contains(&v) {
            return None;
        }
        out.push(v);
    }
    Some(out)
}
