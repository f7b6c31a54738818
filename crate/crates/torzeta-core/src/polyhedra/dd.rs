//! Double description method: converts a homogeneous constraint system
//! `{x : <a_j, x> >= 0}` into a lineality basis plus extreme rays, with
//! exact integer arithmetic and per-ray incidence sets.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::arith::{dot_int, primitive_int, BitSet};
use crate::Int;

#[derive(Clone, Debug)]
pub struct DdResult {
    /// Integer basis of the lineality space (empty when pointed).
    pub lineality: Vec<Vec<Int>>,
    /// Primitive extreme rays (modulo lineality), lexicographically sorted.
    pub rays: Vec<Vec<Int>>,
    /// `tight[i]` = indices of input constraints satisfied with equality by
    /// `rays[i]`; aligned with `rays`.
    pub tight: Vec<BitSet>,
}

struct Ray {
    v: Vec<Int>,
    tight: BitSet,
}

/// Runs incremental double description starting from the full space.
pub fn double_description(constraints: &[Vec<Int>], n: usize) -> DdResult {
    let m = constraints.len();
    let mut lineality: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::from(1) } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, a) in constraints.iter().enumerate() {
        debug_assert_eq!(a.len(), n);
        let pivot = lineality.iter().position(|b| !dot_int(a, b).is_zero());
        if let Some(pi) = pivot {
            let b0 = lineality.remove(pi);
            let d0 = dot_int(a, &b0);
            for b in lineality.iter_mut() {
                let val = dot_int(a, b);
                if !val.is_zero() {
                    for (x, y) in b.iter_mut().zip(&b0) {
                        *x = &*x * &d0 - &val * y;
                    }
                    *b = primitive_int(core::mem::take(b));
                }
            }
            let d0_abs = d0.abs();
            let sign = if d0.is_negative() {
                Int::from(-1)
            } else {
                Int::from(1)
            };
            for r in rays.iter_mut() {
                let val = dot_int(a, &r.v);
                if !val.is_zero() {
                    // r - (val/d0) b0, scaled by |d0| to stay integral.
                    for (x, y) in r.v.iter_mut().zip(&b0) {
                        *x = &*x * &d0_abs - &sign * &val * y;
                    }
                    r.v = primitive_int(core::mem::take(&mut r.v));
                }
                debug_assert!(dot_int(a, &r.v).is_zero());
                // After projection every pre-existing ray lies on this
                // constraint's hyperplane.
                r.tight.insert(ci);
            }
            // The freed basis vector becomes a ray on the positive side of
            // this constraint; it is tight for every earlier constraint.
            let v = if d0.is_negative() {
                b0.iter().map(|x| -x).collect()
            } else {
                b0
            };
            let mut tight = BitSet::new(m);
            for j in 0..ci {
                tight.insert(j);
            }
            rays.push(Ray {
                v: primitive_int(v),
                tight,
            });
            continue;
        }

        // Constraint vanishes on the lineality space; split the rays.
        let vals: Vec<Int> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.tight.insert(ci);
                }
            }
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for (pi, pval) in vals.iter().enumerate() {
            if !pval.is_positive() {
                continue;
            }
            for (mi, mval) in vals.iter().enumerate() {
                if !mval.is_negative() {
                    continue;
                }
                let common = rays[pi].tight.intersection(&rays[mi].tight);
                // Combinatorial adjacency: no third ray is tight on every
                // constraint where both p and m are tight.
                let adjacent = rays.iter().enumerate().all(|(oi, o)| {
                    oi == pi || oi == mi || !common.is_subset(&o.tight)
                });
                if !adjacent {
                    continue;
                }
                // pval * m - mval * p lies on the hyperplane, inside the cone.
                let v: Vec<Int> = rays[mi]
                    .v
                    .iter()
                    .zip(&rays[pi].v)
                    .map(|(mv, pv)| pval * mv - mval * pv)
                    .collect();
                let mut tight = common;
                tight.insert(ci);
                new_rays.push(Ray {
                    v: primitive_int(v),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (r, val) in rays.into_iter().zip(&vals) {
            if val.is_zero() {
                let mut r = r;
                r.tight.insert(ci);
                kept.push(r);
            } else if val.is_positive() {
                kept.push(r);
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut lineality: Vec<Vec<Int>> = lineality.into_iter().map(primitive_int).collect();
    lineality.sort();
    let mut pairs: Vec<(Vec<Int>, BitSet)> = rays.into_iter().map(|r| (r.v, r.tight)).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (rays, tight): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    DdResult {
        lineality,
        rays,
        tight,
    }
}
