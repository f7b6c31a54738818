//! Shared exact arithmetic helpers: integer/rational vectors and matrices,
//! Smith normal form, fraction-free determinants and ranks, small bitsets.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Greatest common divisor of the absolute values of a slice, 0 for all-zero.
pub fn gcd_i64(v: &[i64]) -> i64 {
    let mut g: i64 = 0;
    for &x in v {
        g = g.gcd(&x);
        if g == 1 {
            break;
        }
    }
    g
}

/// Divides an integer vector by the gcd of its entries (no-op on zero vectors).
pub fn primitive_int(mut v: Vec<Int>) -> Vec<Int> {
    let mut g = Int::zero();
    for x in &v {
        g = g.gcd(x);
        if g.is_one() {
            return v;
        }
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    for x in &mut v {
        *x /= &g;
    }
    v
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc += (*x as i128) * (*y as i128);
    }
    i64::try_from(acc).expect("dot product overflow")
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_int_i64(a: &[Int], b: &[i64]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Int::from(*y);
    }
    acc
}

pub fn dot_rat_int(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Rat::from_integer(y.clone());
    }
    acc
}

pub fn dot_rat_i64(a: &[Rat], b: &[i64]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Rat::from_integer(Int::from(*y));
    }
    acc
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Clears denominators of a rational vector, returning a primitive integer
/// vector pointing in the same direction.
pub fn rat_vec_to_primitive_int(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    primitive_int(v.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

/// Rank of an integer matrix (fraction-free Gaussian elimination).
pub fn rank_int(rows: &[Vec<Int>]) -> usize {
    let mut m: Vec<Vec<Int>> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < m.len() && col < ncols {
        let pivot = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[rank][col].clone();
            let b = m[i][col].clone();
            for j in col..ncols {
                let v = &m[i][j] * &a - &m[rank][j] * &b;
                m[i][j] = v;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    let cleared: Vec<Vec<Int>> = rows.iter().map(|r| rat_vec_to_primitive_int(r)).collect();
    rank_int(&cleared)
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Determinant of a square integer matrix via Bareiss fraction-free
/// elimination.
pub fn det_int(mat: &[Vec<Int>]) -> Int {
    let n = mat.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<Int>> = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves `M x = b` over the rationals, returning any solution if one exists.
pub fn solve_rat(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let nrows = m.len();
    debug_assert_eq!(nrows, b.len());
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for j in col..=ncols {
            let v = &a[row][j] * &inv;
            a[row][j] = v;
        }
        for i in 0..nrows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=ncols {
                    let v = &a[i][j] - &f * &a[row][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == nrows {
            break;
        }
    }
    for i in row..nrows {
        if !a[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for &(r, c) in &pivots {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}

/// Smith normal form of an integer matrix.
///
/// Returns `(u, d, v)` with `u * b * v = diag(d)` (as an m-by-n matrix whose
/// only nonzero entries are the leading diagonal), `u` and `v` unimodular,
/// and each diagonal entry nonnegative and dividing the next.
pub struct Snf {
    pub u: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
    /// Diagonal entries, length `min(m, n)`; trailing entries may be zero.
    pub diag: Vec<Int>,
}

pub fn smith_normal_form(b: &[Vec<Int>]) -> Snf {
    let m = b.len();
    let n = if m == 0 { 0 } else { b[0].len() };
    let mut a: Vec<Vec<Int>> = b.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let k = m.min(n);
    for t in 0..k {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Trailing block is zero; done.
                let mut diag: Vec<Int> = (0..k).map(|i| a[i][i].clone()).collect();
                fix_divisibility(&mut a, &mut u, &mut v, &mut diag, t);
                return Snf { u, v, diag };
            };
            if pi != t {
                a.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                swap_cols(&mut a, pj, t);
                swap_cols(&mut v, pj, t);
            }
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = div_round(&a[i][t], &a[t][t]);
                    if !q.is_zero() {
                        row_sub(&mut a, i, t, &q);
                        row_sub(&mut u, i, t, &q);
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = div_round(&a[t][j], &a[t][t]);
                    if !q.is_zero() {
                        col_sub(&mut a, j, t, &q);
                        col_sub(&mut v, j, t, &q);
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                if a[t][t].is_negative() {
                    negate_row(&mut a, t);
                    negate_row(&mut u, t);
                }
                break;
            }
        }
    }
    let mut diag: Vec<Int> = (0..k).map(|i| a[i][i].clone()).collect();
    fix_divisibility(&mut a, &mut u, &mut v, &mut diag, k);
    Snf { u, v, diag }
}

/// Restores the divisibility chain d1 | d2 | ... among the first `upto`
/// diagonal entries (entries from `upto` on are zero).
fn fix_divisibility(
    a: &mut [Vec<Int>],
    u: &mut [Vec<Int>],
    v: &mut [Vec<Int>],
    diag: &mut [Int],
    upto: usize,
) {
    if upto == 0 {
        return;
    }
    loop {
        let mut changed = false;
        for i in 0..upto - 1 {
            let (d1, d2) = (diag[i].clone(), diag[i + 1].clone());
            if d1.is_zero() || (&d2 % &d1).is_zero() {
                continue;
            }
            changed = true;
            // Standard 2x2 fixup: gcd/lcm via unimodular row and column ops.
            let g = d1.gcd(&d2);
            let l = &d1 / &g * &d2;
            // [d1 0; 0 d2] -> [g 0; 0 lcm]. Realize with explicit ops:
            // add col i+1 to col i, then clear.
            col_add(a, i, i + 1);
            col_add(v, i, i + 1);
            // Now column i is (d1, d2)^T in rows i, i+1. Row-reduce to gcd.
            gcd_two_rows(a, u, i, i + 1);
            // Clear the fill-in above/right created in the 2x2 block.
            clear_block(a, u, v, i);
            diag[i] = g;
            diag[i + 1] = l;
            let sign_fix = a[i][i].is_negative();
            if sign_fix {
                negate_row(a, i);
                negate_row(u, i);
            }
            if a[i + 1][i + 1].is_negative() {
                negate_row(a, i + 1);
                negate_row(u, i + 1);
            }
            debug_assert_eq!(a[i][i], diag[i]);
            debug_assert_eq!(a[i + 1][i + 1], diag[i + 1]);
        }
        if !changed {
            break;
        }
    }
}

/// Euclidean elimination on rows r1, r2 restricted to making a[r2][r1-col]
/// zero; assumes the only nonzero columns of these rows are r1 and r2.
fn gcd_two_rows(a: &mut [Vec<Int>], u: &mut [Vec<Int>], r1: usize, r2: usize) {
    loop {
        if a[r2][r1].is_zero() {
            break;
        }
        if a[r1][r1].is_zero() {
            a.swap(r1, r2);
            u.swap(r1, r2);
            continue;
        }
        let q = div_round(&a[r2][r1], &a[r1][r1]);
        if q.is_zero() {
            a.swap(r1, r2);
            u.swap(r1, r2);
        } else {
            row_sub(a, r2, r1, &q);
            row_sub(u, r2, r1, &q);
        }
    }
}

/// After the 2x2 gcd step the block may have an off-diagonal entry at
/// (r, r+1); clear it with one column op.
fn clear_block(a: &mut [Vec<Int>], _u: &mut [Vec<Int>], v: &mut [Vec<Int>], r: usize) {
    if !a[r][r + 1].is_zero() {
        let q = &a[r][r + 1] / &a[r][r];
        debug_assert!((&a[r][r + 1] % &a[r][r]).is_zero());
        col_sub(a, r + 1, r, &q);
        col_sub(v, r + 1, r, &q);
    }
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_sub(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        *d -= q * s;
    }
}

fn col_sub(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * &s;
    }
}

fn col_add(m: &mut [Vec<Int>], dst: usize, src: usize) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] += &s;
    }
}

fn negate_row(m: &mut [Vec<Int>], r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Nearest-integer division (rounds half toward zero); keeps Euclidean steps
/// short.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r: Int = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let n = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert!(b.len() == k);
    let mut out = vec![vec![Int::zero(); n]; m];
    for i in 0..m {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..n {
                let add = &a[i][t] * &b[t][j];
                out[i][j] += add;
            }
        }
    }
    out
}

/// Fixed-capacity bitset used for incidence bookkeeping in the polyhedral
/// routines.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_mat(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(det_int(&int_mat(&[&[2, 0], &[0, 3]])), Int::from(6));
        assert_eq!(det_int(&int_mat(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(
            det_int(&int_mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            Int::zero()
        );
        assert_eq!(
            det_int(&int_mat(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]])),
            Int::from(-90)
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_int(&int_mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_int(&int_mat(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        assert_eq!(rank_int(&[]), 0);
    }

    #[test]
    fn solve_basic() {
        let m: Vec<Vec<Rat>> = vec![
            vec![crate::rat_int(1), crate::rat_int(1)],
            vec![crate::rat_int(1), crate::rat_int(-1)],
        ];
        let b = vec![crate::rat_int(3), crate::rat_int(1)];
        let x = solve_rat(&m, &b).unwrap();
        assert_eq!(x, vec![crate::rat_int(2), crate::rat_int(1)]);
        let m2: Vec<Vec<Rat>> = vec![
            vec![crate::rat_int(1), crate::rat_int(1)],
            vec![crate::rat_int(2), crate::rat_int(2)],
        ];
        let b2 = vec![crate::rat_int(1), crate::rat_int(3)];
        assert!(solve_rat(&m2, &b2).is_none());
    }

    #[test]
    fn snf_known() {
        // Classic example: diag(2, 6) after reduction.
        let b = int_mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = smith_normal_form(&b);
        assert_eq!(
            s.diag,
            vec![Int::from(2), Int::from(2), Int::from(156)] // 2*2*156 = |det| = 624
        );
        check_snf(&b, &s);
    }

    fn check_snf(b: &[Vec<Int>], s: &Snf) {
        let prod = mat_mul(&mat_mul(&s.u, b), &s.v);
        let m = b.len();
        let n = if m == 0 { 0 } else { b[0].len() };
        for i in 0..m {
            for j in 0..n {
                let expect = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    Int::zero()
                };
                assert_eq!(prod[i][j], expect, "mismatch at ({i},{j})");
            }
        }
        // Divisibility chain.
        for w in s.diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", s.diag);
            } else {
                assert!(w[1].is_zero());
            }
        }
        // Unimodularity.
        assert_eq!(det_int(&s.u).abs(), Int::one());
        assert_eq!(det_int(&s.v).abs(), Int::one());
    }

    proptest! {
        #[test]
        fn snf_random(rows in proptest::collection::vec(
            proptest::collection::vec(-20i64..20, 1..5), 1..5)) {
            let n = rows[0].len();
            let b: Vec<Vec<Int>> = rows
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.resize(n, 0);
                    int_vec(&r)
                })
                .collect();
            let s = smith_normal_form(&b);
            check_snf(&b, &s);
        }

        #[test]
        fn det_matches_rank(rows in proptest::collection::vec(
            proptest::collection::vec(-9i64..9, 3), 3)) {
            let b: Vec<Vec<Int>> = rows.iter().map(|r| int_vec(r)).collect();
            let d = det_int(&b);
            let r = rank_int(&b);
            prop_assert_eq!(d.is_zero(), r < 3);
            // Determinant magnitude equals product of SNF invariants.
            let s = smith_normal_form(&b);
            let prod: Int = s.diag.iter().product();
            prop_assert_eq!(d.abs(), prod.abs());
        }
    }
}
