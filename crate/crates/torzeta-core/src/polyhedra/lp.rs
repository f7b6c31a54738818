//! Exact rational linear feasibility via phase-one simplex with Bland's rule.
//!
//! Constraints have the form `<a, x> >= b` with integer `a` and `b`, over
//! variables implicitly bounded below by zero. All half-open cone models in
//! this crate include the nonnegative-orthant rows explicitly, so the
//! implicit bound loses no generality and keeps the tableau in standard form.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// One constraint `<normal, x> >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Int>,
    pub rhs: Int,
}

/// Returns a feasible point of `{x >= 0 : <a_i, x> >= b_i for all i}`, or
/// `None` if the system is infeasible. Exact arithmetic throughout; Bland's
/// pivoting rule guarantees termination.
pub fn feasible_point(constraints: &[Constraint], n: usize) -> Option<Vec<Rat>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rat::zero(); n]);
    }
    // Tableau columns: n structural, m surplus, then one artificial per
    // constraint with positive rhs. Rows scaled so every initial basis
    // column is +1.
    let art_rows: Vec<usize> = (0..m)
        .filter(|&i| constraints[i].rhs.is_positive())
        .collect();
    let ncols = n + m + art_rows.len();
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = n + m;
    for (i, c) in constraints.iter().enumerate() {
        debug_assert_eq!(c.normal.len(), n);
        let mut row = vec![Rat::zero(); ncols];
        let positive = c.rhs.is_positive();
        // <a, x> - s = b; negate when b <= 0 so the surplus column is basic.
        let sign = if positive { Int::one() } else { -Int::one() };
        for (j, a) in c.normal.iter().enumerate() {
            row[j] = Rat::from_integer(a * &sign);
        }
        row[n + i] = Rat::from_integer(-&sign);
        if positive {
            row[next_art] = Rat::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(n + i);
        }
        rhs.push(Rat::from_integer(&c.rhs * &sign));
        t.push(row);
    }
    debug_assert!(rhs.iter().all(|b| !b.is_negative()));

    // Phase-one objective: minimize the sum of artificial variables.
    // Reduced-cost row w[j] = sum of rows with artificial basis - cost[j];
    // optimality when all w[j] <= 0 (minimization form).
    let mut w = vec![Rat::zero(); ncols];
    let mut wval = Rat::zero();
    for (i, &b) in basis.iter().enumerate() {
        if b >= n + m {
            for j in 0..ncols {
                let add = t[i][j].clone();
                w[j] += add;
            }
            wval += rhs[i].clone();
        }
    }
    for j in n + m..ncols {
        w[j] -= Rat::one();
    }

    loop {
        // Bland: entering column = smallest index with positive reduced cost.
        let Some(enter) = (0..ncols).find(|&j| w[j].is_positive()) else {
            break;
        };
        // Ratio test; Bland tie-break on smallest basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &rhs[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((li, _)) = leave else {
            // Unbounded phase-one objective is impossible (bounded below by
            // zero); reaching here would mean a logic error.
            unreachable!("phase-one simplex cannot be unbounded");
        };
        // Pivot on (li, enter).
        let piv = t[li][enter].clone();
        let inv = piv.recip();
        for j in 0..ncols {
            let v = &t[li][j] * &inv;
            t[li][j] = v;
        }
        let v = &rhs[li] * &inv;
        rhs[li] = v;
        for i in 0..m {
            if i != li && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..ncols {
                    let v = &t[i][j] - &f * &t[li][j];
                    t[i][j] = v;
                }
                let v = &rhs[i] - &f * &rhs[li];
                rhs[i] = v;
            }
        }
        if !w[enter].is_zero() {
            let f = w[enter].clone();
            for j in 0..ncols {
                let v = &w[j] - &f * &t[li][j];
                w[j] = v;
            }
            wval -= &f * &rhs[li];
        }
        basis[li] = enter;
    }

    if !wval.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = rhs[i].clone();
        }
    }
    debug_assert!(constraints.iter().all(|c| {
        crate::arith::dot_rat_int(&x, &c.normal) >= Rat::from_integer(c.rhs.clone())
    }));
    Some(x)
}
