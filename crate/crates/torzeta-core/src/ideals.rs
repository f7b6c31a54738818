//! Polynomial-ideal computations over the rationals: Gröbner bases via
//! Buchberger's algorithm with the product and chain criteria, radical
//! membership through the Rabinowitsch trick, Jacobian minors, and
//! saturation by the product of the coordinates.
//!
//! Internally everything runs fraction-free on content-stripped integer
//! polynomials; the public interface speaks `LaurentPolynomial` (restricted
//! to nonnegative exponents).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPolynomial;
use crate::{Exp, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealsError {
    NegativeExponent,
    MoreEquationsThanVariables,
}

impl core::fmt::Display for IdealsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            IdealsError::NegativeExponent => {
                write!(f, "ideal generators must be honest polynomials")
            }
            IdealsError::MoreEquationsThanVariables => {
                write!(f, "more polynomials than variables; no Jacobian minors")
            }
        }
    }
}

impl core::error::Error for IdealsError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonomialOrder {
    /// Degree-reverse-lexicographic (the default everywhere).
    DegRevLex,
    /// Plain lexicographic, first variable biggest.
    Lex,
    /// Eliminates the last variable: compares its exponent first, then falls
    /// back to degrevlex. Monomials containing the last variable dominate
    /// all monomials free of it.
    ElimLast,
}

fn degrevlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            // Smaller exponent in the last differing position wins.
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Compares two exponent vectors; `Greater` means the first monomial is
/// larger in the given order.
pub fn cmp_monomials(order: MonomialOrder, a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::DegRevLex => degrevlex(a, b),
        MonomialOrder::ElimLast => {
            let last = a.len() - 1;
            a[last].cmp(&b[last]).then_with(|| degrevlex(a, b))
        }
    }
}

/// Integer polynomial, content-stripped with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct IPoly {
    terms: BTreeMap<Exp, Int>,
}

impl IPoly {
    fn zero() -> Self {
        IPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_laurent(f: &LaurentPolynomial) -> Result<Self, IdealsError> {
        let mut lcm = Int::one();
        for (e, c) in f.terms() {
            if e.iter().any(|&x| x < 0) {
                return Err(IdealsError::NegativeExponent);
            }
            lcm = lcm.lcm(c.denom());
        }
        let terms: BTreeMap<Exp, Int> = f
            .terms()
            .map(|(e, c)| (e.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let mut p = IPoly { terms };
        p.normalize(MonomialOrder::DegRevLex);
        Ok(p)
    }

    fn to_laurent(&self, n: usize) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            n,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), Rat::from_integer(c.clone()))),
        )
    }

    fn leading(&self, order: MonomialOrder) -> (&Exp, &Int) {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| cmp_monomials(order, a, b))
            .expect("leading term of nonzero polynomial")
    }

    /// Strips the integer content and makes the leading coefficient positive.
    fn normalize(&mut self, order: MonomialOrder) {
        if self.is_zero() {
            return;
        }
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let negative = self.leading(order).1.is_negative();
        if negative {
            g = -g;
        }
        if !g.is_one() {
            for c in self.terms.values_mut() {
                *c /= &g;
            }
        }
    }

    /// `self = a*self + b*X^shift*other`.
    fn combine(&mut self, a: &Int, other: &IPoly, b: &Int, shift: &[i64]) {
        if !a.is_one() {
            for c in self.terms.values_mut() {
                *c *= a;
            }
        }
        for (e, c) in &other.terms {
            let key: Exp = e.iter().zip(shift).map(|(x, s)| x + s).collect();
            let v = b * c;
            match self.terms.entry(key) {
                alloc::collections::btree_map::Entry::Vacant(slot) => {
                    if !v.is_zero() {
                        slot.insert(v);
                    }
                }
                alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() += v;
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
            }
        }
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Fully reduces `f` modulo `basis`: no term of the result is divisible by
/// any basis leading monomial. Fraction-free (cross-multiplication).
fn reduce_full(mut f: IPoly, basis: &[IPoly], order: MonomialOrder) -> IPoly {
    let leads: Vec<(&Exp, &Int)> = basis.iter().map(|g| g.leading(order)).collect();
    'outer: loop {
        if f.is_zero() {
            return f;
        }
        // Find the largest reducible term.
        let mut terms: Vec<&Exp> = f.terms.keys().collect();
        terms.sort_by(|a, b| cmp_monomials(order, b, a));
        for t in terms {
            for (gi, (le, lc)) in leads.iter().enumerate() {
                if divides(le, t) {
                    let shift: Exp = t.iter().zip(le.iter()).map(|(a, b)| a - b).collect();
                    let fc = f.terms.get(t).expect("term present").clone();
                    let g = lc.gcd(&fc);
                    let a = &**lc / &g;
                    let b = -(&fc / &g);
                    let t = t.clone();
                    f.combine(&a, &basis[gi], &b, &shift);
                    debug_assert!(!f.terms.contains_key(&t));
                    f.normalize(order);
                    continue 'outer;
                }
            }
        }
        return f;
    }
}

fn exp_lcm(a: &[i64], b: &[i64]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn s_poly(f: &IPoly, g: &IPoly, order: MonomialOrder) -> IPoly {
    let (fe, fc) = f.leading(order);
    let (ge, gc) = g.leading(order);
    let l = exp_lcm(fe, ge);
    let cg = fc.gcd(gc);
    let shift_f: Exp = l.iter().zip(fe).map(|(a, b)| a - b).collect();
    let shift_g: Exp = l.iter().zip(ge).map(|(a, b)| a - b).collect();
    let mut s = IPoly::zero();
    s.combine(&Int::one(), f, &(gc / &cg), &shift_f);
    s.combine(&Int::one(), g, &(-(fc / &cg)), &shift_g);
    s.normalize(order);
    s
}

/// Buchberger's algorithm; returns the reduced Gröbner basis (unique up to
/// our canonical scaling), sorted by leading monomial.
fn buchberger(gens: Vec<IPoly>, order: MonomialOrder) -> Vec<IPoly> {
    let mut basis: Vec<IPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g);
        }
    }
    basis.sort();
    basis.dedup();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some(&(i, j)) = pairs.last() {
        // Normal strategy: smallest lcm first keeps intermediate growth down.
        let mut pick = pairs.len() - 1;
        {
            let key = |&(a, b): &(usize, usize)| {
                exp_lcm(basis[a].leading(order).0, basis[b].leading(order).0)
            };
            let mut best = key(&(i, j));
            for (idx, p) in pairs.iter().enumerate() {
                let k = key(p);
                if cmp_monomials(order, &k, &best) == Ordering::Less {
                    best = k;
                    pick = idx;
                }
            }
        }
        let (i, j) = pairs.swap_remove(pick);
        let (fe, _) = basis[i].leading(order);
        let (ge, _) = basis[j].leading(order);
        // Product criterion: coprime leading monomials reduce to zero.
        if fe.iter().zip(ge.iter()).all(|(a, b)| *a.min(b) == 0) {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose two pairs
        // are already handled.
        let l = exp_lcm(fe, ge);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading(order).0, &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce_full(s, &basis, order);
        if !r.is_zero() {
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && divides(basis[j].leading(order).0, basis[i].leading(order).0)
            {
                // Tie on equal leading monomials: keep the smaller index
                // alive only once.
                if basis[j].leading(order).0 == basis[i].leading(order).0 && j > i {
                    continue;
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<IPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Inter-reduce to the reduced basis.
    let mut reduced: Vec<IPoly> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<IPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let r = reduce_full(minimal[i].clone(), &others, order);
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| cmp_monomials(order, a.leading(order).0, b.leading(order).0));
    reduced
}

/// An ideal of the polynomial ring, given by generators with nonnegative
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    n: usize,
    order: MonomialOrder,
    gens: Vec<LaurentPolynomial>,
}

impl PolyIdeal {
    pub fn new(
        n: usize,
        order: MonomialOrder,
        gens: Vec<LaurentPolynomial>,
    ) -> Result<PolyIdeal, IdealsError> {
        for g in &gens {
            if g.support().iter().any(|e| e.iter().any(|&x| x < 0)) {
                return Err(IdealsError::NegativeExponent);
            }
        }
        Ok(PolyIdeal {
            n,
            order,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[LaurentPolynomial] {
        &self.gens
    }

    fn igens(&self) -> Vec<IPoly> {
        self.gens
            .iter()
            .map(|g| IPoly::from_laurent(g).expect("validated at construction"))
            .collect()
    }

    pub fn groebner_basis(&self) -> Vec<LaurentPolynomial> {
        buchberger(self.igens(), self.order)
            .into_iter()
            .map(|p| p.to_laurent(self.n))
            .collect()
    }

    /// Remainder of `f` on division by the Gröbner basis; zero iff `f` lies
    /// in the ideal.
    pub fn normal_form(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial, IdealsError> {
        let basis = buchberger(self.igens(), self.order);
        let p = IPoly::from_laurent(f)?;
        Ok(reduce_full(p, &basis, self.order).to_laurent(self.n))
    }

    pub fn contains(&self, f: &LaurentPolynomial) -> Result<bool, IdealsError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn is_unit_ideal_basis(basis: &[IPoly]) -> bool {
        basis
            .iter()
            .any(|g| g.terms.keys().any(|e| e.iter().all(|&x| x == 0)) && g.terms.len() == 1)
    }

    /// Whether `g` lies in the radical of the ideal: adjoin `1 - T g` in one
    /// extra variable and test for the unit ideal.
    pub fn radical_contains(&self, g: &LaurentPolynomial) -> Result<bool, IdealsError> {
        let mut gens: Vec<IPoly> = Vec::with_capacity(self.gens.len() + 1);
        for p in self.igens() {
            gens.push(embed(p, 1));
        }
        let gi = embed(IPoly::from_laurent(g)?, 1);
        let mut rab = IPoly::zero();
        // 1 - T*g.
        rab.terms.insert(vec![0; self.n + 1], Int::one());
        let mut t_shift = vec![0i64; self.n + 1];
        t_shift[self.n] = 1;
        rab.combine(&Int::one(), &gi, &-Int::one(), &t_shift);
        rab.normalize(MonomialOrder::DegRevLex);
        gens.push(rab);
        let basis = buchberger(gens, MonomialOrder::DegRevLex);
        Ok(Self::is_unit_ideal_basis(&basis))
    }

    /// Saturation `I : (X_1 ... X_n)^infty` by the one-extra-variable
    /// elimination method; the vanishing locus inside the torus is unchanged.
    pub fn saturate_by_coordinates(&self) -> PolyIdeal {
        let mut gens: Vec<IPoly> = self.igens().into_iter().map(|p| embed(p, 1)).collect();
        let mut sat = IPoly::zero();
        sat.terms.insert(vec![0; self.n + 1], Int::one());
        let all_ones: Exp = vec![1; self.n + 1];
        sat.terms.insert(all_ones, -Int::one());
        gens.push(sat);
        let basis = buchberger(gens, MonomialOrder::ElimLast);
        let kept: Vec<LaurentPolynomial> = basis
            .into_iter()
            .filter(|p| p.terms.keys().all(|e| e[self.n] == 0))
            .map(|p| {
                let terms: BTreeMap<Exp, Int> = p
                    .terms
                    .into_iter()
                    .map(|(mut e, c)| {
                        e.pop();
                        (e, c)
                    })
                    .collect();
                IPoly { terms }.to_laurent(self.n)
            })
            .collect();
        PolyIdeal {
            n: self.n,
            order: self.order,
            gens: kept,
        }
    }
}

/// Adds `extra` trailing variables with exponent zero.
fn embed(p: IPoly, extra: usize) -> IPoly {
    IPoly {
        terms: p
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e.extend(core::iter::repeat(0).take(extra));
                (e, c)
            })
            .collect(),
    }
}

/// Partial derivative with respect to variable `i`.
pub fn derivative(f: &LaurentPolynomial, i: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        f.num_vars(),
        f.terms().filter(|(e, _)| e[i] != 0).map(|(e, c)| {
            let mut d = e.clone();
            d[i] -= 1;
            (d, c * Rat::from_integer(Int::from(e[i])))
        }),
    )
}

/// All `k x k` minors of the Jacobian matrix of `polys` (k = number of
/// polynomials, rows indexed by the `n` variables), listed over row subsets
/// in lexicographic order.
pub fn jacobian_minors(
    n: usize,
    polys: &[LaurentPolynomial],
) -> Result<Vec<LaurentPolynomial>, IdealsError> {
    let k = polys.len();
    if k > n {
        return Err(IdealsError::MoreEquationsThanVariables);
    }
    let jac: Vec<Vec<LaurentPolynomial>> = (0..n)
        .map(|i| polys.iter().map(|f| derivative(f, i)).collect())
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let mat: Vec<&[LaurentPolynomial]> = rows.iter().map(|&r| jac[r].as_slice()).collect();
        out.push(poly_det(n, &mat, &(0..k).collect::<Vec<_>>()));
        // Next k-subset of {0..n-1} in lexicographic order.
        let mut idx = k;
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            if rows[idx] != idx + n - k {
                rows[idx] += 1;
                for j in idx + 1..k {
                    rows[j] = rows[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn poly_det(n: usize, rows: &[&[LaurentPolynomial]], cols: &[usize]) -> LaurentPolynomial {
    if cols.is_empty() {
        return LaurentPolynomial::monomial(n, vec![0; n], Rat::one());
    }
    let mut acc = LaurentPolynomial::zero(n);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[0][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&x| x != c)
            .collect();
        let sub_rows: Vec<&[LaurentPolynomial]> = rows[1..].to_vec();
        let minor = poly_det(n, &sub_rows, &rest);
        let term = entry.mul(&minor);
        if pos % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use proptest::prelude::*;

    fn lp(n: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    fn ideal(n: usize, gens: Vec<LaurentPolynomial>) -> PolyIdeal {
        PolyIdeal::new(n, MonomialOrder::DegRevLex, gens).unwrap()
    }

    #[test]
    fn order_comparisons() {
        // degrevlex: X1 > X2 in two variables.
        assert_eq!(
            cmp_monomials(MonomialOrder::DegRevLex, &[1, 0], &[0, 1]),
            Ordering::Greater
        );
        // X1^2 X2 vs X1 X2^2.
        assert_eq!(
            cmp_monomials(MonomialOrder::DegRevLex, &[2, 1], &[1, 2]),
            Ordering::Greater
        );
        // Elimination: anything with T beats anything without.
        assert_eq!(
            cmp_monomials(MonomialOrder::ElimLast, &[0, 0, 1], &[5, 5, 0]),
            Ordering::Greater
        );
        assert_eq!(
            cmp_monomials(MonomialOrder::Lex, &[1, 0], &[0, 9]),
            Ordering::Greater
        );
    }

    #[test]
    fn gb_single_variable() {
        let i = ideal(2, vec![lp(2, &[(&[1, 0], 1)])]);
        let gb = i.groebner_basis();
        assert_eq!(gb, vec![lp(2, &[(&[1, 0], 1)])]);
    }

    #[test]
    fn gb_redundant_generator() {
        // <X2 - X1, X2^2 - X1^2> collapses to <X1 - X2>.
        let i = ideal(
            2,
            vec![
                lp(2, &[(&[0, 1], 1), (&[1, 0], -1)]),
                lp(2, &[(&[0, 2], 1), (&[2, 0], -1)]),
            ],
        );
        let gb = i.groebner_basis();
        assert_eq!(gb, vec![lp(2, &[(&[1, 0], 1), (&[0, 1], -1)])]);
    }

    #[test]
    fn gb_unit_ideal() {
        let i = ideal(2, vec![lp(2, &[(&[0, 0], 7)])]);
        let gb = i.groebner_basis();
        assert_eq!(gb, vec![lp(2, &[(&[0, 0], 1)])]);
    }

    #[test]
    fn gb_classic_pair() {
        // <X^2 - Y, X^3 - X> has a basis whose normal forms vanish on inputs.
        let f = lp(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = lp(2, &[(&[3, 0], 1), (&[1, 0], -1)]);
        let i = ideal(2, vec![f.clone(), g.clone()]);
        assert!(i.contains(&f).unwrap());
        assert!(i.contains(&g).unwrap());
        // X*Y - X = X*(X^2 - 1) is in the ideal.
        let h = lp(2, &[(&[1, 1], 1), (&[1, 0], -1)]);
        assert!(i.contains(&h).unwrap());
        // X alone is not.
        assert!(!i.contains(&lp(2, &[(&[1, 0], 1)])).unwrap());
    }

    #[test]
    fn radical_membership() {
        let i = ideal(1, vec![lp(1, &[(&[2], 1)])]);
        assert!(i.radical_contains(&lp(1, &[(&[1], 1)])).unwrap());
        let j = ideal(2, vec![lp(2, &[(&[0, 1], 1), (&[1, 0], -1)])]);
        assert!(!j.radical_contains(&lp(2, &[(&[1, 1], 1)])).unwrap());
        let unit = ideal(2, vec![lp(2, &[(&[0, 0], 1)])]);
        assert!(unit.radical_contains(&lp(2, &[(&[3, 1], 5)])).unwrap());
    }

    #[test]
    fn jacobian_minor_example() {
        let f = lp(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let g = lp(2, &[(&[0, 2], 1), (&[2, 0], -1)]);
        let m = jacobian_minors(2, &[f, g]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0], lp(2, &[(&[1, 0], 2), (&[0, 1], -2)]));
    }

    #[test]
    fn jacobian_single_and_constants() {
        let f = lp(2, &[(&[2, 1], 1)]);
        let m = jacobian_minors(2, &[f]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0], lp(2, &[(&[1, 1], 2)]));
        assert_eq!(m[1], lp(2, &[(&[2, 0], 1)]));
        let c = lp(2, &[(&[0, 0], 4)]);
        let mc = jacobian_minors(2, &[c.clone(), c]).unwrap();
        assert_eq!(mc.len(), 1);
        assert!(mc[0].is_zero());
        assert_eq!(
            jacobian_minors(1, &[lp(1, &[(&[1], 1)]), lp(1, &[(&[2], 1)])]).unwrap_err(),
            IdealsError::MoreEquationsThanVariables
        );
    }

    #[test]
    fn saturation_examples() {
        // <X1 (X2 - 1)> : X-products = <X2 - 1>.
        let i = ideal(2, vec![lp(2, &[(&[1, 1], 1), (&[1, 0], -1)])]);
        let s = i.saturate_by_coordinates();
        assert_eq!(s.generators(), &[lp(2, &[(&[0, 1], 1), (&[0, 0], -1)])]);
        // <X1> saturates to the unit ideal.
        let j = ideal(2, vec![lp(2, &[(&[1, 0], 1)])]);
        let sj = j.saturate_by_coordinates();
        assert_eq!(sj.generators(), &[lp(2, &[(&[0, 0], 1)])]);
        // Idempotence and containment of the original ideal.
        let s2 = s.saturate_by_coordinates();
        assert_eq!(s.generators(), s2.generators());
        for g in i.generators() {
            assert!(s.contains(g).unwrap());
        }
    }

    fn arb_small_poly() -> impl Strategy<Value = LaurentPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0i64..3, 2), -3i64..4), 1..4)
            .prop_map(|ts| {
                LaurentPolynomial::from_terms(2, ts.into_iter().map(|(e, c)| (e, rat_int(c))))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn membership_consistency(
            f in arb_small_poly(),
            g in arb_small_poly(),
            h in arb_small_poly(),
            k in arb_small_poly(),
        ) {
            prop_assume!(!f.is_zero() && !h.is_zero());
            let i = ideal(2, vec![f.clone(), h.clone()]);
            let combo = f.mul(&g).add(&h.mul(&k));
            prop_assert!(i.contains(&combo).unwrap());
        }

        #[test]
        fn radical_on_monomial_ideals(
            me in proptest::collection::vec(0i64..4, 2),
            ge in proptest::collection::vec(0i64..3, 2),
        ) {
            prop_assume!(me.iter().any(|&x| x > 0));
            let m = lp(2, &[(&me, 1)]);
            let g = LaurentPolynomial::monomial(2, ge.clone(), rat_int(1));
            let i = ideal(2, vec![m]);
            // g in rad(<m>) iff supp(m) subset of supp(g).
            let expect = me
                .iter()
                .zip(&ge)
                .all(|(&a, &b)| a == 0 || b > 0);
            prop_assert_eq!(i.radical_contains(&g).unwrap(), expect);
        }

        #[test]
        fn saturation_contains_and_idempotent(f in arb_small_poly()) {
            prop_assume!(!f.is_zero());
            let i = ideal(2, vec![f]);
            let s = i.saturate_by_coordinates();
            for g in i.generators() {
                prop_assert!(s.contains(g).unwrap());
            }
            let s2 = s.saturate_by_coordinates();
            prop_assert_eq!(s.generators(), s2.generators());
        }
    }
}
