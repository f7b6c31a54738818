//! Exact multivariate Laurent polynomials over the rationals: supports,
//! Newton polytopes, initial forms, denominator clearing, and exact division.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::polyhedra::{HalfOpenCone, Polytope};
use crate::{Exp, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LaurentError {
    ZeroPolynomial,
    EmptyCone,
    NotBalanced,
}

impl core::fmt::Display for LaurentError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LaurentError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            LaurentError::EmptyCone => write!(f, "empty cone not allowed here"),
            LaurentError::NotBalanced => {
                write!(f, "initial form is not constant on the given cone")
            }
        }
    }
}

impl core::error::Error for LaurentError {}

/// A Laurent polynomial in `n` variables with rational coefficients, stored
/// as a sorted exponent-to-coefficient map (canonical: no zero coefficients,
/// equality and ordering are structural).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPolynomial {
    n: usize,
    terms: BTreeMap<Exp, Rat>,
}

impl LaurentPolynomial {
    pub fn zero(n: usize) -> Self {
        LaurentPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, exp: Exp, coeff: Rat) -> Self {
        let mut p = Self::zero(n);
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, Rat)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Exp, coeff: Rat) {
        debug_assert_eq!(exp.len(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponents with nonzero coefficient, in ascending lexicographic order.
    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut p = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn mul_term(&self, exp: &[i64], coeff: &Rat) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c * coeff))
                .collect(),
        }
    }

    /// Convex hull of the support.
    pub fn newton_polytope(&self) -> Result<Polytope, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        Ok(Polytope::hull(self.n, self.support()).expect("nonzero support"))
    }

    /// Sum of the terms minimizing `<exponent, omega>`.
    pub fn initial_form(&self, omega: &[Rat]) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let mut best: Option<Rat> = None;
        for e in self.terms.keys() {
            let v = crate::arith::dot_rat_i64(omega, e);
            if best.as_ref().map(|b| v < *b).unwrap_or(true) {
                best = Some(v);
            }
        }
        let best = best.unwrap();
        Ok(LaurentPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| crate::arith::dot_rat_i64(omega, e) == best)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// The initial form with respect to every `omega` in `c0` at once, if it
    /// is the same for all of them; `NotBalanced` otherwise. Decided by exact
    /// polyhedral containment, not sampling.
    pub fn initial_form_on_cone(&self, c0: &HalfOpenCone) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        debug_assert_eq!(c0.ambient_dim(), self.n);
        let Some(omega0) = c0.witness() else {
            return Err(LaurentError::EmptyCone);
        };
        let omega0 = omega0.clone();
        let cand = self.initial_form(&omega0)?;
        let alpha0 = cand.terms.keys().next().expect("nonzero initial form").clone();
        let rays = c0.closure_rays().expect("nonempty cone has a closure");
        // Ties at the witness must be ties on all of C0: each difference
        // vanishes on the closure.
        for alpha in cand.terms.keys() {
            let diff: Vec<i64> = alpha.iter().zip(&alpha0).map(|(a, b)| a - b).collect();
            for g in rays {
                if !crate::arith::dot_int_i64(g, &diff).is_zero() {
                    return Err(LaurentError::NotBalanced);
                }
            }
        }
        // Every non-minimizing exponent must stay strictly above alpha0 on
        // all of C0: the part of C0 where it ties or drops below is empty.
        let origin_excluded = !c0.strict().is_empty();
        for beta in self.terms.keys() {
            if cand.terms.contains_key(beta) {
                continue;
            }
            let v: Vec<i64> = beta.iter().zip(&alpha0).map(|(a, b)| a - b).collect();
            if origin_excluded
                && rays
                    .iter()
                    .all(|g| crate::arith::dot_int_i64(g, &v).is_positive())
            {
                // <v, .> is positive on the whole closure minus the origin,
                // and the origin is not in C0.
                continue;
            }
            let neg: Vec<crate::Int> = v.iter().map(|x| crate::Int::from(-x)).collect();
            if !c0.with_weak(neg).is_empty() {
                return Err(LaurentError::NotBalanced);
            }
        }
        Ok(cand)
    }

    /// Componentwise minimum of the support exponents.
    pub fn min_exponents(&self) -> Result<Exp, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let mut min = vec![i64::MAX; self.n];
        for e in self.terms.keys() {
            for (m, x) in min.iter_mut().zip(e) {
                *m = (*m).min(*x);
            }
        }
        Ok(min)
    }

    /// Returns `(X^gamma * f, gamma)` with `gamma` componentwise minimal such
    /// that the result has only nonnegative exponents.
    pub fn clear_denominators(&self) -> Result<(Self, Exp), LaurentError> {
        let min = self.min_exponents()?;
        let gamma: Exp = min.iter().map(|&m| if m < 0 { -m } else { 0 }).collect();
        Ok((self.mul_term(&gamma, &crate::rat_int(1)), gamma))
    }

    /// Returns `(X^-mu * f, mu)` where `mu` is the componentwise minimum of
    /// the support: the polynomial part after stripping the full monomial
    /// content. Every coordinate of the result's support touches zero.
    pub fn strip_monomial_content(&self) -> Result<(Self, Exp), LaurentError> {
        let min = self.min_exponents()?;
        let neg: Exp = min.iter().map(|&m| -m).collect();
        Ok((self.mul_term(&neg, &crate::rat_int(1)), min))
    }

    /// Exact Laurent division: `self / divisor` if the divisor divides
    /// exactly, else `None`. Both are normalized by their monomial content
    /// first; divisibility of the polynomial parts is then decided by leading
    /// term division in the lexicographic order.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        debug_assert_eq!(self.n, divisor.n);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.n));
        }
        let (pf, mf) = self.strip_monomial_content().expect("nonzero");
        let (pg, mg) = divisor.strip_monomial_content().expect("nonzero");
        let mut rem = pf;
        let mut quo = Self::zero(self.n);
        let (glead, gc) = pg.terms.iter().next_back().expect("nonzero divisor");
        while !rem.is_zero() {
            let (rlead, rc) = rem.terms.iter().next_back().expect("nonzero");
            let exp: Exp = rlead.iter().zip(glead).map(|(a, b)| a - b).collect();
            if exp.iter().any(|&x| x < 0) {
                return None;
            }
            let c = rc / gc;
            let t = Self::monomial(self.n, exp, c);
            rem = rem.sub(&t.mul(&pg));
            quo = quo.add(&t);
            // Leading terms strictly decrease in lex order, so this stops.
        }
        let shift: Exp = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Some(quo.mul_term(&shift, &crate::rat_int(1)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }
}
