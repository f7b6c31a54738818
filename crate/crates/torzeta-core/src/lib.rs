//! Exact toric machinery for topological zeta functions of rings and modules.
//!
//! Given a non-associative ring or module presented by integer structure
//! constants, this crate computes the topological subalgebra, ideal, or
//! submodule zeta function as an exact univariate rational function. All
//! arithmetic is exact (arbitrary-precision integers and rationals); no
//! floating point is used anywhere.
//!
//! The computation proceeds in two stages. Stage one manipulates *toric data*
//! (a half-open rational cone together with a finite family of Laurent
//! polynomials) until every datum is balanced, simple, and regular. Stage two
//! evaluates each regular datum as a sum of rational functions via cone
//! triangulations and Euler characteristics of torus hypersurface
//! arrangements, then interpolates the final answer.
//!
//! The crate is `no_std`-compatible (it requires `alloc`). Orchestration,
//! parallel evaluation, file formats, and the command-line interface live in
//! the companion `torzeta` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebras;
pub mod arith;
pub mod euler;
pub mod ideals;
pub mod laurent;
pub mod polyhedra;
pub mod topeval;
pub mod toric;

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational used throughout.
pub type Rat = num_rational::BigRational;

/// Exponent vector of a Laurent monomial (entries may be negative).
pub type Exp = alloc::vec::Vec<i64>;

pub(crate) fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}
