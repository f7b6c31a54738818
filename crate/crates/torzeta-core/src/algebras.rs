//! Translation of integer structure constants into a counting problem.
//!
//! A finitely generated free abelian group of rank `d` with a bilinear
//! multiplication (or a set of integer operator matrices acting on it)
//! determines a family of Laurent conditions on a generic upper triangular
//! matrix `C`: the row span of `C` is a subalgebra, ideal, or invariant
//! sublattice exactly when every member of the family is integral at `C`.
//! This module builds that family and the accompanying counting data: the
//! starting toric datum on the full orthant, the rows that pair lattice
//! points with the diagonal entries of `C`, and the single-variable
//! specialization of the counting variables.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::laurent::LaurentPolynomial;
use crate::polyhedra::HalfOpenCone;
use crate::topeval::Specialization;
use crate::toric::ToricDatum;
use crate::{rat_int, Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraMode {
    Subalgebra,
    Ideal,
    Submodule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// The rank must be at least one.
    BadRank,
    /// A structure constant table or generator matrix has the wrong shape.
    BadShape,
    /// Submodule mode needs at least one generator matrix.
    MissingGenerators,
    /// Structure constants were supplied for submodule mode or generators
    /// for an algebra mode.
    ModeMismatch,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::BadRank => write!(f, "rank must be at least one"),
            AlgebraError::BadShape => write!(f, "structure data has the wrong shape"),
            AlgebraError::MissingGenerators => write!(f, "submodule mode needs a generator"),
            AlgebraError::ModeMismatch => write!(f, "structure data does not match the mode"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// A rank, a mode, and either a structure constant table `c[i][j][k]`
/// (coordinates of `e_i * e_j`) or a list of integer operator matrices
/// acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInput {
    rank: usize,
    mode: AlgebraMode,
    constants: Vec<Vec<Vec<i64>>>,
    generators: Vec<Vec<Vec<i64>>>,
}

impl AlgebraInput {
    /// Subalgebra or ideal counting for the multiplication `e_i * e_j =
    /// sum_k c[i][j][k] e_k`.
    pub fn algebra(
        rank: usize,
        mode: AlgebraMode,
        constants: Vec<Vec<Vec<i64>>>,
    ) -> Result<AlgebraInput, AlgebraError> {
        if rank == 0 {
            return Err(AlgebraError::BadRank);
        }
        if mode == AlgebraMode::Submodule {
            return Err(AlgebraError::ModeMismatch);
        }
        if constants.len() != rank
            || constants
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|v| v.len() != rank))
        {
            return Err(AlgebraError::BadShape);
        }
        Ok(AlgebraInput {
            rank,
            mode,
            constants,
            generators: Vec::new(),
        })
    }

    /// Invariant sublattice counting for the right action of the given
    /// integer matrices on row vectors.
    pub fn submodule(
        rank: usize,
        generators: Vec<Vec<Vec<i64>>>,
    ) -> Result<AlgebraInput, AlgebraError> {
        if rank == 0 {
            return Err(AlgebraError::BadRank);
        }
        if generators.is_empty() {
            return Err(AlgebraError::MissingGenerators);
        }
        if generators
            .iter()
            .any(|m| m.len() != rank || m.iter().any(|row| row.len() != rank))
        {
            return Err(AlgebraError::BadShape);
        }
        Ok(AlgebraInput {
            rank,
            mode: AlgebraMode::Submodule,
            constants: Vec::new(),
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }
}

/// Everything the work-list pipeline needs: the starting datum on the full
/// orthant in `d(d+1)/2` variables, one counting row per diagonal entry,
/// and the shift of each counting variable down to the single variable `s`.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub rank: usize,
    pub mode: AlgebraMode,
    pub datum: ToricDatum,
    pub beta: Vec<Vec<i64>>,
    pub spec: Specialization,
}

/// Index of the matrix entry `(i, j)`, `i <= j`, in the row-major flattening
/// of the upper triangle: `(0,0), (0,1), .., (0,d-1), (1,1), .., (d-1,d-1)`.
pub fn variable_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < d);
    i * (2 * d - i + 1) / 2 + (j - i)
}

/// The generic upper triangular matrix: entry `(i, j)` is the variable
/// `X_{variable_index(d, i, j)}` above the diagonal and zero below it.
pub fn generic_matrix_rows(d: usize) -> Vec<Vec<LaurentPolynomial>> {
    let n = d * (d + 1) / 2;
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i <= j {
                        let mut exp = vec![0i64; n];
                        exp[variable_index(d, i, j)] = 1;
                        LaurentPolynomial::monomial(n, exp, rat_int(1))
                    } else {
                        LaurentPolynomial::zero(n)
                    }
                })
                .collect()
        })
        .collect()
}

/// Inverse of the generic upper triangular matrix by back substitution.
/// The diagonal is monomial, so every entry is a Laurent polynomial.
fn generic_inverse(c: &[Vec<LaurentPolynomial>]) -> Vec<Vec<LaurentPolynomial>> {
    let d = c.len();
    let n = d * (d + 1) / 2;
    let mut y = vec![vec![LaurentPolynomial::zero(n); d]; d];
    for i in (0..d).rev() {
        let mut diag_inv = vec![0i64; n];
        diag_inv[variable_index(d, i, i)] = -1;
        y[i][i] = LaurentPolynomial::monomial(n, diag_inv.clone(), rat_int(1));
        for j in i + 1..d {
            let mut acc = LaurentPolynomial::zero(n);
            for k in i + 1..=j {
                acc = acc.add(&c[i][k].mul(&y[k][j]));
            }
            y[i][j] = acc.neg().mul_term(&diag_inv, &rat_int(1));
        }
    }
    y
}

/// Coordinates of the product of two row vectors under the structure
/// constants: `out[k] = sum_{i,j} u[i] v[j] c[i][j][k]`.
fn bilinear_product(
    constants: &[Vec<Vec<i64>>],
    u: &[LaurentPolynomial],
    v: &[LaurentPolynomial],
    n: usize,
) -> Vec<LaurentPolynomial> {
    let d = constants.len();
    let mut out = vec![LaurentPolynomial::zero(n); d];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let uv = ui.mul(vj);
            for (k, out_k) in out.iter_mut().enumerate() {
                let c = constants[i][j][k];
                if c != 0 {
                    *out_k = out_k.add(&uv.scale(&rat_int(c)));
                }
            }
        }
    }
    out
}

/// Row vector times an integer matrix acting on the right.
fn row_times_matrix(row: &[LaurentPolynomial], m: &[Vec<i64>], n: usize) -> Vec<LaurentPolynomial> {
    let d = m.len();
    let mut out = vec![LaurentPolynomial::zero(n); d];
    for (j, rj) in row.iter().enumerate() {
        if rj.is_zero() {
            continue;
        }
        for (k, out_k) in out.iter_mut().enumerate() {
            let c = m[j][k];
            if c != 0 {
                *out_k = out_k.add(&rj.scale(&rat_int(c)));
            }
        }
    }
    out
}

/// Row vector times a Laurent matrix acting on the right.
fn row_times_laurent(
    row: &[LaurentPolynomial],
    y: &[Vec<LaurentPolynomial>],
    n: usize,
) -> Vec<LaurentPolynomial> {
    let d = y.len();
    let mut out = vec![LaurentPolynomial::zero(n); d];
    for (j, rj) in row.iter().enumerate() {
        if rj.is_zero() {
            continue;
        }
        for (k, out_k) in out.iter_mut().enumerate() {
            if !y[j][k].is_zero() {
                *out_k = out_k.add(&rj.mul(&y[j][k]));
            }
        }
    }
    out
}

/// Matrix of left multiplication by `e_i` acting on row vectors: row `j`
/// holds the coordinates of `e_i * e_j`.
fn left_multiplication(constants: &[Vec<Vec<i64>>], i: usize) -> Vec<Vec<i64>> {
    let d = constants.len();
    (0..d).map(|j| constants[i][j].clone()).collect()
}

/// Matrix of right multiplication by `e_i`: row `j` holds `e_j * e_i`.
fn right_multiplication(constants: &[Vec<Vec<i64>>], i: usize) -> Vec<Vec<i64>> {
    let d = constants.len();
    (0..d).map(|j| constants[j][i].clone()).collect()
}

/// All nonzero integrality conditions in the order they arise, before
/// scalar normalization and deduplication.
pub(crate) fn family_candidates(input: &AlgebraInput) -> Vec<LaurentPolynomial> {
    let d = input.rank;
    let n = d * (d + 1) / 2;
    let c = generic_matrix_rows(d);
    let y = generic_inverse(&c);
    let mut out = Vec::new();
    let push_row = |row: Vec<LaurentPolynomial>, out: &mut Vec<LaurentPolynomial>| {
        for f in row_times_laurent(&row, &y, n) {
            if !f.is_zero() {
                out.push(f);
            }
        }
    };
    match input.mode {
        AlgebraMode::Subalgebra => {
            for m in 0..d {
                for l in 0..d {
                    let w = bilinear_product(&input.constants, &c[m], &c[l], n);
                    push_row(w, &mut out);
                }
            }
        }
        AlgebraMode::Ideal => {
            let mut operators = Vec::with_capacity(2 * d);
            for i in 0..d {
                operators.push(left_multiplication(&input.constants, i));
            }
            for i in 0..d {
                operators.push(right_multiplication(&input.constants, i));
            }
            for row in &c {
                for op in &operators {
                    let w = row_times_matrix(row, op, n);
                    push_row(w, &mut out);
                }
            }
        }
        AlgebraMode::Submodule => {
            for g in &input.generators {
                for row in &c {
                    let w = row_times_matrix(row, g, n);
                    push_row(w, &mut out);
                }
            }
        }
    }
    out
}

/// Scales a nonzero Laurent polynomial to coprime integer coefficients with
/// a positive leading coefficient. Scalar multiples agree after this; the
/// monomial content is kept because it carries integrality information.
fn canonical_scale(f: &LaurentPolynomial) -> LaurentPolynomial {
    use num_integer::Integer;
    use num_traits::Signed;
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::from(1);
    for (_, coeff) in f.terms() {
        num_gcd = num_gcd.gcd(coeff.numer());
        den_lcm = den_lcm.lcm(coeff.denom());
    }
    let mut factor = Rat::new(den_lcm, num_gcd);
    let first = f.terms().next().expect("nonzero polynomial").1;
    if (first * &factor).is_negative() {
        factor = -factor;
    }
    f.scale(&factor)
}

/// The integrality family of the input: every condition from
/// `family_candidates`, scaled to a canonical representative, keeping the
/// first occurrence of each scalar class.
pub fn laurent_family(input: &AlgebraInput) -> Vec<LaurentPolynomial> {
    let mut out: Vec<LaurentPolynomial> = Vec::new();
    for f in family_candidates(input) {
        let canon = canonical_scale(&f);
        if !out.contains(&canon) {
            out.push(canon);
        }
    }
    out
}

/// Assembles the full counting problem: the family on the full orthant in
/// `d(d+1)/2` variables at depth zero, one counting row per diagonal entry
/// of the generic matrix, and the shifts `s_j -> s - j`.
pub fn build_problem(input: &AlgebraInput) -> ProblemInstance {
    let d = input.rank;
    let n = d * (d + 1) / 2;
    let family = laurent_family(input);
    let datum = ToricDatum::new(HalfOpenCone::orthant(n), family, 0);
    let beta = (0..d)
        .map(|j| {
            let mut row = vec![0i64; n];
            row[variable_index(d, j, j)] = 1;
            row
        })
        .collect();
    let spec = Specialization::new((1..=d as i64).collect());
    ProblemInstance {
        rank: d,
        mode: input.mode,
        datum,
        beta,
        spec,
    }
}
