//! Self-check suites behind `torzeta verify`: independent oracles and
//! consistency properties exercised on seeded random samples. Every suite
//! reports one line; any violation is collected with enough detail to
//! reproduce it from the seed.


use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use torzeta_core::arith::{det_int, mat_mul, smith_normal_form};
use torzeta_core::euler::{euler_characteristic_cached, EulerResult, NoCache, TorusVariety};
use torzeta_core::laurent::LaurentPolynomial;
use torzeta_core::polyhedra::{generating_function, HalfOpenCone};
use torzeta_core::topeval::{wj_reduction, SimpleTermSum, SubstitutionMatrix};
use torzeta_core::toric::{self, ToricDatum};
use torzeta_core::{Int, Rat};

use crate::cache::SharedCache;

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub violations: Vec<String>,
}

impl VerifyReport {
    fn ok(&mut self, line: String) {
        self.lines.push(line);
    }

    fn violation(&mut self, line: String) {
        self.violations.push(line);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

fn random_cone(rng: &mut StdRng, n: usize) -> HalfOpenCone {
    let weak_rows = rng.gen_range(0..=2);
    let strict_rows = rng.gen_range(0..=1);
    let mut row = |_| -> Vec<Int> {
        (0..n).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect()
    };
    let weak: Vec<Vec<Int>> = (0..weak_rows).map(&mut row).collect();
    let strict: Vec<Vec<Int>> = (0..strict_rows).map(&mut row).collect();
    HalfOpenCone::new(n, weak, strict)
}

/// Lattice point counts of the cone by total degree, read off the closed
/// form: each term contributes `coeff * t^{deg} / prod(1 - t^{deg_ray})`
/// after the substitution `t_i -> t`, expanded as a truncated power series.
fn counts_from_generating_function(c: &HalfOpenCone, max_degree: usize) -> Vec<Int> {
    let mut counts = vec![Int::from(0); max_degree + 1];
    for term in generating_function(c).terms {
        let mut series = vec![Int::from(0); max_degree + 1];
        for exp in &term.numerator {
            let deg: Int = exp.iter().sum();
            if let Ok(d) = usize::try_from(&deg) {
                if d <= max_degree {
                    series[d] += 1;
                }
            }
        }
        for ray in &term.rays {
            let deg: Int = ray.iter().sum();
            let d = usize::try_from(&deg).expect("rays of an orthant cone point upward");
            assert!(d >= 1, "nonzero primitive ray has positive degree");
            // Multiply by the geometric series of t^d.
            for i in d..=max_degree {
                let lower = series[i - d].clone();
                series[i] += lower;
            }
        }
        for (c_out, c_in) in counts.iter_mut().zip(series) {
            *c_out += c_in * &term.coeff;
        }
    }
    counts
}

fn counts_by_enumeration(c: &HalfOpenCone, max_degree: usize) -> Vec<Int> {
    let n = c.ambient_dim();
    let mut counts = vec![Int::from(0); max_degree + 1];
    let mut point = vec![0i64; n];
    loop {
        let total: i64 = point.iter().sum();
        if total <= max_degree as i64 {
            let q: Vec<Rat> = point.iter().map(|&v| rat(v)).collect();
            if c.contains_point(&q) {
                counts[total as usize] += 1;
            }
        }
        // Odometer over the degree-bounded box.
        let mut i = 0;
        loop {
            if i == n {
                return counts;
            }
            point[i] += 1;
            if point[i] <= max_degree as i64 {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

fn suite_generating_function(rng: &mut StdRng, report: &mut VerifyReport) {
    let cases = 50;
    let max_degree = 8;
    for case in 0..cases {
        let n = rng.gen_range(1..=3);
        let c = random_cone(rng, n);
        let from_gf = counts_from_generating_function(&c, max_degree);
        let from_points = counts_by_enumeration(&c, max_degree);
        if from_gf != from_points {
            report.violation(format!(
                "generating function truncation mismatch (case {case}): \
                 series {from_gf:?} vs enumeration {from_points:?} on {c:?}"
            ));
            return;
        }
    }
    report.ok(format!(
        "ok: generating-function truncation vs lattice enumeration ({cases} cones, degree <= {max_degree})"
    ));
}

fn sum_value(s: &SimpleTermSum, point: &[Rat]) -> Option<Rat> {
    s.evaluate(point)
}

fn suite_reduction_invariance(rng: &mut StdRng, report: &mut VerifyReport) {
    let cases = 12;
    let n = 3;
    let mut done = 0;
    let mut attempts = 0;
    while done < cases && attempts < cases * 20 {
        attempts += 1;
        let c = random_cone(rng, n);
        if c.is_empty() {
            continue;
        }
        let d = c.dim().expect("nonempty cone has a dimension");
        let beta: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=2)).collect())
            .collect();
        let a = SubstitutionMatrix::block(n, 0, &beta);
        let Ok(plain) = wj_reduction(&c, &a, d) else {
            continue;
        };
        // Reverse the coordinate order everywhere; the triangulation sees
        // different ray orderings but the sum must be unchanged.
        let rev = |rows: &[Vec<Int>]| -> Vec<Vec<Int>> {
            rows.iter()
                .map(|r| r.iter().rev().cloned().collect())
                .collect()
        };
        let c_rev = HalfOpenCone::new(n, rev(c.weak()), rev(c.strict()));
        let beta_rev: Vec<Vec<i64>> = beta
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let a_rev = SubstitutionMatrix::block(n, 0, &beta_rev);
        let permuted = wj_reduction(&c_rev, &a_rev, d).expect("same dimension");
        let mut checked = 0;
        let mut tries = 0;
        while checked < 5 && tries < 100 {
            tries += 1;
            let point = [
                Rat::new(Int::from(rng.gen_range(1i64..=40)), Int::from(3)),
                Rat::new(Int::from(rng.gen_range(1i64..=40)), Int::from(2)),
            ];
            let (Some(u), Some(v)) = (sum_value(&plain, &point), sum_value(&permuted, &point))
            else {
                continue;
            };
            if u != v {
                report.violation(format!(
                    "triangulation dependence: {u} vs {v} at {point:?} on {c:?}"
                ));
                return;
            }
            checked += 1;
        }
        if checked == 5 {
            done += 1;
        }
    }
    report.ok(format!(
        "ok: cone reduction invariant under coordinate reversal ({done} cones, 5 points each)"
    ));
}

fn random_datum(rng: &mut StdRng, n: usize) -> ToricDatum {
    let cone = if rng.gen_bool(0.5) {
        HalfOpenCone::orthant(n)
    } else {
        let row: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
        HalfOpenCone::new(n, vec![row], Vec::new())
    };
    let polys = (0..rng.gen_range(1..=2))
        .map(|_| {
            let terms = rng.gen_range(2..=3);
            LaurentPolynomial::from_terms(
                n,
                (0..terms).map(|_| {
                    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    let mut c = rng.gen_range(-3i64..=3);
                    if c == 0 {
                        c = 1;
                    }
                    (e, rat(c))
                }),
            )
        })
        .filter(|f: &LaurentPolynomial| !f.is_zero())
        .collect();
    ToricDatum::new(cone, polys, 0)
}

fn check_partition(
    parent: &HalfOpenCone,
    pieces: &[&HalfOpenCone],
    box_bound: i64,
    label: &str,
    report: &mut VerifyReport,
) -> bool {
    let n = parent.ambient_dim();
    let mut point = vec![0i64; n];
    loop {
        let q: Vec<Rat> = point.iter().map(|&v| rat(v)).collect();
        let inside = parent.contains_point(&q);
        let hits = pieces.iter().filter(|p| p.contains_point(&q)).count();
        if (inside && hits != 1) || (!inside && hits != 0) {
            report.violation(format!(
                "{label}: point {point:?} lies in {hits} pieces (parent membership {inside})"
            ));
            return false;
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            point[i] += 1;
            if point[i] <= box_bound {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

fn check_disjoint_subcones(
    parent: &HalfOpenCone,
    pieces: &[&HalfOpenCone],
    box_bound: i64,
    label: &str,
    report: &mut VerifyReport,
) -> bool {
    let n = parent.ambient_dim();
    let mut point = vec![0i64; n];
    loop {
        let q: Vec<Rat> = point.iter().map(|&v| rat(v)).collect();
        let inside = parent.contains_point(&q);
        let hits = pieces.iter().filter(|p| p.contains_point(&q)).count();
        if hits > 1 || (!inside && hits != 0) {
            report.violation(format!(
                "{label}: point {point:?} lies in {hits} pieces (parent membership {inside})"
            ));
            return false;
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            point[i] += 1;
            if point[i] <= box_bound {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

fn suite_partitions(rng: &mut StdRng, report: &mut VerifyReport) {
    let cases = 20;
    for case in 0..cases {
        let n = rng.gen_range(2..=3);
        let t = random_datum(rng, n);
        if t.is_trivial() {
            continue;
        }
        let pieces = toric::balance(&t);
        let cones: Vec<&HalfOpenCone> = pieces.iter().map(|p| p.cone()).collect();
        if !check_partition(t.cone(), &cones, 4, &format!("balance case {case}"), report) {
            return;
        }
        // The weak/strict complement split underlying every reduction step
        // must partition the cone exactly.
        let delta: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
        let neg: Vec<Int> = delta.iter().map(|x| -x).collect();
        let le = t.cone().with_weak(delta);
        let gt = t.cone().with_strict(neg);
        if !check_partition(t.cone(), &[&le, &gt], 4, &format!("split case {case}"), report) {
            return;
        }
    }

    // A reduce partition on a datum built to be singular: two members share
    // the initial form (X1 - X2)/X4 on {w1 = w2 >= 0, w3 > w1, w4 >= 0}, and
    // their trailing terms X3/X4 and X3^2/X4 are nowhere integral, so
    // simplify keeps both members intact.
    let f = LaurentPolynomial::from_terms(
        4,
        [
            (vec![1, 0, 0, -1], rat(1)),
            (vec![0, 1, 0, -1], rat(-1)),
            (vec![0, 0, 1, -1], rat(1)),
        ],
    );
    let g = LaurentPolynomial::from_terms(
        4,
        [
            (vec![1, 0, 0, -1], rat(1)),
            (vec![0, 1, 0, -1], rat(-1)),
            (vec![0, 0, 2, -1], rat(1)),
        ],
    );
    let weak = [[1, 0, 0, 0], [0, 0, 0, 1], [1, -1, 0, 0], [-1, 1, 0, 0]];
    let cone = HalfOpenCone::new(
        4,
        weak.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
        vec![vec![Int::from(-1), Int::from(0), Int::from(1), Int::from(0)]],
    );
    let t = toric::simplify(&ToricDatum::new(cone, vec![f, g], 0));
    if !toric::is_balanced(&t) {
        report.violation("reduce example: datum is not balanced".to_string());
        return;
    }
    if toric::is_regular(&t).unwrap_or(true) {
        report.violation("reduce example: datum is not singular".to_string());
        return;
    }
    match toric::reduce(&t, 3) {
        Ok(children) => {
            // Refinement may fold single-term members into extra cone rows,
            // so children are pairwise disjoint subcones of the parent
            // rather than a pointwise cover.
            let cones: Vec<&HalfOpenCone> = children.iter().map(|p| p.cone()).collect();
            if !check_disjoint_subcones(t.cone(), &cones, 4, "reduce example", report) {
                return;
            }
        }
        Err(e) => {
            report.violation(format!("reduce example unexpectedly failed: {e}"));
            return;
        }
    }
    report.ok(format!(
        "ok: balance and complement splits partition their parent on lattice boxes ({cases} cases + reduce example)"
    ));
}

fn suite_snf(rng: &mut StdRng, report: &mut VerifyReport) {
    let cases = 20;
    for case in 0..cases {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let b: Vec<Vec<Int>> = (0..m)
            .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect())
            .collect();
        let snf = smith_normal_form(&b);
        let prod = mat_mul(&mat_mul(&snf.u, &b), &snf.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    Int::from(0)
                };
                if *v != expected {
                    report.violation(format!(
                        "snf case {case}: u*b*v entry ({i},{j}) is {v}, expected {expected}"
                    ));
                    return;
                }
            }
        }
        for w in snf.diag.windows(2) {
            use num_traits::Zero;
            if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
                report.violation(format!("snf case {case}: diagonal not a divisibility chain"));
                return;
            }
            if w[1] < Int::from(0) || w[0] < Int::from(0) {
                report.violation(format!("snf case {case}: negative diagonal entry"));
                return;
            }
        }
        let du = det_int(&snf.u);
        let dv = det_int(&snf.v);
        if du.magnitude() != Int::from(1).magnitude() || dv.magnitude() != Int::from(1).magnitude()
        {
            report.violation(format!(
                "snf case {case}: non-unimodular transform (det u = {du}, det v = {dv})"
            ));
            return;
        }
    }
    report.ok(format!(
        "ok: Smith normal form identities u*b*v = d, divisibility, unimodularity ({cases} matrices)"
    ));
}

fn chi(n: usize, polys: Vec<LaurentPolynomial>, cache: &dyn torzeta_core::euler::EulerCache)
    -> EulerResult
{
    let v = TorusVariety::new(n, polys).expect("well-formed system");
    euler_characteristic_cached(&v, cache)
}

fn suite_euler(report: &mut VerifyReport) {
    let line = LaurentPolynomial::from_terms(
        2,
        [
            (vec![1, 0], rat(1)),
            (vec![0, 1], rat(1)),
            (vec![0, 0], rat(1)),
        ],
    );
    let subtorus = LaurentPolynomial::from_terms(
        2,
        [(vec![1, 0], rat(1)), (vec![0, 1], rat(-1))],
    );
    let battery: Vec<(&str, usize, Vec<LaurentPolynomial>, i64)> = vec![
        ("chi(T^1)", 1, vec![], 0),
        ("chi(T^2)", 2, vec![], 0),
        ("chi(T^3)", 3, vec![], 0),
        ("chi(line in T^2)", 2, vec![line], -1),
        ("chi(subtorus of T^2)", 2, vec![subtorus], 0),
    ];
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = SharedCache::open(&dir.path().join("euler.json")).expect("fresh cache");
    for (label, n, polys, expected) in &battery {
        for pass in 0..2 {
            let got = chi(*n, polys.clone(), &cache);
            let want = EulerResult::Value(Int::from(*expected));
            if got != want {
                report.violation(format!(
                    "euler battery: {label} pass {pass} gave {got:?}, expected {want:?}"
                ));
                return;
            }
        }
        let uncached = chi(*n, polys.clone(), &NoCache);
        if uncached != EulerResult::Value(Int::from(*expected)) {
            report.violation(format!("euler battery: {label} uncached mismatch"));
            return;
        }
    }
    cache.flush().expect("cache flush");
    report.ok(format!(
        "ok: euler characteristic battery ({} systems, cached and uncached)",
        battery.len()
    ));
}

fn suite_simplify_flags(rng: &mut StdRng, report: &mut VerifyReport) {
    let cases = 25;
    let mut checked = 0;
    for case in 0..cases {
        let n = rng.gen_range(2..=3);
        let t = random_datum(rng, n);
        if t.is_trivial() {
            continue;
        }
        for piece in toric::balance(&t) {
            let s = toric::simplify(&piece);
            if !toric::is_balanced(&s) {
                report.violation(format!(
                    "simplify broke balance (case {case}): {piece:?}"
                ));
                return;
            }
            let was_regular = toric::is_regular(&piece).expect("balanced piece");
            let is_regular = toric::is_regular(&s).expect("balanced after simplify");
            if was_regular && !is_regular {
                report.violation(format!(
                    "simplify broke regularity (case {case}): {piece:?}"
                ));
                return;
            }
            checked += 1;
        }
    }
    report.ok(format!(
        "ok: simplify preserves balanced/regular flags ({checked} balanced pieces)"
    ));
}

fn suite_golden_runs(report: &mut VerifyReport) {
    use crate::engine::{topological_zeta_function, RunConfig, RunOutcome};
    use torzeta_core::algebras::{build_problem, AlgebraInput, AlgebraMode};
    use torzeta_core::topeval::RationalFunction1V;

    let cfg = RunConfig::default();
    let run = |constants: Vec<Vec<Vec<i64>>>, d: usize| -> Option<RationalFunction1V> {
        let input = AlgebraInput::algebra(d, AlgebraMode::Subalgebra, constants).ok()?;
        let p = build_problem(&input);
        match topological_zeta_function(&p.datum, &p.beta, &p.spec, &cfg).0 {
            RunOutcome::Done(r) => Some(r),
            RunOutcome::Fail(_) => None,
        }
    };
    for d in 1..=3usize {
        let constants = vec![vec![vec![0; d]; d]; d];
        let Some(r) = run(constants, d) else {
            report.violation(format!("golden run: free lattice of rank {d} failed"));
            return;
        };
        let want = RationalFunction1V::new(
            vec![Int::from(1)],
            Int::from(1),
            (0..d as i64).map(|j| (1, j)).collect(),
        );
        if r != want {
            report.violation(format!("golden run: rank {d} lattice gave {r}, wanted {want}"));
            return;
        }
        if r.degree() != Some(-(d as i64)) {
            report.violation(format!("golden run: rank {d} degree {:?}", r.degree()));
            return;
        }
    }
    let mut heis = vec![vec![vec![0; 3]; 3]; 3];
    heis[0][1][2] = 1;
    heis[1][0][2] = -1;
    let Some(r) = run(heis, 3) else {
        report.violation("golden run: heisenberg failed".to_string());
        return;
    };
    let want = RationalFunction1V::new(
        vec![Int::from(3)],
        Int::from(2),
        vec![(1, 0), (1, 1), (2, 3)],
    );
    if r != want {
        report.violation(format!("golden run: heisenberg gave {r}, wanted {want}"));
        return;
    }
    report.ok("ok: golden runs (free lattices of rank 1..3, heisenberg) with degree checks".to_string());
}

pub struct VerifyOptions {
    pub seed: u64,
    pub euler_cache_path: Option<std::path::PathBuf>,
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    if let Some(path) = &opts.euler_cache_path {
        match SharedCache::open(path) {
            Ok(cache) => report.ok(format!(
                "ok: euler cache file readable ({} records)",
                cache.len()
            )),
            Err(e) => {
                report.violation(format!("euler cache: {e}"));
                return report;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(opts.seed);
    suite_generating_function(&mut rng, &mut report);
    suite_reduction_invariance(&mut rng, &mut report);
    suite_partitions(&mut rng, &mut report);
    suite_snf(&mut rng, &mut report);
    suite_euler(&mut report);
    suite_simplify_flags(&mut rng, &mut report);
    suite_golden_runs(&mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suites_pass_and_are_reproducible() {
        let opts = VerifyOptions {
            seed: 7,
            euler_cache_path: None,
        };
        let a = run_verify(&opts);
        assert!(a.passed(), "violations: {:?}", a.violations);
        let b = run_verify(&opts);
        assert_eq!(a.lines, b.lines);
    }
}
