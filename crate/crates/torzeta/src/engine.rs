//! Two-stage driver. Stage one runs a depth-first work list over toric data:
//! pop, simplify, then balance (if some initial form is undefined), store
//! (if regular), or reduce (otherwise), discarding trivial data throughout.
//! Stage two evaluates every regular datum as a stream of simple terms, in
//! parallel, and reconstructs the final univariate rational function by
//! exact interpolation. All arithmetic is exact, so the result is identical
//! for every worker count.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use torzeta_core::algebras::AlgebraMode;
use torzeta_core::topeval::{self, Factor, RationalFunction1V, Specialization};
use torzeta_core::toric::{self, ToricDatum};
use torzeta_core::Rat;

use crate::cache::SharedCache;
use crate::formats;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub depth_cap: u32,
    pub worker_count: usize,
    pub trace: bool,
    /// Euler result store; callers should validate the file beforehand
    /// (an unreadable file aborts the run).
    pub euler_cache_path: Option<PathBuf>,
    pub mode: AlgebraMode,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            depth_cap: 3,
            worker_count: std::thread::available_parallelism()
                .map(|v| v.get())
                .unwrap_or(1),
            trace: false,
            euler_cache_path: None,
            mode: AlgebraMode::Subalgebra,
        }
    }
}

impl RunConfig {
    fn validate(&self) {
        assert!(self.depth_cap >= 1, "depth cap must be at least one");
        assert!(self.worker_count >= 1, "worker count must be at least one");
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailPhase {
    Reduce,
    Euler,
}

impl FailPhase {
    pub fn name(&self) -> &'static str {
        match self {
            FailPhase::Reduce => "reduce",
            FailPhase::Euler => "euler",
        }
    }
}

/// A declined computation: which phase gave up and the offending datum,
/// serialized for post-mortem diagnosis.
#[derive(Clone, Debug)]
pub struct RunFailure {
    pub phase: FailPhase,
    pub datum: String,
}

#[derive(Clone, Debug)]
pub enum RunOutcome {
    Done(RationalFunction1V),
    Fail(RunFailure),
}

#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub regular_data: usize,
    pub terms: u64,
    pub wall: Duration,
    /// One record per work-list iteration and per evaluated datum when
    /// tracing is enabled.
    pub trace_records: Vec<String>,
}

fn depth_histogram(data: &[ToricDatum]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for t in data {
        *h.entry(t.depth()).or_insert(0usize) += 1;
    }
    h
}

fn report_progress(iteration: u64, unprocessed: &[ToricDatum], regular: &[ToricDatum]) {
    eprintln!(
        "stage1: iteration {iteration}, unprocessed {} (depths {:?}), regular {}",
        unprocessed.len(),
        depth_histogram(unprocessed),
        regular.len(),
    );
}

fn serialize_datum(t: &ToricDatum) -> String {
    formats::datum_to_json(t).to_string()
}

/// Work-list loop: turns the starting datum into a list of regular data
/// partitioning it, or fails in the reduce phase.
pub fn stage1(t0: &ToricDatum, cfg: &RunConfig) -> Result<Vec<ToricDatum>, RunFailure> {
    let mut trace = Vec::new();
    stage1_traced(t0, cfg, &mut trace)
}

fn stage1_traced(
    t0: &ToricDatum,
    cfg: &RunConfig,
    trace: &mut Vec<String>,
) -> Result<Vec<ToricDatum>, RunFailure> {
    cfg.validate();
    let mut unprocessed = Vec::new();
    if !t0.is_trivial() {
        unprocessed.push(t0.clone());
    }
    let mut regular: Vec<ToricDatum> = Vec::new();
    let mut iteration = 0u64;
    while let Some(t) = unprocessed.pop() {
        iteration += 1;
        if iteration % 512 == 0 {
            report_progress(iteration, &unprocessed, &regular);
        }
        let s = toric::simplify(&t);
        if s.is_trivial() {
            if cfg.trace {
                trace.push(format!(
                    "iter {iteration}: trivial after simplify {}",
                    serialize_datum(&t)
                ));
            }
            continue;
        }
        if !toric::is_balanced(&s) {
            let mut kept = 0usize;
            for piece in toric::balance(&s) {
                if !piece.is_trivial() {
                    unprocessed.push(piece);
                    kept += 1;
                }
            }
            if cfg.trace {
                trace.push(format!(
                    "iter {iteration}: balance into {kept} pieces {}",
                    serialize_datum(&s)
                ));
            }
        } else if toric::is_regular(&s).expect("datum is balanced here") {
            if cfg.trace {
                trace.push(format!(
                    "iter {iteration}: regular {}",
                    serialize_datum(&s)
                ));
            }
            regular.push(s);
        } else {
            match toric::reduce(&s, cfg.depth_cap) {
                Ok(children) => {
                    let mut kept = 0usize;
                    for child in children {
                        if !child.is_trivial() {
                            unprocessed.push(child);
                            kept += 1;
                        }
                    }
                    if cfg.trace {
                        trace.push(format!(
                            "iter {iteration}: reduce into {kept} pieces {}",
                            serialize_datum(&s)
                        ));
                    }
                }
                Err(e) => {
                    if cfg.trace {
                        trace.push(format!(
                            "iter {iteration}: reduce failed ({e}) {}",
                            serialize_datum(&s)
                        ));
                    }
                    return Err(RunFailure {
                        phase: FailPhase::Reduce,
                        datum: serialize_datum(&s),
                    });
                }
            }
        }
    }
    report_progress(iteration, &unprocessed, &regular);
    eprintln!(
        "stage1: done after {iteration} iterations, {} regular data (depths {:?})",
        regular.len(),
        depth_histogram(&regular),
    );
    Ok(regular)
}

type DatumError = (usize, topeval::TopevalError);

/// Candidate denominator pass: per-datum accumulation of factor
/// multiplicities and term counts, merged by per-factor maximum.
fn collect_denominator(
    regular: &[ToricDatum],
    beta: &[Vec<i64>],
    spec: &Specialization,
    cache: &SharedCache,
) -> Result<(BTreeMap<Factor, usize>, Vec<u64>), DatumError> {
    let per_datum: Vec<(BTreeMap<Factor, usize>, u64)> = regular
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut acc = BTreeMap::new();
            let mut count = 0u64;
            topeval::evaluate_topologically_visit(t, beta, spec, cache, &mut |term| {
                topeval::accumulate_denominator(&mut acc, &term);
                count += 1;
            })
            .map_err(|e| (i, e))?;
            Ok((acc, count))
        })
        .collect::<Result<_, DatumError>>()?;
    let mut merged: BTreeMap<Factor, usize> = BTreeMap::new();
    let mut counts = Vec::with_capacity(per_datum.len());
    for (acc, count) in per_datum {
        for (f, m) in acc {
            let e = merged.entry(f).or_insert(0);
            if *e < m {
                *e = m;
            }
        }
        counts.push(count);
    }
    Ok((merged, counts))
}

/// Value pass: exact sums of all simple terms at every grid point.
fn collect_values(
    regular: &[ToricDatum],
    beta: &[Vec<i64>],
    spec: &Specialization,
    cache: &SharedCache,
    points: &[Rat],
) -> Result<Vec<Rat>, DatumError> {
    let zero = vec![Rat::default(); points.len()];
    let per_datum: Vec<Vec<Rat>> = regular
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut vals = zero.clone();
            topeval::evaluate_topologically_visit(t, beta, spec, cache, &mut |term| {
                for (v, x) in vals.iter_mut().zip(points) {
                    *v += term
                        .evaluate(std::slice::from_ref(x))
                        .expect("grid point avoids all candidate poles");
                }
            })
            .map_err(|e| (i, e))?;
            Ok(vals)
        })
        .collect::<Result<_, DatumError>>()?;
    let mut total = zero;
    for vals in per_datum {
        for (t, v) in total.iter_mut().zip(vals) {
            *t += v;
        }
    }
    Ok(total)
}

/// Full pipeline: stage one, then the two-pass parallel evaluation and the
/// interpolation of the final rational function.
pub fn topological_zeta_function(
    t0: &ToricDatum,
    beta: &[Vec<i64>],
    spec: &Specialization,
    cfg: &RunConfig,
) -> (RunOutcome, RunStats) {
    let start = Instant::now();
    let mut stats = RunStats::default();
    let finish = |outcome: RunOutcome, mut stats: RunStats, trace: Vec<String>| {
        stats.wall = start.elapsed();
        stats.trace_records = trace;
        (outcome, stats)
    };

    let mut trace = Vec::new();
    let regular = match stage1_traced(t0, cfg, &mut trace) {
        Ok(r) => r,
        Err(f) => return finish(RunOutcome::Fail(f), stats, trace),
    };
    stats.regular_data = regular.len();

    let cache = match &cfg.euler_cache_path {
        Some(path) => SharedCache::open(path).expect("validated euler cache path"),
        None => SharedCache::in_memory(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .expect("thread pool");

    let result = pool.install(|| -> Result<RationalFunction1V, DatumError> {
        let (denominator, counts) = collect_denominator(&regular, beta, spec, &cache)?;
        stats.terms = counts.iter().sum();
        if cfg.trace {
            for (i, c) in counts.iter().enumerate() {
                trace.push(format!("eval datum {i}: {c} terms"));
            }
            trace.push(format!(
                "candidate denominator: {} distinct factors, degree {}",
                denominator.len(),
                denominator.values().sum::<usize>(),
            ));
        }
        eprintln!(
            "stage2: {} terms over {} regular data, candidate degree {}",
            stats.terms,
            regular.len(),
            denominator.values().sum::<usize>(),
        );
        let points = topeval::interpolation_points(&denominator);
        let values = collect_values(&regular, beta, spec, &cache, &points)?;
        Ok(topeval::interpolate_from_values(&denominator, &points, &values)
            .expect("spare-point verification holds on exact sums"))
    });
    if let Err(e) = cache.flush() {
        eprintln!("warning: euler cache flush failed: {e}");
    }

    match result {
        Ok(r) => {
            if let Some(deg) = r.degree() {
                assert!(deg <= 0, "final degree {deg} must be nonpositive");
                if cfg.mode == AlgebraMode::Subalgebra && deg != -(beta.len() as i64) {
                    eprintln!(
                        "warning: subalgebra run of rank {} has degree {deg}, expected {}",
                        beta.len(),
                        -(beta.len() as i64),
                    );
                }
            }
            eprintln!("stage2: done in {:?}", start.elapsed());
            finish(RunOutcome::Done(r), stats, trace)
        }
        Err((i, e)) => finish(
            RunOutcome::Fail(RunFailure {
                phase: FailPhase::Euler,
                datum: format!("{{\"reason\": {:?}, \"datum\": {}}}", e.to_string(),
                    serialize_datum(&regular[i])),
            }),
            stats,
            trace,
        ),
    }
}
