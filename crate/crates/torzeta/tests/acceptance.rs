//! Acceptance suite: each test prints a single PASS line on success and
//! panics with a FAIL line otherwise. Heavy computations serialize on a
//! shared lock so wall-clock budgets are measured without contention.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use torzeta::engine::{self, stage1, RunConfig, RunOutcome};
use torzeta::formats::InputDocument;
use torzeta::verify::{run_verify, VerifyOptions};
use torzeta_core::algebras::build_problem;
use torzeta_core::topeval::RationalFunction1V;
use torzeta_core::Int;

static HEAVY: Mutex<()> = Mutex::new(());

fn data_path(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load_problem(name: &str) -> torzeta_core::algebras::ProblemInstance {
    let text = std::fs::read_to_string(data_path(name)).expect("input document");
    let doc = InputDocument::from_json(&text).expect("valid document");
    let input = doc.to_algebra_input(None).expect("valid algebra");
    build_problem(&input)
}

fn compute(name: &str) -> (RationalFunction1V, Duration) {
    let p = load_problem(name);
    let start = Instant::now();
    let (outcome, _) =
        engine::topological_zeta_function(&p.datum, &p.beta, &p.spec, &RunConfig::default());
    let wall = start.elapsed();
    match outcome {
        RunOutcome::Done(f) => (f, wall),
        RunOutcome::Fail(f) => panic!("FAIL: {name} failed in phase {}", f.phase.name()),
    }
}

fn expect(
    label: &str,
    budget: Duration,
    got: (RationalFunction1V, Duration),
    numerator: &[i64],
    constant: i64,
    factors: &[(i64, i64)],
) {
    let want = RationalFunction1V::new(
        numerator.iter().map(|&c| Int::from(c)).collect(),
        Int::from(constant),
        factors.to_vec(),
    );
    let (f, wall) = got;
    assert_eq!(f, want, "FAIL {label}: wrong rational function, got {f}");
    assert!(
        wall <= budget,
        "FAIL {label}: took {wall:?}, budget {budget:?}"
    );
    println!("PASS {label}: exact match in {wall:?} (budget {budget:?})");
}

#[test]
fn criterion_1_free_lattices() {
    let _guard = HEAVY.lock().unwrap();
    for d in 1..=4i64 {
        let name = format!("z{d}.json");
        let factors: Vec<(i64, i64)> = (0..d).map(|k| (1, k)).collect();
        expect(
            &format!("criterion 1 (Z^{d})"),
            Duration::from_secs(10),
            compute(&name),
            &[1],
            1,
            &factors,
        );
    }
}

#[test]
fn criterion_2_heisenberg() {
    let _guard = HEAVY.lock().unwrap();
    expect(
        "criterion 2 (Heisenberg)",
        Duration::from_secs(60),
        compute("heisenberg.json"),
        &[3],
        2,
        &[(1, 0), (1, 1), (2, 3)],
    );
}

#[test]
fn criterion_3_truncated_polynomial_algebra() {
    let _guard = HEAVY.lock().unwrap();
    expect(
        "criterion 3 (Z[X]/X^4)",
        Duration::from_secs(30 * 60),
        compute("zx4.json"),
        &[-842400, 5044460, -12036071, 14322332, -8509620, 2021760],
        168480,
        &[(1, 0), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (4, 3), (6, 5)],
    );
}

#[test]
fn criterion_4_fil4_first_stage() {
    let _guard = HEAVY.lock().unwrap();
    let p = load_problem("fil4.json");
    let start = Instant::now();
    let regular = match stage1(&p.datum, &RunConfig::default()) {
        Ok(r) => r,
        Err(f) => panic!("FAIL criterion 4: stage one failed in phase {}", f.phase.name()),
    };
    let wall = start.elapsed();
    assert_eq!(
        regular.len(),
        543,
        "FAIL criterion 4: expected 543 regular data, got {}",
        regular.len()
    );
    let budget = Duration::from_secs(15 * 60);
    assert!(wall <= budget, "FAIL criterion 4: took {wall:?}, budget {budget:?}");
    println!("PASS criterion 4 (Fil4 stage one): 543 regular data in {wall:?} (budget {budget:?})");
}

#[test]
#[ignore = "stretch goal: full Fil4 run takes on the order of an hour"]
fn criterion_5_fil4_full_run() {
    let _guard = HEAVY.lock().unwrap();
    let numerator: [i64; 10] = [
        -28569052512,
        161557332768,
        -404678115300,
        589429290044,
        -550262853249,
        341501393670,
        -140917681751,
        37286908278,
        -5741480808,
        392031360,
    ];
    let factors = [
        (1, 0),
        (1, 1),
        (2, 3),
        (3, 4),
        (4, 7),
        (4, 7),
        (5, 8),
        (5, 9),
        (6, 11),
        (6, 11),
        (6, 11),
        (7, 12),
        (7, 13),
        (15, 26),
    ];
    let got = compute("fil4.json");
    let wall = got.1;
    expect(
        "criterion 5 (Fil4 full)",
        Duration::from_secs(4 * 60 * 60),
        got,
        &numerator,
        3,
        &factors,
    );
    // Degree is exactly -rank, so the scaling limit of the zeta function is
    // the ratio of the leading numerator coefficient to the full leading
    // denominator coefficient.
    let lead_den: i64 = 3 * factors.iter().map(|(a, _)| a).product::<i64>();
    let magic = torzeta_core::Rat::new(Int::from(392031360i64), Int::from(lead_den));
    let want = torzeta_core::Rat::new(Int::from(463), Int::from(1350));
    assert_eq!(magic, want, "FAIL criterion 5: scaling limit mismatch");
    println!("PASS criterion 5 (Fil4 scaling limit): 463/1350 in {wall:?}");
}

#[test]
fn criterion_6_property_suites() {
    let start = Instant::now();
    let report = run_verify(&VerifyOptions { seed: 0, euler_cache_path: None });
    let wall = start.elapsed();
    assert!(
        report.passed(),
        "FAIL criterion 6: violations {:?}",
        report.violations
    );
    let budget = Duration::from_secs(5 * 60);
    assert!(wall <= budget, "FAIL criterion 6: took {wall:?}, budget {budget:?}");
    println!(
        "PASS criterion 6 (property suites): {} suites in {wall:?} (budget {budget:?})",
        report.lines.len()
    );
}

fn cli_output(input: &str, jobs: usize) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_torzeta"))
        .arg("run")
        .arg(data_path(input))
        .arg("--jobs")
        .arg(jobs.to_string())
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "FAIL criterion 7: run of {input} exited with {:?}",
        out.status.code()
    );
    out.stdout
}

fn normalized(bytes: &[u8]) -> String {
    let mut doc: serde_json::Value = serde_json::from_slice(bytes).expect("valid JSON output");
    doc["stats"]["wall_ms"] = serde_json::Value::from(0u64);
    serde_json::to_string_pretty(&doc).unwrap()
}

#[test]
fn criterion_7_deterministic_output() {
    let _guard = HEAVY.lock().unwrap();
    for input in ["z3.json", "heisenberg.json"] {
        let a = cli_output(input, 1);
        let b = cli_output(input, 1);
        assert_eq!(
            normalized(&a),
            normalized(&b),
            "FAIL criterion 7: {input} differs between identical runs"
        );
        let eight = cli_output(input, 8);
        assert_eq!(
            normalized(&a),
            normalized(&eight),
            "FAIL criterion 7: {input} differs between --jobs 1 and --jobs 8"
        );
    }
    println!("PASS criterion 7: byte-identical output documents across runs and worker counts");
}
