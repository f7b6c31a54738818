//! End-to-end tests of the command-line interface: exit codes, output
//! round-tripping, trace emission, cache handling, and verify reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

use torzeta::formats::OutputDocument;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torzeta"))
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_args(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn missing_input_exits_one() {
    let out = run_args(&["run", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_documents_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &str); 4] = [
        ("not_json.json", "this is not json"),
        ("bad_index.json", r#"{"rank": 2, "mode": "subalgebra", "products": [[3, 1, [1, 0]]]}"#),
        ("bad_len.json", r#"{"rank": 2, "mode": "subalgebra", "products": [[1, 1, [1]]]}"#),
        ("no_mode.json", r#"{"rank": 2, "products": []}"#),
    ];
    for (name, body) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = run_args(&["run", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "case {name}");
    }
    let out = run_args(&["run", &data("z1.json"), "--mode", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_args(&["run", &data("z1.json"), "--depth-cap", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_args(&["run", &data("z1.json"), "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_args(&["bogus-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_round_trips() {
    let out = run_args(&["run", &data("z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = OutputDocument::from_json(&text).unwrap();
    assert_eq!(doc.status, "ok");
    let f = doc.rational_function().unwrap();
    let expected = torzeta_core::topeval::RationalFunction1V::new(
        vec![torzeta_core::Int::from(1)],
        torzeta_core::Int::from(1),
        vec![(1, 0), (1, 1)],
    );
    assert_eq!(f, expected);
}

#[test]
fn mode_override_is_accepted() {
    let out = run_args(&["run", &data("heisenberg.json"), "--mode", "ideal"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = OutputDocument::from_json(&text).unwrap();
    assert_eq!(doc.status, "ok");
    assert!(doc.denominator.as_ref().is_some_and(|d| !d.is_empty()));
}

#[test]
fn submodule_documents_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shift.json");
    std::fs::write(
        &path,
        r#"{"rank": 2, "mode": "submodule", "generators": [[[0, 1], [0, 0]]]}"#,
    )
    .unwrap();
    let out = run_args(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = OutputDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.status, "ok");
}

#[test]
fn trace_records_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.log");
    let out = run_args(&[
        "run",
        &data("heisenberg.json"),
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(!body.trim().is_empty());
    // Work-list records carry the serialized datum (cone plus term lists).
    assert!(body
        .lines()
        .any(|l| l.starts_with("iter ") && l.contains("polys") && l.contains("weak")));
    assert!(body.lines().all(|l| !l.trim().is_empty()));
}

#[test]
fn euler_cache_file_is_created_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("euler.json");
    let out = run_args(&[
        "run",
        &data("heisenberg.json"),
        "--euler-cache",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(path.exists());
    // Second run through the environment variable alias.
    let out = bin()
        .args(["run", &data("heisenberg.json")])
        .env("ZETA_EULER_CACHE", path.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_cache_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("euler.json");
    std::fs::write(&path, "{\"zz\": {\"value\": \"3\"}}").unwrap();
    let out = run_args(&[
        "run",
        &data("z1.json"),
        "--euler-cache",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_args(&["verify", "--euler-cache", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violation"));
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let a = run_args(&["verify", "--seed", "7"]);
    let b = run_args(&["verify", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "stdout: {}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
}
