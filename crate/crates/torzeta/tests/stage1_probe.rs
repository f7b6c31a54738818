use std::time::Instant;

use torzeta::engine::{stage1, RunConfig};
use torzeta::formats::InputDocument;
use torzeta_core::algebras::build_problem;
use torzeta_core::toric;

fn problem(name: &str) -> torzeta_core::algebras::ProblemInstance {
    let text = std::fs::read_to_string(format!(
        "{}/../../data/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let doc = InputDocument::from_json(&text).unwrap();
    let input = doc.to_algebra_input(None).unwrap();
    build_problem(&input)
}

fn shapes(t: &torzeta_core::toric::ToricDatum) -> Vec<usize> {
    t.polys().iter().map(|f| f.num_terms()).collect()
}

#[test]
#[ignore = "manual probe"]
fn first_steps() {
    for name in ["zx4.json", "fil4.json"] {
        let p = problem(name);
        eprintln!("== {name}: initial family {:?}", shapes(&p.datum));
        let t0 = Instant::now();
        let s = toric::simplify(&p.datum);
        eprintln!(
            "   simplify: {:?}, family {:?}, cone rows {}+{}",
            t0.elapsed(),
            shapes(&s),
            s.cone().weak().len(),
            s.cone().strict().len()
        );
        let t1 = Instant::now();
        let pieces = toric::balance(&s);
        eprintln!("   balance: {:?}, {} pieces", t1.elapsed(), pieces.len());
    }
}

#[test]
#[ignore = "manual probe"]
fn fil4_piece_costs() {
    let p = problem("fil4.json");
    let s = toric::simplify(&p.datum);
    let pieces = toric::balance(&s);
    eprintln!("{} pieces", pieces.len());
    let mut worst = std::time::Duration::ZERO;
    let start = Instant::now();
    let mut singular = 0usize;
    for (k, piece) in pieces.iter().enumerate() {
        let t0 = Instant::now();
        let sp = toric::simplify(piece);
        let ts = t0.elapsed();
        let t1 = Instant::now();
        let balanced = toric::is_balanced(&sp);
        let tb = t1.elapsed();
        let t2 = Instant::now();
        let regular = if sp.is_trivial() || !balanced {
            None
        } else {
            Some(toric::is_regular(&sp).unwrap())
        };
        let tr = t2.elapsed();
        if regular == Some(false) {
            singular += 1;
        }
        let total = ts + tb + tr;
        if total > worst {
            worst = total;
            eprintln!(
                "piece {k}: simplify {ts:?} balanced({balanced}) {tb:?} regular({regular:?}) {tr:?}"
            );
        }
    }
    eprintln!("total {:?}, singular pieces {singular}", start.elapsed());
}

#[test]
#[ignore = "manual probe"]
fn fil4_stage1_count() {
    let p = problem("fil4.json");
    let start = Instant::now();
    let regular = stage1(&p.datum, &RunConfig::default()).expect("no failure");
    eprintln!("stage1: {} regular data in {:?}", regular.len(), start.elapsed());
}
