//! Command-line interface for computing topological zeta functions of
//! algebras and modules given by integer structure constants.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use torzeta::cache::SharedCache;
use torzeta::engine::{self, FailPhase, RunConfig, RunOutcome};
use torzeta::formats::{parse_mode, InputDocument, OutputDocument, OutputStats};
use torzeta::verify::{run_verify, VerifyOptions};
use torzeta_core::algebras::build_problem;

#[derive(Parser)]
#[command(name = "torzeta", version, about = "Topological zeta functions of algebras and modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the zeta function of the algebra or module in INPUT.
    Run(RunArgs),
    /// Run the randomised self-check suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to a JSON input document.
    input: PathBuf,
    /// Counting mode, overriding the document's own "mode" field.
    #[arg(long)]
    mode: Option<String>,
    /// Maximum reduction depth before giving up.
    #[arg(long, default_value_t = 3)]
    depth_cap: u32,
    /// Number of worker threads for the evaluation stage.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write a per-iteration record of the reduction stage to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Persistent Euler characteristic cache file.
    #[arg(long, env = "ZETA_EULER_CACHE")]
    euler_cache: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the randomised suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Persistent Euler characteristic cache file.
    #[arg(long, env = "ZETA_EULER_CACHE")]
    euler_cache: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match cli.command {
        Command::Run(args) => run_command(args),
        Command::Verify(args) => verify_command(args),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn run_command(args: RunArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(text) => text,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.input.display())),
    };
    let doc = match InputDocument::from_json(&text) {
        Ok(doc) => doc,
        Err(e) => return usage_error(&format!("{}: {e}", args.input.display())),
    };
    let mode_override = match args.mode.as_deref() {
        None => None,
        Some(name) => match parse_mode(name) {
            Ok(mode) => Some(mode),
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    let input = match doc.to_algebra_input(mode_override) {
        Ok(input) => input,
        Err(e) => return usage_error(&format!("{}: {e}", args.input.display())),
    };
    if args.depth_cap == 0 {
        return usage_error("--depth-cap must be at least 1");
    }
    if args.jobs == Some(0) {
        return usage_error("--jobs must be at least 1");
    }
    if let Some(path) = &args.euler_cache {
        // Surface a corrupt cache before any work happens.
        if let Err(e) = SharedCache::open(path) {
            return usage_error(&format!("euler cache {}: {e}", path.display()));
        }
    }

    let mut cfg = RunConfig {
        depth_cap: args.depth_cap,
        trace: args.trace.is_some(),
        euler_cache_path: args.euler_cache.clone(),
        mode: input.mode(),
        ..RunConfig::default()
    };
    if let Some(jobs) = args.jobs {
        cfg.worker_count = jobs;
    }

    let problem = build_problem(&input);
    let (outcome, stats) =
        engine::topological_zeta_function(&problem.datum, &problem.beta, &problem.spec, &cfg);

    if let Some(path) = &args.trace {
        let mut body = stats.trace_records.join("\n");
        if !body.is_empty() {
            body.push('\n');
        }
        if let Err(e) = std::fs::write(path, body) {
            return usage_error(&format!("cannot write trace {}: {e}", path.display()));
        }
    }

    let out_stats = OutputStats {
        regular_data: stats.regular_data,
        terms: stats.terms,
        wall_ms: stats.wall.as_millis() as u64,
    };
    match outcome {
        RunOutcome::Done(f) => {
            let doc_out = OutputDocument::ok(doc.name.clone(), &f, out_stats);
            print!("{}", doc_out.to_json_string());
            ExitCode::SUCCESS
        }
        RunOutcome::Fail(failure) => {
            let datum: serde_json::Value = serde_json::from_str(&failure.datum)
                .unwrap_or_else(|_| serde_json::Value::String(failure.datum.clone()));
            let doc_out =
                OutputDocument::fail(doc.name.clone(), failure.phase.name(), datum, out_stats);
            print!("{}", doc_out.to_json_string());
            match failure.phase {
                FailPhase::Reduce => ExitCode::from(2),
                FailPhase::Euler => ExitCode::from(3),
            }
        }
    }
}

fn verify_command(args: VerifyArgs) -> ExitCode {
    let opts = VerifyOptions { seed: args.seed, euler_cache_path: args.euler_cache.clone() };
    let report = run_verify(&opts);
    for line in &report.lines {
        println!("{line}");
    }
    if report.passed() {
        println!("verify: all suites passed");
        ExitCode::SUCCESS
    } else {
        println!("verify: {} violation(s)", report.violations.len());
        ExitCode::from(4)
    }
}
