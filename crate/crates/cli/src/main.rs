//! `cobweb`: validate premetric spaces, query distances in the derived
//! constructions, and run the verification suites.
//!
//! Exit codes: 0 when every verdict passes, 1 on a property failure, 2 on an
//! input error.

mod commands;
mod load;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use cobweb_core::verify::SuiteOptions;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::{Construction, Outcome};

#[derive(Parser, Debug)]
#[command(name = "cobweb", version, about = "Exact premetric, cobweb and tower computations")]
struct Cli {
    /// Print the full JSON report on stdout instead of the plain answer.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every sampled check.
    #[arg(long, global = true, env = "COBWEB_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a space is a premetric and report its axioms and separation flags.
    Validate {
        /// JSON space or presentation file, or one of arens, double-interval, cantor:K.
        #[arg(long)]
        spec: String,
    },
    /// Exact distance between two points of a construction over a space.
    Dist {
        #[arg(long)]
        spec: String,
        /// gamma, cobweb, tower:N, omega or eres.
        #[arg(long)]
        construction: Construction,
        /// First point: v:p, e:p,q,t or JSON.
        a: String,
        /// Second point.
        b: String,
    },
    /// Run a verification suite.
    Verify {
        /// s3, s4, s5, s7, s8, s9, s10 or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Denominator of the value grid for exhaustive table searches.
        #[arg(long, default_value_t = 2)]
        grid: u64,
        /// Random cases per sampled property.
        #[arg(long, default_value_t = 50)]
        sample: usize,
    },
    /// Distance census of cantor:K or of sampled points of eres:SPEC.
    Census {
        target: String,
        #[arg(long, default_value_t = 50)]
        sample: usize,
    },
}

impl Command {
    fn echo(&self) -> Value {
        match self {
            Command::Validate { spec } => json!({ "name": "validate", "spec": spec }),
            Command::Dist { spec, construction, a, b } => {
                json!({ "name": "dist", "spec": spec, "construction": construction.to_string(), "a": a, "b": b })
            }
            Command::Verify { suite, grid, sample } => {
                json!({ "name": "verify", "suite": suite, "grid": grid, "sample": sample })
            }
            Command::Census { target, sample } => json!({ "name": "census", "target": target, "sample": sample }),
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn run(cli: &Cli) -> anyhow::Result<(Outcome, Vec<u8>)> {
    Ok(match &cli.command {
        Command::Validate { spec } => commands::validate(spec)?,
        Command::Dist { spec, construction, a, b } => commands::dist(spec, *construction, a, b)?,
        Command::Verify { suite, grid, sample } => {
            let opts = SuiteOptions { grid: *grid, seed: cli.seed, sample: *sample };
            (commands::verify(suite, &opts)?, Vec::new())
        }
        Command::Census { target, sample } => commands::census(target, *sample, cli.seed)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let echo = cli.command.echo();
    let (mut outcome, digest_input) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    std::io::stdout(),
                    "{}",
                    json!({ "command": echo, "seed": cli.seed, "error": format!("{e:#}") })
                );
            }
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    outcome.verdicts.sort_by(|a, b| a.id.cmp(&b.id));

    let mut inputs = serde_json::to_vec(&echo).expect("plain data");
    inputs.extend(&digest_input);
    let mut report = json!({
        "command": echo,
        "seed": cli.seed,
        "inputs_digest": sha256_hex(&inputs),
        "verdicts": outcome.verdicts,
        "result": outcome.result,
    });
    report["report_digest"] = json!(sha256_hex(report.to_string().as_bytes()));
    report["timing_ms"] = json!(start.elapsed().as_millis() as u64);

    let failed: Vec<_> = outcome.verdicts.iter().filter(|v| !v.pass).collect();
    let out = if cli.json { serde_json::to_string_pretty(&report).expect("plain data") } else { outcome.plain };
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{out}");
    let passed = outcome.verdicts.len() - failed.len();
    eprintln!(
        "{}: {passed}/{} verdicts passed",
        report["command"]["name"].as_str().unwrap_or("?"),
        outcome.verdicts.len()
    );
    for v in &failed {
        eprintln!("  FAIL {}: {} — witness {}", v.id, v.detail, v.witness.clone().unwrap_or_default());
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
