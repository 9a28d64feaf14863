mod eval;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{builder::PossibleValuesParser, Parser, Subcommand};
use qforms::error::Error;
use qforms::suites::{self, SuiteConfig, DEFAULT_POOL};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "qforms", version, about = "Invariants of rational quadratic and quaternionic skew-hermitian forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite (or "all") and report failures.
    Suite {
        #[arg(value_parser = PossibleValuesParser::new(suite_names()))]
        name: String,
        /// Trials per suite (each suite has its own default).
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest index set |X| in family and hermitian suites (1..=4).
        #[arg(long, default_value_t = 3)]
        max_set_size: usize,
        /// Comma-separated squarefree parts of random rationals.
        #[arg(long, allow_hyphen_values = true)]
        coeff_pool: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Enumerate all sections / small-coefficient sweeps where a suite supports it.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Evaluate an invariant of a diagonal quadratic form (or family).
    EvalQuad {
        /// Form JSON, e.g. '["1","-2"]', a family '[["1","2"],["3","5"]]', or @file.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// One of P:r,d  Q:n,d  w:d  Pgamma:[..]  Qgamma:[..]  psi0:J,A
        #[arg(long)]
        invariant: String,
    },
    /// Evaluate an invariant of a diagonal skew-hermitian form.
    EvalHerm {
        /// '{"algebra":{"a":"-1","b":"-1"},"gens":[["1","0","0"],...]}' or @file.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// One of Qherm:n,d  psi0:J,A  betahat:d1,d2,...
        #[arg(long)]
        invariant: String,
    },
}

fn suite_names() -> Vec<&'static str> {
    let mut v = suites::SUITES.to_vec();
    v.push("all");
    v
}

enum Failure {
    /// Exit 1: a property violation.
    Property(String),
    /// Exit 2: bad usage or input.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Property(_) | Error::Internal(_) => Failure::Property(e.to_string()),
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
        }
    }
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed JSON: {e}")))
}

fn parse_pool(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad coefficient {t:?}"))))
        .collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Suite { name, trials, seed, max_set_size, coeff_pool, json, exhaustive } => {
            let cfg = SuiteConfig {
                trials,
                seed,
                max_set_size,
                coeff_pool: match coeff_pool {
                    Some(s) => parse_pool(&s)?,
                    None => DEFAULT_POOL.to_vec(),
                },
                exhaustive,
            };
            let report = suites::run(&name, &cfg)?;
            for s in &report.suites {
                println!(
                    "{:<16} {}  trials={} checks={} failures={} ({:.2?})",
                    s.suite,
                    if s.passed() { "PASS" } else { "FAIL" },
                    s.trials,
                    s.checks,
                    s.failures.len(),
                    s.elapsed
                );
                for (k, v) in &s.notes {
                    println!("    {k}: {v}");
                }
                for f in s.failures.iter().take(5) {
                    println!("    trial {}: {}: {}", f.trial, f.check, f.detail);
                }
            }
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
                fs::write(&path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Property(format!("suite {name} found property violations")))
            }
        }
        Command::EvalQuad { form, invariant } => {
            println!("{}", pretty(&eval::eval_quad(&invariant, &read_json(&form)?)?));
            Ok(())
        }
        Command::EvalHerm { form, invariant } => {
            println!("{}", pretty(&eval::eval_herm(&invariant, &read_json(&form)?)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("qforms: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qforms: {msg}");
            ExitCode::from(2)
        }
    }
}
