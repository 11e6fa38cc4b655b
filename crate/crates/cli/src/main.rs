//! `wplimit`: command-line front end. Reads an optional JSON problem
//! description, applies flag overrides, runs one subcommand and prints a
//! versioned JSON report. Exit codes: 0 ok, 2 precondition/genericity
//! failure, 3 schema error, 4 internal invariant breach.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use wplimit::cli::{error_envelope, run, Command, Overrides, Problem, ProblemSpec};
use wplimit::Error;

#[derive(Parser)]
#[command(name = "wplimit", version, about = "Limits of Weierstrass points on two-component nodal curves")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Profile, twist data, degree table and closed-form coefficients.
    Invariants(Opts),
    /// Conditions (1.i), (3.i), (5.i) with witnesses; exits 2 if any fails.
    Conditions(Opts),
    /// Sections of glued sheaves (Lemma 1).
    H0(Opts),
    /// Ramification divisors of V_{π,i} with the gap-sequence oracle.
    Ramification(Opts),
    /// The limit divisor via equation (4) and W_ν (Theorem 4, Corollary 5).
    LimitDivisor(Opts),
    /// Smoothability of a glued sheaf or a pair (Theorem 2).
    Smoothable(Opts),
    /// Torus-orbit descriptors and membership (Theorem 3).
    Orbit(Opts),
    /// Chain-of-rational-curves bookkeeping and the λ search.
    Chain(Opts),
    /// Runs the property suite at a small scale.
    Selftest(Opts),
}

#[derive(Args)]
struct Opts {
    /// Input problem file (JSON).
    #[arg(value_name = "FILE.json", conflicts_with = "input")]
    file: Option<PathBuf>,
    /// Input problem file (JSON).
    #[arg(long = "in", value_name = "FILE.json")]
    input: Option<PathBuf>,
    #[arg(long)]
    g1: Option<u64>,
    #[arg(long)]
    g2: Option<u64>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration budget for (5.i) and the chain search.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE.json")]
    out: Option<PathBuf>,
    /// selftest: instances per randomized check (0 = vacuous pass).
    #[arg(long)]
    size: Option<u64>,
    /// selftest: corrupt the named check (or "all") to exercise failure reporting.
    #[arg(long, value_name = "CHECK", hide = true)]
    inject_failure: Option<String>,
    /// Omit the timing field, making the output byte-for-byte reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl Cmd {
    fn split(self) -> (Command, Opts) {
        match self {
            Cmd::Invariants(o) => (Command::Invariants, o),
            Cmd::Conditions(o) => (Command::Conditions, o),
            Cmd::H0(o) => (Command::H0, o),
            Cmd::Ramification(o) => (Command::Ramification, o),
            Cmd::LimitDivisor(o) => (Command::LimitDivisor, o),
            Cmd::Smoothable(o) => (Command::Smoothable, o),
            Cmd::Orbit(o) => (Command::Orbit, o),
            Cmd::Chain(o) => (Command::Chain, o),
            Cmd::Selftest(o) => (Command::Selftest, o),
        }
    }
}

fn load_spec(opts: &Opts) -> Result<ProblemSpec, Error> {
    match opts.input.as_ref().or(opts.file.as_ref()) {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::schema(format!("cannot read {}: {e}", path.display())))?;
            ProblemSpec::from_json_str(&text)
        }
        None => Ok(ProblemSpec::default()),
    }
}

fn emit(out: Option<&PathBuf>, value: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::schema(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let (command, opts) = Cli::parse().command.split();
    let overrides = Overrides {
        g1: opts.g1,
        g2: opts.g2,
        delta: opts.delta,
        seed: opts.seed,
        budget: opts.budget,
        size: opts.size,
        mutate: opts.inject_failure.clone(),
    };
    let start = Instant::now();
    let outcome = load_spec(&opts)
        .and_then(|spec| Problem::new(spec, &overrides))
        .and_then(|problem| {
            let report = run(command, &problem)?;
            let timing = (!opts.no_timing).then(|| start.elapsed().as_millis());
            Ok(report.to_json(&problem.spec, timing))
        });
    let (value, code) = match outcome {
        Ok(v) => {
            let code = v["exit_code"].as_i64().unwrap_or(4) as u8;
            (v, code)
        }
        Err(e) => {
            eprintln!("wplimit {}: {e}", command.name());
            (error_envelope(command, &e), e.exit_code() as u8)
        }
    };
    if let Err(e) = emit(opts.out.as_ref(), &value) {
        eprintln!("wplimit: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    ExitCode::from(code)
}
