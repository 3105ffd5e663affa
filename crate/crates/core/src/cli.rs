//! Command-line front end. `main_with` returns the process exit code:
//! 0 success, 2 bad input (config, CSV, flags), 3 a run failed,
//! 4 the runtime bound does not apply.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::harness::{
    format_number, parse_config, read_records, run_experiment, summarize, write_records,
    write_summary,
};
use crate::rng::RandomSource;
use crate::selftest::{self, reference_dlb, DlbFn};
use crate::theory::{c_alpha, estimate_drift, metropolis_bound, DriftAlgorithm, ALPHA_THRESHOLD};
use crate::BitString;

pub const WORKERS_ENV: &str = "DLB_LAB_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "dlb-lab",
    version,
    about = "Runtime experiments on the DLB benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment grid and write one CSV line per run.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (defaults to all cores).
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Fill the wall_ms column (makes output timing dependent).
        #[arg(long)]
        wall_time: bool,
    },
    /// Median and quartiles per (algorithm, n) from a records CSV.
    Summarize {
        records: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print C(alpha) and the Metropolis runtime bound n^2 / C(alpha).
    Theory {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
    /// Estimate the one-step HLB drift per DLB value.
    Drift {
        #[arg(long, value_enum)]
        algorithm: DriftChoice,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        alpha: f64,
        /// Mutation rate rate_factor/n for the (1+1) EA.
        #[arg(long, default_value_t = 1.0)]
        rate_factor: f64,
        #[arg(long, default_value_t = 1.5)]
        delta: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Only this DLB value (default: every non-optimal value).
        #[arg(long)]
        class: Option<u64>,
    },
    /// Exhaustive small-size consistency checks.
    Selftest {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DriftChoice {
    Metropolis,
    Parity,
    Ea,
}

pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            out: path,
            workers,
            seed,
            wall_time,
        } => cmd_run(&config, &path, workers, seed, wall_time, out),
        Command::Summarize { records, out: path } => cmd_summarize(&records, &path, out),
        Command::Theory { alpha, n } => cmd_theory(alpha, n, out),
        Command::Drift {
            algorithm,
            n,
            alpha,
            rate_factor,
            delta,
            samples,
            seed,
            class,
        } => {
            let algorithm = match algorithm {
                DriftChoice::Metropolis => DriftAlgorithm::Metropolis { alpha },
                DriftChoice::Parity => DriftAlgorithm::ParityHillclimber,
                DriftChoice::Ea => DriftAlgorithm::OnePlusOneEa {
                    rate: rate_factor / n.max(1) as f64,
                },
            };
            cmd_drift(algorithm, n, delta, samples, seed, class, out)
        }
        Command::Selftest { inject_fault } => cmd_selftest(inject_fault, out),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn input_error(e: impl std::fmt::Display) -> (i32, String) {
    (2, e.to_string())
}

fn cmd_run(
    config: &PathBuf,
    path: &PathBuf,
    workers: Option<usize>,
    seed: Option<u64>,
    wall_time: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let text = std::fs::read_to_string(config)
        .map_err(|e| input_error(format!("{}: {e}", config.display())))?;
    let mut cfg = parse_config(&text).map_err(input_error)?;
    if let Some(seed) = seed {
        cfg.master_seed = seed;
    }
    cfg.record_wall_time = wall_time;
    if workers == Some(0) {
        return Err(input_error("workers must be positive"));
    }
    let records = run_experiment(&cfg, workers).map_err(|e| match e {
        Error::Config(_) => input_error(e),
        other => (3, other.to_string()),
    })?;
    let file = File::create(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    write_records(BufWriter::new(file), &records).map_err(input_error)?;
    let _ = writeln!(out, "wrote {} records to {}", records.len(), path.display());
    Ok(0)
}

fn cmd_summarize(records: &PathBuf, path: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let file =
        File::open(records).map_err(|e| input_error(format!("{}: {e}", records.display())))?;
    let parsed = read_records(BufReader::new(file)).map_err(input_error)?;
    let rows = summarize(&parsed).map_err(input_error)?;
    let file = File::create(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    write_summary(BufWriter::new(file), &rows).map_err(input_error)?;
    let _ = writeln!(
        out,
        "wrote {} summary rows to {}",
        rows.len(),
        path.display()
    );
    Ok(0)
}

fn cmd_theory(alpha: f64, n: usize, out: &mut dyn Write) -> CmdResult {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(input_error(format!("n must be positive and even, got {n}")));
    }
    if alpha.is_nan() || alpha <= ALPHA_THRESHOLD {
        if let Ok(c) = c_alpha(alpha) {
            let _ = writeln!(out, "C(alpha) = {}", format_number(c));
        }
        return Err((
            4,
            format!(
                "alpha = {alpha} does not exceed 1 + sqrt 2 = {}; no runtime bound applies",
                format_number(ALPHA_THRESHOLD)
            ),
        ));
    }
    let c = c_alpha(alpha).map_err(|e| (4, e.to_string()))?;
    let bound = metropolis_bound(n, alpha).map_err(|e| (4, e.to_string()))?;
    let _ = writeln!(out, "C(alpha) = {}", format_number(c));
    let _ = writeln!(out, "bound n^2/C(alpha) = {}", format_number(bound));
    Ok(0)
}

fn cmd_drift(
    algorithm: DriftAlgorithm,
    n: usize,
    delta: f64,
    samples: u64,
    seed: u64,
    class: Option<u64>,
    out: &mut dyn Write,
) -> CmdResult {
    let classes: Vec<u64> = match class {
        Some(c) => vec![c],
        None => (0..n as u64).collect(),
    };
    let mut rng = RandomSource::from_seed(seed);
    let _ = writeln!(out, "class,estimate,std_error");
    for c in classes {
        let est = estimate_drift(algorithm, n, delta, c, samples, &mut rng).map_err(input_error)?;
        let _ = writeln!(
            out,
            "{c},{},{}",
            format_number(est.mean),
            format_number(est.std_error)
        );
    }
    Ok(0)
}

fn faulty_dlb(x: &BitString) -> u64 {
    let d = reference_dlb(x);
    if x.is_all_ones() {
        d - 1
    } else {
        d
    }
}

fn cmd_selftest(inject_fault: bool, out: &mut dyn Write) -> CmdResult {
    let dlb_fn: DlbFn = if inject_fault {
        faulty_dlb
    } else {
        reference_dlb
    };
    let results = selftest::run_with(dlb_fn);
    for r in &results {
        let status = if r.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {} ({} cases, {} violations)",
            r.name, r.cases, r.violations
        );
    }
    if results.iter().all(|r| r.passed()) {
        Ok(0)
    } else {
        Err((1, "selftest found violations".into()))
    }
}
