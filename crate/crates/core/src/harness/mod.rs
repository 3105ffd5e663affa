//! Deterministic experiment runner.
//!
//! An experiment is a grid of cells `(algorithm, n, run)`. Every cell gets
//! its own random stream seeded by [`derive_seed`], a pure function of the
//! master seed and the cell coordinates, so results do not depend on the
//! order in which cells execute or on how many workers execute them.

use std::time::Instant;

use crate::benchmarks::{Benchmark, Dlb, LeadingOnes, OneMax};
use crate::error::{Error, Result};
use crate::heuristics::{
    binary_unbiased, ea, metropolis, parity, sig_cga, umda, umda_sizes, RunLimits, RunOutcome,
    SolverSpec,
};
use crate::objective::InstrumentedObjective;
use crate::parallel::map_tasks;
use crate::rng::RandomSource;

mod config;
mod records;
mod summary;

pub use config::{parse_config, BudgetRule, ObjectiveId};
pub use records::{read_records, write_records, RECORDS_HEADER};
pub use summary::{format_number, quantile, summarize, write_summary, SummaryRow, SUMMARY_HEADER};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub objective: ObjectiveId,
    /// `(id, solver)` pairs; ids label the records and must be unique.
    pub algorithms: Vec<(String, SolverSpec)>,
    pub sizes: Vec<usize>,
    pub runs_per_cell: usize,
    pub master_seed: u64,
    pub budget: BudgetRule,
    /// Fill the informational `wall_ms` column. Off by default because
    /// timings make otherwise identical outputs differ.
    pub record_wall_time: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms given".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("no sizes given".into()));
        }
        if self.runs_per_cell < 1 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        for (i, (id, spec)) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::Config(format!("duplicate algorithm id {id:?}")));
            }
            if spec.requires_dlb() && self.objective != ObjectiveId::Dlb {
                return Err(Error::Config(format!("{id} only runs on dlb")));
            }
        }
        for &n in &self.sizes {
            if n == 0 {
                return Err(Error::Config("sizes must be positive".into()));
            }
            if self.objective == ObjectiveId::Dlb && n % 2 != 0 {
                return Err(Error::Config(format!("dlb needs even sizes, got {n}")));
            }
        }
        Ok(())
    }
}

/// Outcome of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub n: usize,
    pub run: usize,
    pub seed: u64,
    pub evaluations: Option<u64>,
    pub exhausted: bool,
    pub wall_ms: Option<u64>,
}

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output finalizer; a bijection on `u64`.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of cell `(algorithm, n, run)`.
///
/// `h = mix(master + γ)`, then for each of `fnv1a(algorithm)`, `n` and
/// `run` in turn `h = mix((h + γ) ^ value)`, with γ the SplitMix64 golden
/// gamma. Each step is a bijection in its input, so two runs of the same
/// `(algorithm, n)` never share a seed. This function is part of the
/// records format and must not change.
pub fn derive_seed(master: u64, algorithm: &str, n: usize, run: usize) -> u64 {
    let mut h = mix(master.wrapping_add(GAMMA));
    for value in [fnv1a(algorithm.as_bytes()), n as u64, run as u64] {
        h = mix(h.wrapping_add(GAMMA) ^ value);
    }
    h
}

/// Runs one solver once on a fresh objective.
pub fn run_single(
    objective: ObjectiveId,
    spec: &SolverSpec,
    n: usize,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    if spec.requires_dlb() {
        if objective != ObjectiveId::Dlb {
            return Err(Error::InvalidArgument(format!(
                "{} only runs on dlb",
                spec.name()
            )));
        }
        let mut obj = InstrumentedObjective::new(Dlb::new(n)?);
        return match spec {
            SolverSpec::ParityHillclimber => parity::solve(&mut obj, rng, limits),
            SolverSpec::BinaryUnbiased => binary_unbiased::solve(&mut obj, rng, limits),
            _ => unreachable!(),
        };
    }
    let benchmark = match objective {
        ObjectiveId::Dlb => Benchmark::Dlb(Dlb::new(n)?),
        ObjectiveId::LeadingOnes => Benchmark::LeadingOnes(LeadingOnes::new(n)?),
        ObjectiveId::OneMax => Benchmark::OneMax(OneMax::new(n)?),
    };
    let mut obj = InstrumentedObjective::new(benchmark);
    match *spec {
        SolverSpec::OnePlusOneEa { rate_factor } => {
            ea::solve(&mut obj, rate_factor / n as f64, rng, limits)
        }
        SolverSpec::Metropolis { alpha } => metropolis::solve(&mut obj, alpha, rng, limits),
        SolverSpec::Umda {
            mu_factor,
            lambda_factor,
        } => {
            let (mu, lambda) = umda_sizes(n, mu_factor, lambda_factor);
            umda::solve(&mut obj, mu, lambda, rng, limits)
        }
        SolverSpec::SigCga { epsilon, log_base } => {
            sig_cga::solve(&mut obj, epsilon, log_base, rng, limits)
        }
        SolverSpec::ParityHillclimber | SolverSpec::BinaryUnbiased => unreachable!(),
    }
}

/// Executes every cell of the grid, `workers` at a time (all cores when
/// `None`), and returns the records sorted by `(algorithm, n, run)`.
pub fn run_experiment(cfg: &ExperimentConfig, workers: Option<usize>) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let cells: Vec<(&str, &SolverSpec, usize, usize)> = cfg
        .algorithms
        .iter()
        .flat_map(|(id, spec)| {
            cfg.sizes.iter().flat_map(move |&n| {
                (0..cfg.runs_per_cell).map(move |run| (id.as_str(), spec, n, run))
            })
        })
        .collect();

    let results = map_tasks(&cells, workers, |&(id, spec, n, run)| {
        let seed = derive_seed(cfg.master_seed, id, n, run);
        let mut rng = RandomSource::from_seed(seed);
        let limits = RunLimits::new(cfg.budget.for_size(n));
        let start = Instant::now();
        let outcome =
            run_single(cfg.objective, spec, n, &mut rng, limits).map_err(|err| Error::Cell {
                algorithm: id.to_string(),
                n,
                run,
                source: Box::new(err),
            })?;
        Ok(RunRecord {
            algorithm: id.to_string(),
            n,
            run,
            seed,
            evaluations: outcome.evaluations,
            exhausted: outcome.budget_exhausted,
            wall_ms: cfg
                .record_wall_time
                .then(|| start.elapsed().as_millis() as u64),
        })
    });
    let mut records = results.into_iter().collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| (&a.algorithm, a.n, a.run).cmp(&(&b.algorithm, b.n, b.run)));
    Ok(records)
}
