//! Experiment config files.
//!
//! A flat `key = value` text format; `#` starts a comment, blank lines are
//! ignored, every key may appear at most once.
//!
//! ```text
//! objective   = dlb            # dlb | leading_ones | one_max
//! sizes       = 40, 80
//! runs        = 20
//! master_seed = 2024
//! budget      = 100*n^3        # or a plain evaluation count
//! algorithms  = ea, metropolis, parity, binary, umda, sigcga
//!
//! ea.rate_factor      = 1      # mutation rate rate_factor/n
//! metropolis.alpha    = 3
//! umda.mu_factor      = 3      # mu = ceil(mu_factor * n * ln n)
//! umda.lambda_factor  = 12     # lambda = lambda_factor * mu
//! sigcga.epsilon      = 2.5
//! sigcga.log          = ln     # ln | log2
//! ```
//!
//! Unlisted parameters take the defaults shown above.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::heuristics::{LogBase, SolverSpec};

use super::ExperimentConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveId {
    Dlb,
    LeadingOnes,
    OneMax,
}

impl std::str::FromStr for ObjectiveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dlb" => Ok(ObjectiveId::Dlb),
            "leading_ones" | "lo" => Ok(ObjectiveId::LeadingOnes),
            "one_max" | "onemax" => Ok(ObjectiveId::OneMax),
            other => Err(Error::Config(format!("unknown objective {other:?}"))),
        }
    }
}

/// Evaluation budget per run as a function of the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    Fixed(u64),
    /// `factor * n^exponent`
    Polynomial {
        factor: u64,
        exponent: u32,
    },
}

impl BudgetRule {
    pub fn for_size(&self, n: usize) -> u64 {
        match *self {
            BudgetRule::Fixed(b) => b,
            BudgetRule::Polynomial { factor, exponent } => {
                factor.saturating_mul((n as u64).saturating_pow(exponent))
            }
        }
    }
}

impl std::str::FromStr for BudgetRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Config(format!("cannot parse budget {s:?}"));
        if let Ok(b) = compact.parse::<u64>() {
            return Ok(BudgetRule::Fixed(b));
        }
        let (factor, power) = match compact.split_once('*') {
            Some((f, p)) => (f.parse::<u64>().map_err(|_| bad())?, p),
            None => (1, compact.as_str()),
        };
        let exponent = match power {
            "n" => 1,
            p => p
                .strip_prefix("n^")
                .and_then(|e| e.parse::<u32>().ok())
                .ok_or_else(bad)?,
        };
        Ok(BudgetRule::Polynomial { factor, exponent })
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

fn parse_spec(name: &str, params: &mut BTreeMap<String, String>) -> Result<SolverSpec> {
    let mut take = |key: &str| params.remove(&format!("{name}.{key}"));
    let number = |key: &str, value: Option<String>, default: f64| -> Result<f64> {
        value.map_or(Ok(default), |v| parse_value(&format!("{name}.{key}"), &v))
    };
    let spec = match name {
        "ea" => SolverSpec::OnePlusOneEa {
            rate_factor: number("rate_factor", take("rate_factor"), 1.0)?,
        },
        "metropolis" => SolverSpec::Metropolis {
            alpha: number("alpha", take("alpha"), 3.0)?,
        },
        "parity" => SolverSpec::ParityHillclimber,
        "binary" => SolverSpec::BinaryUnbiased,
        "umda" => SolverSpec::Umda {
            mu_factor: number("mu_factor", take("mu_factor"), 3.0)?,
            lambda_factor: take("lambda_factor")
                .map_or(Ok(12), |v| parse_value("umda.lambda_factor", &v))?,
        },
        "sigcga" => SolverSpec::SigCga {
            epsilon: number("epsilon", take("epsilon"), 2.5)?,
            log_base: take("log").map_or(Ok(LogBase::Natural), |v| {
                v.parse().map_err(|e: Error| Error::Config(e.to_string()))
            })?,
        },
        other => return Err(Error::Config(format!("unknown algorithm {other:?}"))),
    };
    Ok(spec)
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut entries = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().to_string();
        if entries
            .insert(key.clone(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::Config(format!(
                "line {}: duplicate key {key}",
                lineno + 1
            )));
        }
    }

    let mut required = |key: &str| {
        entries
            .remove(key)
            .ok_or_else(|| Error::Config(format!("missing key {key}")))
    };
    let sizes = required("sizes")?;
    let runs = required("runs")?;
    let seed = required("master_seed")?;
    let algorithms = required("algorithms")?;
    let objective = entries
        .remove("objective")
        .map_or(Ok(ObjectiveId::Dlb), |v| v.parse())?;
    let budget = entries.remove("budget").map_or(
        Ok(BudgetRule::Polynomial {
            factor: 100,
            exponent: 3,
        }),
        |v| v.parse(),
    )?;

    let sizes = split_list(&sizes)
        .map(|s| parse_value("sizes", s))
        .collect::<Result<Vec<usize>>>()?;
    let algorithms = split_list(&algorithms)
        .map(|name| Ok((name.to_string(), parse_spec(name, &mut entries)?)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(key) = entries.keys().next() {
        return Err(Error::Config(format!("unknown or unused key {key}")));
    }

    let cfg = ExperimentConfig {
        objective,
        algorithms,
        sizes,
        runs_per_cell: parse_value("runs", &runs)?,
        master_seed: parse_value("master_seed", &seed)?,
        budget,
        record_wall_time: false,
    };
    cfg.validate()?;
    Ok(cfg)
}
