//! Significance-based compact genetic algorithm.
//!
//! Frequencies only take the values `1/n`, `1/2` and `1 - 1/n`. Each
//! iteration samples two individuals, appends the winner's bits to the
//! per-position histories and moves a frequency only when its history
//! shows a statistically significant surplus of ones (up) or zeros (down).

use std::str::FromStr;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::{InstrumentedObjective, Objective};
use crate::rng::RandomSource;

use super::history::{PositionHistory, Significance, SignificanceTest};
use super::{Evaluator, RunLimits, RunOutcome, Stop};

/// Base of the logarithm in the significance slack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Binary,
}

impl LogBase {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Binary => x.log2(),
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ln" | "natural" | "e" => Ok(LogBase::Natural),
            "log2" | "binary" | "2" => Ok(LogBase::Binary),
            other => Err(Error::InvalidParameter(format!(
                "unknown log base {other:?}"
            ))),
        }
    }
}

/// The three admissible frequency values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Low = 0,
    Half = 1,
    High = 2,
}

impl Level {
    pub fn probability(self, n: usize) -> f64 {
        match self {
            Level::Low => 1.0 / n as f64,
            Level::Half => 0.5,
            Level::High => 1.0 - 1.0 / n as f64,
        }
    }

    /// Matches `p` against the admissible values; `1/2` wins when they coincide.
    pub fn classify(p: f64, n: usize) -> Option<Self> {
        [Level::Half, Level::Low, Level::High]
            .into_iter()
            .find(|l| l.probability(n) == p)
    }
}

/// The fitter of two evaluated individuals; a fair coin settles ties.
pub fn select_winner<'a>(
    x: &'a BitString,
    fx: f64,
    y: &'a BitString,
    fy: f64,
    rng: &mut RandomSource,
) -> &'a BitString {
    if fx > fy {
        x
    } else if fy > fx {
        y
    } else if rng.coin() {
        x
    } else {
        y
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigCgaOutcome {
    pub outcome: RunOutcome,
    /// How many times any frequency was set to `1/n`.
    pub down_events: u64,
    pub iterations: u64,
}

pub fn solve<F: Objective>(
    obj: &mut InstrumentedObjective<F>,
    epsilon: f64,
    log_base: LogBase,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    solve_with_stats(obj, epsilon, log_base, rng, limits).map(|s| s.outcome)
}

pub fn solve_with_stats<F: Objective>(
    obj: &mut InstrumentedObjective<F>,
    epsilon: f64,
    log_base: LogBase,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<SigCgaOutcome> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let n = obj.dimension();
    let mut test = SignificanceTest::new(n, epsilon, log_base);
    let probabilities = [Level::Low, Level::Half, Level::High].map(|l| l.probability(n));
    let mut levels = vec![Level::Half; n];
    let mut histories = vec![PositionHistory::new(); n];
    let mut down_events = 0;
    let mut iterations = 0;

    let mut ev = Evaluator::new(obj, limits)?;
    let end = (|| -> Result<_, Stop> {
        let sample = |levels: &[Level], rng: &mut RandomSource| {
            BitString::from_bits(
                levels
                    .iter()
                    .map(|&l| rng.bernoulli(probabilities[l as usize]))
                    .collect(),
            )
        };
        loop {
            let x = sample(&levels, rng);
            let fx = ev.eval(&x)?;
            let y = sample(&levels, rng);
            let fy = ev.eval(&y)?;
            let z = select_winner(&x, fx, &y, fy, rng);
            for (i, (level, history)) in levels.iter_mut().zip(&mut histories).enumerate() {
                history.push(z.get(i));
                let next = match test.check(*level, history) {
                    Significance::Up => Level::High,
                    Significance::Down => Level::Low,
                    Significance::Stay => *level,
                };
                if next != *level {
                    if next == Level::Low {
                        down_events += 1;
                    }
                    *level = next;
                    history.clear();
                }
            }
            iterations += 1;
        }
    })();
    let outcome = ev.finish(end)?;
    Ok(SigCgaOutcome {
        outcome,
        down_events,
        iterations,
    })
}
