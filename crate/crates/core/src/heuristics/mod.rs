//! Search heuristics.
//!
//! Every solver has the same shape: validate parameters, then loop until
//! the instrumented objective reports its first optimal evaluation or the
//! evaluation budget runs out. The loop bodies are written against
//! [`Evaluator`], whose `eval` returns `Err(Stop)` at either event, so `?`
//! unwinds straight out of nested loops.

use std::convert::Infallible;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::{InstrumentedObjective, Objective};

pub mod binary_unbiased;
pub mod ea;
pub mod metropolis;
pub mod parity;
pub mod sig_cga;
pub mod umda;

mod history;

pub use history::{significance, PositionHistory, Significance, SignificanceTest};
pub use sig_cga::LogBase;

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Index of the first evaluation that hit the optimum.
    pub evaluations: Option<u64>,
    pub budget_exhausted: bool,
    /// `(evaluation index, best fitness so far)` at every improvement, when requested.
    pub trace: Option<Vec<(u64, f64)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub budget: u64,
    pub record_trace: bool,
}

impl RunLimits {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            record_trace: false,
        }
    }

    /// 100·n³ evaluations.
    pub fn default_for(n: usize) -> Self {
        Self::new(default_budget(n))
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

pub fn default_budget(n: usize) -> u64 {
    100 * (n as u64).pow(3)
}

/// Why a solver loop ended.
#[derive(Debug)]
pub enum Stop {
    Hit,
    Exhausted,
    Failed(Error),
}

impl From<Error> for Stop {
    fn from(err: Error) -> Self {
        Stop::Failed(err)
    }
}

/// Budget-aware view of an instrumented objective.
pub struct Evaluator<'a, F> {
    obj: &'a mut InstrumentedObjective<F>,
    budget: u64,
    trace: Option<Vec<(u64, f64)>>,
    best: f64,
}

impl<'a, F: Objective> Evaluator<'a, F> {
    pub fn new(obj: &'a mut InstrumentedObjective<F>, limits: RunLimits) -> Result<Self> {
        if limits.budget < 1 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        Ok(Self {
            obj,
            budget: limits.budget,
            trace: limits.record_trace.then(Vec::new),
            best: f64::NEG_INFINITY,
        })
    }

    pub fn dimension(&self) -> usize {
        self.obj.dimension()
    }

    /// Evaluates `x`; stops the run on the first optimal value or when the
    /// budget was already spent.
    pub fn eval(&mut self, x: &BitString) -> Result<f64, Stop> {
        if self.obj.eval_count() >= self.budget {
            return Err(Stop::Exhausted);
        }
        let value = self.obj.evaluate(x)?;
        if value > self.best {
            self.best = value;
            if let Some(trace) = &mut self.trace {
                trace.push((self.obj.eval_count(), value));
            }
        }
        if self.obj.hit_at().is_some() {
            return Err(Stop::Hit);
        }
        Ok(value)
    }

    pub fn evaluations(&self) -> u64 {
        self.obj.eval_count()
    }

    pub fn finish(self, end: Result<Infallible, Stop>) -> Result<RunOutcome> {
        let stop = match end {
            Ok(never) => match never {},
            Err(stop) => stop,
        };
        match stop {
            Stop::Failed(err) => Err(err),
            Stop::Hit | Stop::Exhausted => {
                let evaluations = self.obj.hit_at();
                Ok(RunOutcome {
                    evaluations,
                    budget_exhausted: evaluations.is_none(),
                    trace: self.trace,
                })
            }
        }
    }
}

/// A solver together with its parameters, as named in experiment configs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverSpec {
    /// (1+1) EA with mutation rate `rate_factor / n`.
    OnePlusOneEa {
        rate_factor: f64,
    },
    Metropolis {
        alpha: f64,
    },
    ParityHillclimber,
    BinaryUnbiased,
    /// UMDA with `mu = ceil(mu_factor * n * ln n)` and `lambda = lambda_factor * mu`.
    Umda {
        mu_factor: f64,
        lambda_factor: usize,
    },
    SigCga {
        epsilon: f64,
        log_base: LogBase,
    },
}

impl SolverSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SolverSpec::OnePlusOneEa { .. } => "ea",
            SolverSpec::Metropolis { .. } => "metropolis",
            SolverSpec::ParityHillclimber => "parity",
            SolverSpec::BinaryUnbiased => "binary",
            SolverSpec::Umda { .. } => "umda",
            SolverSpec::SigCga { .. } => "sigcga",
        }
    }

    /// Whether the solver can only run on DLB.
    pub fn requires_dlb(&self) -> bool {
        matches!(
            self,
            SolverSpec::ParityHillclimber | SolverSpec::BinaryUnbiased
        )
    }
}

/// Population sizes used by [`SolverSpec::Umda`] for dimension `n`.
pub fn umda_sizes(n: usize, mu_factor: f64, lambda_factor: usize) -> (usize, usize) {
    let nf = n as f64;
    let mu = (mu_factor * nf * nf.ln()).ceil().max(1.0) as usize;
    (mu, mu * lambda_factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn umda_sizes_follow_the_formula() {
        // 3 * 40 * ln 40 = 442.66
        assert_eq!(umda_sizes(40, 3.0, 12), (443, 443 * 12));
        assert_eq!(umda_sizes(1, 3.0, 12), (1, 12));
    }

    #[test]
    fn default_budget_is_cubic() {
        assert_eq!(default_budget(40), 6_400_000);
    }
}
