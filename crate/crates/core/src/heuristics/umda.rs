//! Univariate marginal distribution algorithm.
//!
//! Each generation samples `lambda` individuals from the product
//! distribution, keeps the `mu` fittest (ties broken uniformly at random)
//! and sets every frequency to the share of ones among them, clamped to
//! `[1/n, 1 - 1/n]`.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::{InstrumentedObjective, Objective};
use crate::rng::RandomSource;

use super::{Evaluator, RunLimits, RunOutcome, Stop};

/// Per-position probabilities of sampling a one.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    tau: Vec<f64>,
}

impl FrequencyVector {
    pub fn uniform(n: usize) -> Self {
        Self { tau: vec![0.5; n] }
    }

    pub fn from_values(tau: Vec<f64>) -> Self {
        Self { tau }
    }

    pub fn values(&self) -> &[f64] {
        &self.tau
    }

    pub fn sample(&self, rng: &mut RandomSource) -> BitString {
        BitString::from_bits(self.tau.iter().map(|&p| rng.bernoulli(p)).collect())
    }

    /// Sets each frequency to the fraction of ones among `selected` at that
    /// position, clamped to the borders `[1/n, 1 - 1/n]`.
    pub fn update_from(&mut self, selected: &[&BitString]) {
        let n = self.tau.len();
        let (lo, hi) = (1.0 / n as f64, 1.0 - 1.0 / n as f64);
        let count = selected.len() as f64;
        for (i, tau) in self.tau.iter_mut().enumerate() {
            let ones = selected.iter().filter(|x| x.get(i)).count() as f64;
            *tau = (ones / count).clamp(lo, hi);
        }
    }
}

pub fn solve<F: Objective>(
    obj: &mut InstrumentedObjective<F>,
    mu: usize,
    lambda: usize,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    if mu < 1 || mu > lambda {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= mu <= lambda, got mu={mu} lambda={lambda}"
        )));
    }
    let n = obj.dimension();
    let mut ev = Evaluator::new(obj, limits)?;
    let end = (|| -> Result<_, Stop> {
        let mut model = FrequencyVector::uniform(n);
        let mut population: Vec<(f64, u64, BitString)> = Vec::with_capacity(lambda);
        loop {
            population.clear();
            for _ in 0..lambda {
                let x = model.sample(rng);
                let fx = ev.eval(&x)?;
                population.push((fx, rng.next_u64(), x));
            }
            // fitness descending, random key breaks ties
            population
                .select_nth_unstable_by(mu - 1, |a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            let selected: Vec<&BitString> = population[..mu].iter().map(|p| &p.2).collect();
            model.update_from(&selected);
        }
    })();
    ev.finish(end)
}
