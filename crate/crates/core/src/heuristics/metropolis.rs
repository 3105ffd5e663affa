//! Metropolis algorithm with fixed temperature.
//!
//! A uniformly random Hamming neighbour replaces the current point if it
//! is not worse, and otherwise with probability `alpha^(f(y) - f(x))`.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::{InstrumentedObjective, Objective};
use crate::rng::{random_bitstring, RandomSource};

use super::{Evaluator, RunLimits, RunOutcome, Stop};

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha must exceed 1, got {alpha}"
        )));
    }
    Ok(())
}

/// Acceptance probability for a move from fitness `fx` to `fy`.
pub fn acceptance_probability(fx: f64, fy: f64, alpha: f64) -> f64 {
    if fy >= fx {
        1.0
    } else {
        alpha.powf(fy - fx)
    }
}

pub fn step<E>(
    x: &mut BitString,
    fx: &mut f64,
    alpha: f64,
    rng: &mut RandomSource,
    mut eval: impl FnMut(&BitString) -> Result<f64, E>,
) -> Result<(), E> {
    let i = rng.index(x.len());
    x.flip(i);
    let fy = eval(x)?;
    // the coin is only drawn for worsening moves
    let accept = fy >= *fx || rng.bernoulli(acceptance_probability(*fx, fy, alpha));
    if accept {
        *fx = fy;
    } else {
        x.flip(i);
    }
    Ok(())
}

pub fn solve<F: Objective>(
    obj: &mut InstrumentedObjective<F>,
    alpha: f64,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    check_alpha(alpha)?;
    let mut ev = Evaluator::new(obj, limits)?;
    let end = (|| -> Result<_, Stop> {
        let mut x = random_bitstring(ev.dimension(), rng)?;
        let mut fx = ev.eval(&x)?;
        loop {
            step(&mut x, &mut fx, alpha, rng, |y| ev.eval(y))?;
        }
    })();
    ev.finish(end)
}
