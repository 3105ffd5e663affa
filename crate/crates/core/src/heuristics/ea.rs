//! The (1+1) EA: standard bit mutation with elitist acceptance of ties.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::{InstrumentedObjective, Objective};
use crate::operators::standard_bit_mutation;
use crate::rng::{random_bitstring, RandomSource};

use super::{Evaluator, RunLimits, RunOutcome, Stop};

pub(crate) fn check_rate(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "mutation rate {p} outside (0, 1)"
        )));
    }
    Ok(())
}

/// One iteration: mutate, evaluate, keep the offspring if it is not worse.
pub fn step<E>(
    x: &mut BitString,
    fx: &mut f64,
    p: f64,
    rng: &mut RandomSource,
    mut eval: impl FnMut(&BitString) -> Result<f64, E>,
) -> Result<(), E> {
    let y = standard_bit_mutation(x, p, rng).expect("rate validated by caller");
    let fy = eval(&y)?;
    if fy >= *fx {
        *x = y;
        *fx = fy;
    }
    Ok(())
}

pub fn solve<F: Objective>(
    obj: &mut InstrumentedObjective<F>,
    p: f64,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    check_rate(p)?;
    let mut ev = Evaluator::new(obj, limits)?;
    let end = (|| -> Result<_, Stop> {
        let mut x = random_bitstring(ev.dimension(), rng)?;
        let mut fx = ev.eval(&x)?;
        loop {
            step(&mut x, &mut fx, p, rng, |y| ev.eval(y))?;
        }
    })();
    ev.finish(end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{Dlb, OneMax};

    #[test]
    fn two_bits_always_solved() {
        for seed in 0..50 {
            let mut obj = InstrumentedObjective::new(Dlb::new(2).unwrap());
            let out = solve(
                &mut obj,
                0.5,
                &mut RandomSource::from_seed(seed),
                RunLimits::new(10_000),
            )
            .unwrap();
            assert!(!out.budget_exhausted);
            assert_eq!(out.evaluations, obj.hit_at());
        }
    }

    #[test]
    fn optimal_initial_point_costs_one_evaluation() {
        // with n = 2 some seed starts at 11
        let hit_first = (0..64).any(|seed| {
            let mut obj = InstrumentedObjective::new(Dlb::new(2).unwrap());
            let out = solve(
                &mut obj,
                0.5,
                &mut RandomSource::from_seed(seed),
                RunLimits::new(100),
            )
            .unwrap();
            out.evaluations == Some(1)
        });
        assert!(hit_first);
    }

    #[test]
    fn budget_is_respected() {
        let mut obj = InstrumentedObjective::new(Dlb::new(40).unwrap());
        let out = solve(
            &mut obj,
            1.0 / 40.0,
            &mut RandomSource::from_seed(1),
            RunLimits::new(50),
        )
        .unwrap();
        assert!(out.budget_exhausted);
        assert_eq!(out.evaluations, None);
        assert_eq!(obj.eval_count(), 50);
    }

    #[test]
    fn parameter_validation() {
        let mut obj = InstrumentedObjective::new(OneMax::new(8).unwrap());
        let mut rng = RandomSource::from_seed(0);
        assert!(solve(&mut obj, 0.0, &mut rng, RunLimits::new(10)).is_err());
        assert!(solve(&mut obj, 1.0, &mut rng, RunLimits::new(10)).is_err());
        assert!(solve(&mut obj, 0.1, &mut rng, RunLimits::new(0)).is_err());
    }

    #[test]
    fn trace_is_monotone_and_ends_at_hit() {
        let mut obj = InstrumentedObjective::new(OneMax::new(20).unwrap());
        let out = solve(
            &mut obj,
            0.05,
            &mut RandomSource::from_seed(3),
            RunLimits::new(100_000).with_trace(),
        )
        .unwrap();
        let trace = out.trace.unwrap();
        assert!(trace.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        assert_eq!(trace.last().unwrap(), &(out.evaluations.unwrap(), 20.0));
    }

    #[test]
    fn same_seed_same_outcome() {
        let run = |seed| {
            let mut obj = InstrumentedObjective::new(Dlb::new(12).unwrap());
            solve(
                &mut obj,
                1.0 / 12.0,
                &mut RandomSource::from_seed(seed),
                RunLimits::default_for(12),
            )
            .unwrap()
        };
        assert_eq!(run(42), run(42));
    }
}
