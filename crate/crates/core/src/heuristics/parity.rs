//! Parity-aware single-bit hillclimber for DLB.
//!
//! From an even DLB value only strict improvements are accepted. From an
//! odd value (critical block `00`) a move is also accepted when it loses
//! exactly one, which turns the `00` block into `01` or `10` and escapes
//! the local optimum.

use crate::benchmarks::Dlb;
use crate::bitstring::BitString;
use crate::error::Result;
use crate::objective::InstrumentedObjective;
use crate::rng::{random_bitstring, RandomSource};

use super::{Evaluator, RunLimits, RunOutcome, Stop};

pub fn accepts(dlb_x: u64, dlb_y: u64) -> bool {
    if dlb_x.is_multiple_of(2) {
        dlb_x < dlb_y
    } else {
        dlb_x < dlb_y + 2
    }
}

pub fn step<E>(
    x: &mut BitString,
    fx: &mut f64,
    rng: &mut RandomSource,
    mut eval: impl FnMut(&BitString) -> Result<f64, E>,
) -> Result<(), E> {
    let i = rng.index(x.len());
    x.flip(i);
    let fy = eval(x)?;
    if accepts(*fx as u64, fy as u64) {
        *fx = fy;
    } else {
        x.flip(i);
    }
    Ok(())
}

pub fn solve(
    obj: &mut InstrumentedObjective<Dlb>,
    rng: &mut RandomSource,
    limits: RunLimits,
) -> Result<RunOutcome> {
    let mut ev = Evaluator::new(obj, limits)?;
    let end = (|| -> Result<_, Stop> {
        let mut x = random_bitstring(ev.dimension(), rng)?;
        let mut fx = ev.eval(&x)?;
        loop {
            step(&mut x, &mut fx, rng, |y| ev.eval(y))?;
        }
    })();
    ev.finish(end)
}
