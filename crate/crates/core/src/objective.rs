//! Fitness functions and the evaluation counter that defines runtime.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// A pseudo-Boolean function to be maximized.
pub trait Objective {
    fn dimension(&self) -> usize;
    fn value(&self, x: &BitString) -> f64;
    /// The maximum value, attained by at least one string.
    fn optimum(&self) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn value(&self, x: &BitString) -> f64 {
        (**self).value(x)
    }
    fn optimum(&self) -> f64 {
        (**self).optimum()
    }
}

/// Wraps an objective with an evaluation counter and first-hit detector.
///
/// The runtime of a run is the index of the first evaluation that returns
/// the optimum value, counting from 1 and including that evaluation.
#[derive(Debug, Clone)]
pub struct InstrumentedObjective<F> {
    inner: F,
    eval_count: u64,
    optimum_value: f64,
    hit_at: Option<u64>,
}

impl<F: Objective> InstrumentedObjective<F> {
    pub fn new(inner: F) -> Self {
        let optimum_value = inner.optimum();
        Self {
            inner,
            eval_count: 0,
            optimum_value,
            hit_at: None,
        }
    }

    pub fn evaluate(&mut self, x: &BitString) -> Result<f64> {
        if x.len() != self.inner.dimension() {
            return Err(Error::InvalidArgument(format!(
                "search point has length {}, objective expects {}",
                x.len(),
                self.inner.dimension()
            )));
        }
        let value = self.inner.value(x);
        self.eval_count += 1;
        if self.hit_at.is_none() && value == self.optimum_value {
            self.hit_at = Some(self.eval_count);
        }
        Ok(value)
    }

    pub fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn hit_at(&self) -> Option<u64> {
        self.hit_at
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}
