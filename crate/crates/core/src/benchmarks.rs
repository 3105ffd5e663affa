//! Benchmark fitness functions: DLB, HLB, LeadingOnes and OneMax.
//!
//! DLB (DeceivingLeadingBlocks) reads a string as consecutive 2-bit blocks.
//! It counts 2 for every leading `11` block; the first other block (the
//! critical block) adds 1 when it is `00` and nothing when it is `01` or
//! `10`. The all-ones string scores `n`.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::objective::Objective;

fn check_even(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "block benchmarks need a positive even length, got {n}"
        )));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "HLB delta must lie in (0, 2), got {delta}"
        )));
    }
    Ok(())
}

/// Index (0-based) of the critical block, or `None` for the all-ones string.
pub fn critical_block(x: &BitString) -> Option<usize> {
    let bits = x.bits();
    bits.chunks_exact(2).position(|b| !(b[0] && b[1]))
}

pub fn dlb(x: &BitString) -> Result<u64> {
    check_even(x.len())?;
    Ok(dlb_unchecked(x))
}

fn dlb_unchecked(x: &BitString) -> u64 {
    let bits = x.bits();
    match critical_block(x) {
        None => bits.len() as u64,
        Some(m) => {
            let zero_block = !bits[2 * m] && !bits[2 * m + 1];
            2 * m as u64 + zero_block as u64
        }
    }
}

/// HLB value for a given DLB value. Depends on the string only through
/// its DLB value, which is what lets a DLB black-box algorithm query it.
pub fn hlb_from_dlb(dlb_value: u64, n: usize, delta: f64) -> f64 {
    if dlb_value == n as u64 {
        n as f64
    } else if dlb_value % 2 == 1 {
        (dlb_value - 1) as f64
    } else {
        dlb_value as f64 + 2.0 - delta
    }
}

pub fn hlb(x: &BitString, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let value = dlb(x)?;
    Ok(hlb_from_dlb(value, x.len(), delta))
}

pub fn leading_ones(x: &BitString) -> u64 {
    x.bits().iter().take_while(|&&b| b).count() as u64
}

pub fn one_max(x: &BitString) -> u64 {
    x.count_ones() as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dlb {
    n: usize,
}

impl Dlb {
    pub fn new(n: usize) -> Result<Self> {
        check_even(n)?;
        Ok(Self { n })
    }
}

impl Objective for Dlb {
    fn dimension(&self) -> usize {
        self.n
    }
    fn value(&self, x: &BitString) -> f64 {
        dlb_unchecked(x) as f64
    }
    fn optimum(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hlb {
    n: usize,
    delta: f64,
}

impl Hlb {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        check_even(n)?;
        check_delta(delta)?;
        Ok(Self { n, delta })
    }
}

impl Objective for Hlb {
    fn dimension(&self) -> usize {
        self.n
    }
    fn value(&self, x: &BitString) -> f64 {
        hlb_from_dlb(dlb_unchecked(x), self.n, self.delta)
    }
    fn optimum(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingOnes {
    n: usize,
}

impl LeadingOnes {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("length must be positive".into()));
        }
        Ok(Self { n })
    }
}

impl Objective for LeadingOnes {
    fn dimension(&self) -> usize {
        self.n
    }
    fn value(&self, x: &BitString) -> f64 {
        leading_ones(x) as f64
    }
    fn optimum(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneMax {
    n: usize,
}

impl OneMax {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("length must be positive".into()));
        }
        Ok(Self { n })
    }
}

impl Objective for OneMax {
    fn dimension(&self) -> usize {
        self.n
    }
    fn value(&self, x: &BitString) -> f64 {
        one_max(x) as f64
    }
    fn optimum(&self) -> f64 {
        self.n as f64
    }
}

/// Any of the benchmarks, selectable at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Benchmark {
    Dlb(Dlb),
    Hlb(Hlb),
    LeadingOnes(LeadingOnes),
    OneMax(OneMax),
}

impl Objective for Benchmark {
    fn dimension(&self) -> usize {
        match self {
            Benchmark::Dlb(f) => f.dimension(),
            Benchmark::Hlb(f) => f.dimension(),
            Benchmark::LeadingOnes(f) => f.dimension(),
            Benchmark::OneMax(f) => f.dimension(),
        }
    }
    fn value(&self, x: &BitString) -> f64 {
        match self {
            Benchmark::Dlb(f) => f.value(x),
            Benchmark::Hlb(f) => f.value(x),
            Benchmark::LeadingOnes(f) => f.value(x),
            Benchmark::OneMax(f) => f.value(x),
        }
    }
    fn optimum(&self) -> f64 {
        match self {
            Benchmark::Dlb(f) => f.optimum(),
            Benchmark::Hlb(f) => f.optimum(),
            Benchmark::LeadingOnes(f) => f.optimum(),
            Benchmark::OneMax(f) => f.optimum(),
        }
    }
}
