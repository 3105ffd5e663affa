//! Randomized search heuristics on the DeceivingLeadingBlocks (DLB)
//! benchmark: fitness functions, unbiased variation operators, six
//! solvers, closed-form runtime quantities and a deterministic, parallel
//! experiment harness.

pub mod benchmarks;
pub mod bitstring;
pub mod cli;
pub mod error;
pub mod harness;
pub mod heuristics;
pub mod objective;
pub mod operators;
pub mod parallel;
pub mod rng;
pub mod selftest;
pub mod theory;

pub use bitstring::BitString;
pub use error::{Error, Result};
pub use objective::{InstrumentedObjective, Objective};
pub use rng::{random_bitstring, RandomSource};
