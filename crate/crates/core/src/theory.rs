//! Closed-form runtime quantities and an empirical drift estimator.

use crate::benchmarks::{dlb, hlb_from_dlb, Dlb};
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::heuristics::{ea, metropolis, parity};
use crate::objective::Objective;
use crate::rng::RandomSource;

/// Smallest `alpha` for which the Metropolis drift constant is positive.
pub const ALPHA_THRESHOLD: f64 = std::f64::consts::SQRT_2 + 1.0;

/// `C(α) = (α⁴ − 6α² + 1) / (α (α² − 1)²)`, the closed form of
/// `(2/α)(1/2 − 2 Σ_{k≥1} k α^{−2k})`.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "C(alpha) needs alpha > 1, got {alpha}"
        )));
    }
    let a2 = alpha * alpha;
    Ok((a2 * a2 - 6.0 * a2 + 1.0) / (alpha * (a2 - 1.0) * (a2 - 1.0)))
}

/// The defining series of [`c_alpha`] truncated after `terms` terms.
pub fn c_alpha_series(alpha: f64, terms: u32) -> Result<f64> {
    c_alpha(alpha)?;
    let sum: f64 = (1..=terms)
        .map(|k| k as f64 * alpha.powi(-2 * k as i32))
        .sum();
    Ok(2.0 / alpha * (0.5 - 2.0 * sum))
}

/// Upper bound `n² / C(α)` on the expected Metropolis runtime on DLB.
pub fn metropolis_bound(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "n must be positive and even, got {n}"
        )));
    }
    if alpha.is_nan() || alpha <= ALPHA_THRESHOLD {
        return Err(Error::BoundNotApplicable(format!(
            "the bound needs alpha > 1 + sqrt 2 = {ALPHA_THRESHOLD:.6}, got {alpha}"
        )));
    }
    let nf = n as f64;
    Ok(nf * nf / c_alpha(alpha)?)
}

/// Probability that the sig-cGA saves a one at the first position of the
/// critical block, given both samples reach that block, with frequencies
/// `tau1` and `tau2` at its two positions.
pub fn p_win(tau1: f64, tau2: f64) -> Result<f64> {
    for t in [tau1, tau2] {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "frequency {t} outside (0, 1]"
            )));
        }
    }
    Ok(tau1 * (-tau2 * tau2 + 3.0 * tau2 + (tau2 * tau2 - 3.0 * tau2 + 1.0) * tau1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryReport {
    pub alpha: f64,
    pub n: usize,
    pub c_alpha: f64,
    pub runtime_bound: f64,
}

impl TheoryReport {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        Ok(Self {
            alpha,
            n,
            c_alpha: c_alpha(alpha)?,
            runtime_bound: metropolis_bound(n, alpha)?,
        })
    }
}

/// Single-trajectory solvers whose one-step drift can be sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriftAlgorithm {
    Metropolis { alpha: f64 },
    ParityHillclimber,
    OnePlusOneEa { rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Uniform random string among those with the given DLB value.
pub fn random_state_in_class(n: usize, class: u64, rng: &mut RandomSource) -> Result<BitString> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "n must be positive and even, got {n}"
        )));
    }
    if class >= n as u64 {
        return Err(Error::InvalidArgument(format!(
            "DLB class {class} has no non-optimal states for n={n}"
        )));
    }
    let m = (class / 2) as usize;
    let mut bits = vec![true; 2 * m];
    if class % 2 == 1 {
        bits.extend([false, false]);
    } else if rng.coin() {
        bits.extend([false, true]);
    } else {
        bits.extend([true, false]);
    }
    bits.extend((2 * m + 2..n).map(|_| rng.coin()));
    Ok(BitString::from_bits(bits))
}

/// Monte-Carlo estimate of `E[HLB_δ(x') − HLB_δ(x)]` for one step of the
/// algorithm from a uniform random state `x` of DLB value `class`.
pub fn estimate_drift(
    algorithm: DriftAlgorithm,
    n: usize,
    delta: f64,
    class: u64,
    samples: u64,
    rng: &mut RandomSource,
) -> Result<DriftEstimate> {
    if samples < 1 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    if !(delta > 0.0 && delta < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 2), got {delta}"
        )));
    }
    match algorithm {
        DriftAlgorithm::Metropolis { alpha } => metropolis::check_alpha(alpha)?,
        DriftAlgorithm::OnePlusOneEa { rate } => ea::check_rate(rate)?,
        DriftAlgorithm::ParityHillclimber => {}
    }
    let f = Dlb::new(n)?;
    // validates the class before sampling
    random_state_in_class(n, class, &mut rng.clone())?;
    let potential = |d: f64| hlb_from_dlb(d as u64, n, delta);
    let eval = |y: &BitString| Ok::<f64, Error>(f.value(y));

    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let mut x = random_state_in_class(n, class, rng)?;
        let mut fx = dlb(&x)? as f64;
        let before = potential(fx);
        match algorithm {
            DriftAlgorithm::Metropolis { alpha } => {
                metropolis::step(&mut x, &mut fx, alpha, rng, eval)?
            }
            DriftAlgorithm::ParityHillclimber => parity::step(&mut x, &mut fx, rng, eval)?,
            DriftAlgorithm::OnePlusOneEa { rate } => ea::step(&mut x, &mut fx, rate, rng, eval)?,
        }
        let gain = potential(fx) - before;
        sum += gain;
        sum_sq += gain * gain;
    }
    let count = samples as f64;
    let mean = sum / count;
    let variance = if samples > 1 {
        ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(DriftEstimate {
        mean,
        std_error: (variance / count).sqrt(),
        samples,
    })
}
