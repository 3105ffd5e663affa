//! Winner histories and the significance test of the sig-cGA.

use crate::error::{Error, Result};

use super::sig_cga::{Level, LogBase};

/// Bits appended to one position's history, with the number of ones in
/// every trailing power-of-two window kept up to date on each append.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PositionHistory {
    words: Vec<u64>,
    len: usize,
    ones: u64,
    /// `window_ones[m]` counts ones among the last `2^m` bits.
    window_ones: Vec<u64>,
}

impl PositionHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn push(&mut self, bit: bool) {
        let old_len = self.len;
        if old_len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[old_len / 64] |= 1 << (old_len % 64);
        }
        self.len += 1;
        self.ones += bit as u64;
        for m in 0..self.window_ones.len() {
            let leaving = self.get(old_len - (1 << m));
            self.window_ones[m] = self.window_ones[m] + bit as u64 - leaving as u64;
        }
        let next = self.window_ones.len();
        if 1usize << next == self.len {
            // the new window covers the whole history
            self.window_ones.push(self.ones);
        }
    }

    pub fn clear(&mut self) {
        self.words.clear();
        self.len = 0;
        self.ones = 0;
        self.window_ones.clear();
    }

    /// Ones among the last `2^m` bits, if the history is that long.
    pub fn window_ones(&self, m: usize) -> Option<u64> {
        self.window_ones.get(m).copied()
    }

    /// Number of power-of-two windows that fit in the history.
    pub fn window_count(&self) -> usize {
        self.window_ones.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Significance {
    Up,
    Down,
    Stay,
}

/// Thresholds `w·p + s(ε, w·p)` cached per level and window exponent.
#[derive(Debug, Clone)]
pub struct SignificanceTest {
    epsilon: f64,
    log_n: f64,
    probabilities: [f64; 3],
    up: [Vec<f64>; 3],
    down: [Vec<f64>; 3],
}

impl SignificanceTest {
    pub fn new(n: usize, epsilon: f64, log_base: LogBase) -> Self {
        let p = |level: Level| level.probability(n);
        Self {
            epsilon,
            log_n: log_base.apply(n as f64),
            probabilities: [p(Level::Low), p(Level::Half), p(Level::High)],
            up: Default::default(),
            down: Default::default(),
        }
    }

    /// `s(ε, μ) = ε · max(√(μ log n), log n)`.
    pub fn slack(&self, mu: f64) -> f64 {
        self.epsilon * (mu * self.log_n).sqrt().max(self.log_n)
    }

    fn threshold(table: &mut Vec<f64>, m: usize, q: f64, epsilon: f64, log_n: f64) -> f64 {
        while table.len() <= m {
            let w = (1u64 << table.len()) as f64;
            let mu = w * q;
            table.push(mu + epsilon * (mu * log_n).sqrt().max(log_n));
        }
        table[m]
    }

    pub fn check(&mut self, level: Level, history: &PositionHistory) -> Significance {
        let idx = level as usize;
        let p = self.probabilities[idx];
        if matches!(level, Level::Low | Level::Half) {
            for m in 0..history.window_count() {
                let bound = Self::threshold(&mut self.up[idx], m, p, self.epsilon, self.log_n);
                if history.window_ones[m] as f64 >= bound {
                    return Significance::Up;
                }
            }
        }
        if matches!(level, Level::Half | Level::High) {
            for m in 0..history.window_count() {
                let bound =
                    Self::threshold(&mut self.down[idx], m, 1.0 - p, self.epsilon, self.log_n);
                let zeros = (1u64 << m) - history.window_ones[m];
                if zeros as f64 >= bound {
                    return Significance::Down;
                }
            }
        }
        Significance::Stay
    }
}

/// The significance function for frequency `p` and history `h`.
///
/// `p` must be one of `1/n`, `1/2`, `1 - 1/n`.
pub fn significance(
    p: f64,
    h: &PositionHistory,
    epsilon: f64,
    n: usize,
    log_base: LogBase,
) -> Result<Significance> {
    let level = Level::classify(p, n).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "frequency {p} is not one of 1/n, 1/2, 1-1/n for n={n}"
        ))
    })?;
    Ok(SignificanceTest::new(n, epsilon, log_base).check(level, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn history_of(bits: &[bool]) -> PositionHistory {
        let mut h = PositionHistory::new();
        bits.iter().for_each(|&b| h.push(b));
        h
    }

    #[test]
    fn empty_history_stays() {
        let h = PositionHistory::new();
        for n in [3, 10, 40] {
            for p in [1.0 / n as f64, 0.5, 1.0 - 1.0 / n as f64] {
                assert_eq!(
                    significance(p, &h, 2.5, n, LogBase::Natural).unwrap(),
                    Significance::Stay
                );
            }
        }
    }

    #[test]
    fn short_balanced_history_stays() {
        let h = history_of(&[true, false, true]);
        assert_eq!(
            significance(0.5, &h, 2.5, 40, LogBase::Natural).unwrap(),
            Significance::Stay
        );
    }

    #[test]
    fn slack_formula() {
        // ln n = 4, mu = 16: 2.5 * max(8, 4) = 20
        let n = 4f64.exp().round() as usize;
        let mut test = SignificanceTest::new(n, 2.5, LogBase::Natural);
        test.log_n = 4.0;
        assert!((test.slack(16.0) - 20.0).abs() < 1e-12);
        // small mu falls back to log n
        assert!((test.slack(1.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn strong_bias_in_a_large_window_goes_up() {
        // 250 ones in the last 256: 250 >= 128 + 2.5 * sqrt(128 ln 40) ~ 182.3
        let mut bits = vec![true; 250];
        bits.extend([false; 6]);
        let h = history_of(&bits);
        assert_eq!(h.window_ones(8), Some(250));
        let test = SignificanceTest::new(40, 2.5, LogBase::Natural);
        let s = test.slack(128.0);
        assert!((s - 54.3).abs() < 0.05, "{s}");
        assert_eq!(
            significance(0.5, &h, 2.5, 40, LogBase::Natural).unwrap(),
            Significance::Up
        );
    }

    #[test]
    fn high_frequency_never_goes_up() {
        let h = history_of(&vec![true; 1024]);
        let p = 1.0 - 1.0 / 40.0;
        assert_eq!(
            significance(p, &h, 2.5, 40, LogBase::Natural).unwrap(),
            Significance::Stay
        );
        let zeros = history_of(&vec![false; 1024]);
        assert_eq!(
            significance(p, &zeros, 2.5, 40, LogBase::Natural).unwrap(),
            Significance::Down
        );
        // and low frequencies never go down
        assert_eq!(
            significance(1.0 / 40.0, &zeros, 2.5, 40, LogBase::Natural).unwrap(),
            Significance::Stay
        );
    }

    #[test]
    fn inadmissible_frequency_is_rejected() {
        let h = PositionHistory::new();
        assert!(matches!(
            significance(0.3, &h, 2.5, 40, LogBase::Natural),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn clear_empties_everything() {
        let mut h = history_of(&[true; 9]);
        h.clear();
        assert!(h.is_empty());
        assert_eq!(h.window_count(), 0);
        h.push(true);
        assert_eq!(h.window_ones(0), Some(1));
    }

    proptest! {
        #[test]
        fn window_counts_match_rescan(bits in proptest::collection::vec(any::<bool>(), 0..700)) {
            let mut h = PositionHistory::new();
            for (k, &b) in bits.iter().enumerate() {
                h.push(b);
                let len = k + 1;
                prop_assert_eq!(h.window_count(), (usize::BITS - len.leading_zeros()) as usize);
                for m in 0..h.window_count() {
                    let w = 1usize << m;
                    let expected = bits[len - w..len].iter().filter(|&&b| b).count() as u64;
                    prop_assert_eq!(h.window_ones(m), Some(expected));
                }
            }
        }
    }
}
