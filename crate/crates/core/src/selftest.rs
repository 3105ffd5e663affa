//! Exhaustive small-size consistency checks, run by `dlb-lab selftest`.

use crate::benchmarks::{critical_block, dlb, hlb_from_dlb, leading_ones};
use crate::bitstring::BitString;
use crate::heuristics::parity;
use crate::theory::{c_alpha, c_alpha_series, p_win};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// DLB implementation under test.
pub type DlbFn = fn(&BitString) -> u64;

pub fn reference_dlb(x: &BitString) -> u64 {
    dlb(x).expect("even length")
}

/// Probability of saving a one at the first position of a block, by
/// enumerating the 16 joint outcomes of two sampled blocks. Blocks rank
/// `11 > 00 > {01, 10}`; equal ranks pick either winner with probability 1/2.
pub fn p_win_enumerated(tau1: f64, tau2: f64) -> f64 {
    let rank = |a: bool, b: bool| match (a, b) {
        (true, true) => 2,
        (false, false) => 1,
        _ => 0,
    };
    let prob = |bit: bool, tau: f64| if bit { tau } else { 1.0 - tau };
    let mut total = 0.0;
    for outcome in 0u8..16 {
        let [x1, x2, y1, y2] = [0, 1, 2, 3].map(|i| outcome >> i & 1 == 1);
        let p = prob(x1, tau1) * prob(x2, tau2) * prob(y1, tau1) * prob(y2, tau2);
        let saved = match rank(x1, x2).cmp(&rank(y1, y2)) {
            std::cmp::Ordering::Greater => x1 as u8 as f64,
            std::cmp::Ordering::Less => y1 as u8 as f64,
            std::cmp::Ordering::Equal => (x1 as u8 + y1 as u8) as f64 / 2.0,
        };
        total += p * saved;
    }
    total
}

fn benchmark_checks(dlb_fn: DlbFn) -> Vec<CheckResult> {
    let mut lo_gap = CheckResult {
        name: "dlb within one of leading ones",
        cases: 0,
        violations: 0,
    };
    let mut optimum = CheckResult {
        name: "dlb = n iff all ones",
        cases: 0,
        violations: 0,
    };
    let mut parity_ok = CheckResult {
        name: "dlb odd iff critical block is 00",
        cases: 0,
        violations: 0,
    };
    for n in (2..=12).step_by(2) {
        for idx in 0..(1u64 << n) {
            let x = BitString::from_index(idx, n);
            let d = dlb_fn(&x);
            lo_gap.cases += 1;
            optimum.cases += 1;
            parity_ok.cases += 1;
            lo_gap.violations += (d.abs_diff(leading_ones(&x)) > 1) as u64;
            optimum.violations += ((d == n as u64) != x.is_all_ones()) as u64;
            if let Some(m) = critical_block(&x) {
                let zero_block = !x.get(2 * m) && !x.get(2 * m + 1);
                parity_ok.violations += ((d % 2 == 1) != zero_block) as u64;
            }
        }
    }

    let mut maxima = CheckResult {
        name: "00 critical blocks are local maxima",
        cases: 0,
        violations: 0,
    };
    for n in (2..=10).step_by(2) {
        for blocks in 0..n / 2 {
            let free = n - 2 * blocks - 2;
            for tail in 0..(1u64 << free) {
                let mut bits = vec![true; 2 * blocks];
                bits.extend([false, false]);
                bits.extend(BitString::from_index(tail, free).bits());
                let x = BitString::from_bits(bits);
                let fx = dlb_fn(&x);
                maxima.cases += 1;
                let escapes = (0..n).any(|i| {
                    let mut y = x.clone();
                    y.flip(i);
                    dlb_fn(&y) > fx
                });
                maxima.violations += escapes as u64;
            }
        }
    }
    vec![lo_gap, optimum, parity_ok, maxima]
}

fn theory_checks() -> Vec<CheckResult> {
    let mut hlb = CheckResult {
        name: "hlb injective on dlb values",
        cases: 0,
        violations: 0,
    };
    for n in (2..=200).step_by(2) {
        for delta in [1.0, 1.5, 1.99] {
            let mut values: Vec<f64> = (0..=n as u64).map(|d| hlb_from_dlb(d, n, delta)).collect();
            values.sort_by(f64::total_cmp);
            hlb.cases += 1;
            hlb.violations += values.windows(2).any(|w| w[0] >= w[1]) as u64;
        }
    }

    let mut win = CheckResult {
        name: "p_win closed form = enumeration",
        cases: 0,
        violations: 0,
    };
    for i in 0..21 {
        for j in 0..21 {
            let (t1, t2) = (0.05 + 0.045 * i as f64, 0.05 + 0.045 * j as f64);
            win.cases += 1;
            let closed = p_win(t1, t2).expect("grid inside (0, 1)");
            win.violations += ((closed - p_win_enumerated(t1, t2)).abs() > 1e-12) as u64;
        }
    }

    let mut c = CheckResult {
        name: "C(alpha) closed form = series",
        cases: 0,
        violations: 0,
    };
    for alpha in [2.5, 3.0, 5.0, 10.0] {
        c.cases += 1;
        let diff = c_alpha(alpha).unwrap() - c_alpha_series(alpha, 200).unwrap();
        c.violations += (diff.abs() > 1e-9) as u64;
    }

    let mut table = CheckResult {
        name: "parity acceptance table",
        cases: 0,
        violations: 0,
    };
    for a in 0..=10u64 {
        for b in 0..=10u64 {
            table.cases += 1;
            let expected = (a % 2 == 0 && a < b) || (a % 2 == 1 && a < b + 2);
            table.violations += (parity::accepts(a, b) != expected) as u64;
        }
    }
    vec![hlb, win, c, table]
}

/// Runs every check against the given DLB implementation.
pub fn run_with(dlb_fn: DlbFn) -> Vec<CheckResult> {
    let mut results = benchmark_checks(dlb_fn);
    results.extend(theory_checks());
    results
}

pub fn run() -> Vec<CheckResult> {
    run_with(reference_dlb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_build_passes() {
        let results = run();
        assert!(results.iter().all(CheckResult::passed), "{results:?}");
    }

    #[test]
    fn corrupted_dlb_is_detected() {
        // scores a 00 critical block like 01/10
        fn no_bonus(x: &BitString) -> u64 {
            let d = reference_dlb(x);
            if d % 2 == 1 && d != x.len() as u64 {
                d - 1
            } else {
                d
            }
        }
        fn off_by_one_optimum(x: &BitString) -> u64 {
            let d = reference_dlb(x);
            if x.is_all_ones() {
                d - 1
            } else {
                d
            }
        }
        for f in [no_bonus as DlbFn, off_by_one_optimum] {
            assert!(run_with(f).iter().any(|c| !c.passed()));
        }
    }

    #[test]
    fn enumeration_gives_nine_sixteenths() {
        assert_eq!(p_win_enumerated(0.5, 0.5), 0.5625);
    }
}
