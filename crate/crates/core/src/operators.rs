//! Unbiased variation operators.
//!
//! Unary: every unary unbiased operator samples a radius `k` from some
//! distribution on `[0..n]` and flips `k` distinct uniformly chosen bits.
//! Binary: `rwd` (uniform crossover on disagreeing positions) and `sido`
//! (move to the second argument when it is a Hamming neighbour).

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// A probability distribution over flip radii `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusDistribution {
    weights: Vec<f64>,
    cumulative: Vec<f64>,
}

impl RadiusDistribution {
    const TOLERANCE: f64 = 1e-12;

    /// `weights[k]` is the probability of radius `k`; the string length is
    /// `weights.len() - 1`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter(
                "radius distribution is empty".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "invalid radius weight {w}"
            )));
        }
        let cumulative: Vec<f64> = weights
            .iter()
            .scan(0.0, |acc, w| {
                *acc += w;
                Some(*acc)
            })
            .collect();
        let total = *cumulative.last().unwrap();
        if (total - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "radius weights sum to {total}, not 1"
            )));
        }
        Ok(Self {
            weights,
            cumulative,
        })
    }

    pub fn point_mass(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "radius {k} exceeds length {n}"
            )));
        }
        let mut weights = vec![0.0; n + 1];
        weights[k] = 1.0;
        Self::new(weights)
    }

    /// Binomial(n, p) radii, i.e. standard bit mutation with rate `p`.
    pub fn binomial(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("rate {p} outside [0, 1]")));
        }
        let weights = (0..=n)
            .map(|k| {
                let ln_choose = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
                let ln_p = if k == 0 { 0.0 } else { k as f64 * p.ln() };
                let ln_q = if k == n {
                    0.0
                } else {
                    (n - k) as f64 * (1.0 - p).ln()
                };
                (ln_choose + ln_p + ln_q).exp()
            })
            .collect::<Vec<_>>();
        let total: f64 = weights.iter().sum();
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn max_radius(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Inverse-CDF sampling; the smallest `k` whose cumulative weight
    /// exceeds the uniform draw wins.
    pub fn sample(&self, rng: &mut RandomSource) -> usize {
        let u = rng.uniform_real();
        self.cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or_else(|| {
                // u fell into the rounding gap above the last cumulative sum
                self.weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
            })
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

fn check_lengths(a: &BitString, b: &BitString) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "operands have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Flips exactly `k` distinct positions chosen uniformly at random.
pub fn flip_k(x: &BitString, k: usize, rng: &mut RandomSource) -> Result<BitString> {
    let n = x.len();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "cannot flip {k} of {n} bits"
        )));
    }
    let mut y = x.clone();
    if k == 1 {
        y.flip(rng.index(n));
        return Ok(y);
    }
    // partial Fisher-Yates: the first k slots end up a uniform k-subset
    let mut positions: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.index(n - i);
        positions.swap(i, j);
        y.flip(positions[i]);
    }
    Ok(y)
}

pub fn unary_unbiased(
    x: &BitString,
    radius: &RadiusDistribution,
    rng: &mut RandomSource,
) -> Result<BitString> {
    if radius.max_radius() != x.len() {
        return Err(Error::InvalidArgument(format!(
            "radius distribution is for length {}, string has length {}",
            radius.max_radius(),
            x.len()
        )));
    }
    let k = radius.sample(rng);
    flip_k(x, k, rng)
}

/// Flips every bit independently with probability `p`.
pub fn standard_bit_mutation(x: &BitString, p: f64, rng: &mut RandomSource) -> Result<BitString> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "mutation rate {p} outside [0, 1]"
        )));
    }
    let mut y = x.clone();
    for i in 0..y.len() {
        if rng.bernoulli(p) {
            y.flip(i);
        }
    }
    Ok(y)
}

/// Copies agreeing positions, draws a fair coin at disagreeing ones.
pub fn rwd(y: &BitString, yp: &BitString, rng: &mut RandomSource) -> Result<BitString> {
    check_lengths(y, yp)?;
    let bits = y
        .bits()
        .iter()
        .zip(yp.bits())
        .map(|(&a, &b)| if a == b { a } else { rng.coin() })
        .collect();
    Ok(BitString::from_bits(bits))
}

/// Returns `yp` when it is at Hamming distance one from `y`, else `y`.
pub fn sido(y: &BitString, yp: &BitString) -> Result<BitString> {
    check_lengths(y, yp)?;
    Ok(if y.hamming(yp) == 1 {
        yp.clone()
    } else {
        y.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::random_bitstring;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    /// Two-sample chi-square statistic over paired histograms.
    fn chi_square_two_sample(a: &[u64], b: &[u64]) -> f64 {
        let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
        let (ka, kb) = ((nb / na).sqrt(), (na / nb).sqrt());
        a.iter()
            .zip(b)
            .filter(|(x, y)| **x + **y > 0)
            .map(|(&x, &y)| {
                let d = ka * x as f64 - kb * y as f64;
                d * d / (x + y) as f64
            })
            .sum()
    }

    // chi-square 0.999 quantile with 7 degrees of freedom
    const CHI2_DF7_999: f64 = 24.32;

    #[test]
    fn flip_k_edge_cases() {
        let mut rng = RandomSource::from_seed(11);
        let x = bs("101100");
        assert_eq!(flip_k(&x, 0, &mut rng).unwrap(), x);
        assert_eq!(flip_k(&x, 6, &mut rng).unwrap(), x.complement());
        for _ in 0..200 {
            assert_eq!(flip_k(&x, 3, &mut rng).unwrap().hamming(&x), 3);
        }
        assert!(matches!(
            flip_k(&x, 7, &mut rng),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn flip_one_position_is_uniform() {
        let n = 10;
        let draws = 1_000_000;
        let mut rng = RandomSource::from_seed(99);
        let x = BitString::zeros(n);
        let mut counts = vec![0u64; n];
        for _ in 0..draws {
            let y = flip_k(&x, 1, &mut rng).unwrap();
            counts[y.bits().iter().position(|&b| b).unwrap()] += 1;
        }
        let p = 1.0 / n as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            let z = (c as f64 - draws as f64 * p).abs() / sigma;
            assert!(z <= 3.0, "position {i}: {c} ({z:.2} sigma)");
        }
    }

    #[test]
    fn unary_point_masses() {
        let mut rng = RandomSource::from_seed(5);
        let x = bs("0110");
        let zero = RadiusDistribution::point_mass(4, 0).unwrap();
        assert_eq!(unary_unbiased(&x, &zero, &mut rng).unwrap(), x);
        let one = RadiusDistribution::point_mass(4, 1).unwrap();
        let mut seen = [false; 4];
        for _ in 0..400 {
            let y = unary_unbiased(&x, &one, &mut rng).unwrap();
            assert_eq!(y.hamming(&x), 1);
            seen[(0..4).find(|&i| y.get(i) != x.get(i)).unwrap()] = true;
        }
        assert!(seen.iter().all(|&s| s));
        let wrong = RadiusDistribution::point_mass(5, 1).unwrap();
        assert!(matches!(
            unary_unbiased(&x, &wrong, &mut rng),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn binomial_radius_has_mean_one() {
        let n = 100;
        let d = RadiusDistribution::binomial(n, 1.0 / n as f64).unwrap();
        let mut rng = RandomSource::from_seed(17);
        let x = BitString::zeros(n);
        let draws = 100_000;
        let total: usize = (0..draws)
            .map(|_| unary_unbiased(&x, &d, &mut rng).unwrap().count_ones())
            .sum();
        let mean = total as f64 / draws as f64;
        assert!((mean - 1.0).abs() <= 0.02, "mean flips {mean}");
    }

    #[test]
    fn radius_distribution_validation() {
        assert!(RadiusDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(RadiusDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(RadiusDistribution::new(vec![]).is_err());
        assert!(RadiusDistribution::point_mass(3, 4).is_err());
        let b = RadiusDistribution::binomial(30, 0.2).unwrap();
        assert!((b.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn unary_distance_does_not_depend_on_parent() {
        let n = 10;
        let d = RadiusDistribution::binomial(n, 0.3).unwrap();
        let draws = 100_000;
        let histogram = |x: &BitString, seed: u64| {
            let mut rng = RandomSource::from_seed(seed);
            let mut bins = [0u64; 8];
            let mut seq = Vec::with_capacity(draws);
            for _ in 0..draws {
                let h = unary_unbiased(x, &d, &mut rng).unwrap().hamming(x);
                bins[h.min(7)] += 1;
                seq.push(h);
            }
            (bins, seq)
        };
        let zeros = BitString::zeros(n);
        let other = bs("1011001110");
        let (bins_zero, seq_zero) = histogram(&zeros, 1);
        let (_, seq_other_same_seed) = histogram(&other, 1);
        assert_eq!(seq_zero, seq_other_same_seed);
        let (bins_other, _) = histogram(&other, 2);
        let chi2 = chi_square_two_sample(&bins_zero, &bins_other);
        assert!(chi2 < CHI2_DF7_999, "chi2 {chi2}");
    }

    #[test]
    fn standard_bit_mutation_cases() {
        let mut rng = RandomSource::from_seed(8);
        let x = bs("100101");
        assert_eq!(standard_bit_mutation(&x, 0.0, &mut rng).unwrap(), x);
        assert_eq!(
            standard_bit_mutation(&x, 1.0, &mut rng).unwrap(),
            x.complement()
        );
        assert!(standard_bit_mutation(&x, 1.5, &mut rng).is_err());
        assert!(standard_bit_mutation(&x, -0.1, &mut rng).is_err());
    }

    #[test]
    fn standard_bit_mutation_keeps_parent_with_closed_form_probability() {
        let n = 100;
        let mut rng = RandomSource::from_seed(23);
        let x = random_bitstring(n, &mut rng).unwrap();
        let draws = 100_000;
        let same = (0..draws)
            .filter(|_| standard_bit_mutation(&x, 1.0 / n as f64, &mut rng).unwrap() == x)
            .count();
        let expected = (1.0 - 1.0 / n as f64).powi(n as i32);
        let frac = same as f64 / draws as f64;
        assert!((frac - expected).abs() <= 0.01, "{frac} vs {expected}");
    }

    #[test]
    fn rwd_cases() {
        let mut rng = RandomSource::from_seed(4);
        let x = bs("1101");
        assert_eq!(rwd(&x, &x, &mut rng).unwrap(), x);
        let mut seen = [false; 2];
        for _ in 0..100 {
            let z = rwd(&bs("10"), &bs("11"), &mut rng).unwrap();
            assert!(z.get(0));
            seen[z.get(1) as usize] = true;
        }
        assert!(seen[0] && seen[1]);
        assert!(rwd(&x, &bs("11"), &mut rng).is_err());
    }

    #[test]
    fn rwd_is_symmetric_in_distribution() {
        let y = bs("101");
        let yp = bs("001");
        let draws = 100_000;
        let count = |a: &BitString, b: &BitString, seed: u64| {
            let mut rng = RandomSource::from_seed(seed);
            let mut bins = [0u64; 8];
            for _ in 0..draws {
                let z = rwd(a, b, &mut rng).unwrap();
                let idx = (0..3).map(|i| (z.get(i) as usize) << i).sum::<usize>();
                bins[idx] += 1;
            }
            bins
        };
        let forward = count(&y, &yp, 31);
        let backward = count(&yp, &y, 32);
        let chi2 = chi_square_two_sample(&forward, &backward);
        assert!(chi2 < CHI2_DF7_999, "chi2 {chi2}");
        // positions 1 and 2 agree and must be copied
        for (idx, &c) in forward.iter().enumerate() {
            if idx & 0b110 != 0b100 {
                assert_eq!(c, 0);
            }
        }
    }

    #[test]
    fn sido_cases() {
        assert_eq!(sido(&bs("10"), &bs("11")).unwrap(), bs("11"));
        assert_eq!(sido(&bs("00"), &bs("11")).unwrap(), bs("00"));
        assert_eq!(sido(&bs("0110"), &bs("0110")).unwrap(), bs("0110"));
        assert!(sido(&bs("0"), &bs("01")).is_err());
    }

    proptest! {
        #[test]
        fn flip_k_changes_exactly_k(bits in proptest::collection::vec(any::<bool>(), 1..64), seed: u64, frac in 0.0f64..=1.0) {
            let x = BitString::from_bits(bits);
            let k = (frac * x.len() as f64) as usize;
            let mut rng = RandomSource::from_seed(seed);
            prop_assert_eq!(flip_k(&x, k, &mut rng).unwrap().hamming(&x), k);
        }

        #[test]
        fn rwd_preserves_agreement(pair in proptest::collection::vec(any::<(bool, bool)>(), 1..64), seed: u64) {
            let y = BitString::from_bits(pair.iter().map(|p| p.0).collect());
            let yp = BitString::from_bits(pair.iter().map(|p| p.1).collect());
            let z = rwd(&y, &yp, &mut RandomSource::from_seed(seed)).unwrap();
            for i in 0..y.len() {
                if y.get(i) == yp.get(i) {
                    prop_assert_eq!(z.get(i), y.get(i));
                }
            }
            let s = sido(&y, &yp).unwrap();
            prop_assert!(s == y || (s == yp && y.hamming(&yp) == 1));
        }
    }
}
