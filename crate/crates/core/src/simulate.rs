//! Seeded Monte Carlo of the two-box process.
//!
//! The generator is SplitMix64 seeded directly with the user seed. Each
//! coin flip is one bit, taken from the current 64-bit output starting at
//! the most significant bit; a new output is drawn after 64 flips. A bit of
//! 1 picks box A. Counts for a given `(n, trials, seed)` are therefore the
//! same on every platform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matchbox::distribution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Bit-at-a-time view of a [`SplitMix64`] stream, high bits first.
#[derive(Clone, Debug)]
pub struct CoinStream {
    rng: SplitMix64,
    word: u64,
    left: u32,
    flips: u64,
}

impl CoinStream {
    pub fn new(seed: u64) -> Self {
        CoinStream {
            rng: SplitMix64::new(seed),
            word: 0,
            left: 0,
            flips: 0,
        }
    }

    pub fn flip(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        self.left -= 1;
        self.flips += 1;
        (self.word >> self.left) & 1 == 1
    }

    /// Total flips drawn so far.
    pub fn flips(&self) -> u64 {
        self.flips
    }
}

/// Plays one round and returns the matches left in the other box when an
/// empty box is first picked.
pub fn run_trial(n: u64, coins: &mut CoinStream) -> u64 {
    let mut boxes = [n, n];
    loop {
        let pick = usize::from(!coins.flip());
        if boxes[pick] == 0 {
            return boxes[1 - pick];
        }
        boxes[pick] -= 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    #[serde(rename = "tv")]
    pub tv_distance: f64,
    /// Pearson statistic after pooling; nominal degrees of freedom are `n`.
    #[serde(rename = "chi2")]
    pub chi_square: f64,
}

/// Sample `trials` rounds from one stream seeded with `seed`.
pub fn sample_counts(n: u64, trials: u64, seed: u64) -> Vec<u64> {
    let mut coins = CoinStream::new(seed);
    let mut counts = vec![0u64; n as usize + 1];
    for _ in 0..trials {
        counts[run_trial(n, &mut coins) as usize] += 1;
    }
    counts
}

pub fn run(n: u64, trials: u64, seed: u64) -> Result<SimulationResult> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let counts = sample_counts(n, trials, seed);
    let exact = distribution(n).to_f64();
    let tv_distance = total_variation(&counts, &exact);
    let chi_square = pooled_chi_square(&counts, &exact);
    Ok(SimulationResult {
        n,
        trials,
        seed,
        counts,
        tv_distance,
        chi_square,
    })
}

/// `1/2 * sum_r |counts[r]/trials - exact[r]|`.
pub fn total_variation(counts: &[u64], exact: &[f64]) -> f64 {
    let trials: u64 = counts.iter().sum();
    let t = trials as f64;
    0.5 * counts
        .iter()
        .zip(exact)
        .map(|(&c, &q)| (c as f64 / t - q).abs())
        .sum::<f64>()
}

/// Pearson chi-square with adjacent categories merged left to right until
/// each pooled bin expects at least 5 observations; a short tail is folded
/// into the last complete bin.
pub fn pooled_chi_square(counts: &[u64], exact: &[f64]) -> f64 {
    let t: f64 = counts.iter().sum::<u64>() as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut expd) = (0.0, 0.0);
    for (&c, &q) in counts.iter().zip(exact) {
        obs += c as f64;
        expd += q * t;
        if expd >= 5.0 {
            bins.push((obs, expd));
            obs = 0.0;
            expd = 0.0;
        }
    }
    if expd > 0.0 || obs > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += expd;
            }
            None => bins.push((obs, expd)),
        }
    }
    bins.iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum()
}
