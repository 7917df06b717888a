//! Binary erasure channel, peeling decoder and block-error evaluation.
//!
//! Failure depends only on the erasure support, so the all-zero codeword is
//! assumed throughout and no symbol values are tracked.

mod peel;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf2core::{BinaryMatrix, SupportSet};

pub use peel::{peel_decode, PeelOutcome, PeelingDecoder};

/// Largest `n` for exact block-error evaluation.
pub const MAX_EXACT_N: usize = 20;

/// Default Monte Carlo trial count per erasure probability.
pub const DEFAULT_TRIALS: u64 = 10_000;

/// Per-trial seed from the master seed and trial index (SplitMix64 finalizer
/// over a golden-ratio counter), so every trial is reproducible on its own.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(invalid(format!("erasure probability {epsilon} outside [0, 1]")));
    }
    Ok(())
}

fn sample_mask(n: usize, epsilon: f64, seed: u64, out: &mut [bool]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in out.iter_mut().take(n) {
        *e = rng.gen::<f64>() < epsilon;
    }
}

/// Erased positions of a length-`n` block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErasurePattern {
    n: usize,
    erased: SupportSet,
}

impl ErasurePattern {
    pub fn new(n: usize, erased: SupportSet) -> Result<Self> {
        if let Some(&bad) = erased.indices().last().filter(|&&i| i > n) {
            return Err(invalid(format!("erased position {bad} outside [1, {n}]")));
        }
        Ok(Self { n, erased })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self {
            n: mask.len(),
            erased: SupportSet::from_indicator(mask),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn erased(&self) -> &SupportSet {
        &self.erased
    }
}

/// Erases each of the `n` positions independently with probability `epsilon`.
pub fn sample_erasures(n: usize, epsilon: f64, seed: u64) -> Result<ErasurePattern> {
    check_epsilon(epsilon)?;
    let mut mask = vec![false; n];
    sample_mask(n, epsilon, seed, &mut mask);
    Ok(ErasurePattern::from_mask(&mask))
}

/// Failure count per erasure weight over all `2^n` patterns.
pub fn failure_counts_by_weight(h: &BinaryMatrix) -> Result<Vec<u64>> {
    let n = h.n();
    if n > MAX_EXACT_N {
        return Err(Error::GuardExceeded {
            what: "n",
            value: n,
            limit: MAX_EXACT_N,
        });
    }
    let decoder = PeelingDecoder::new(h);
    let total = 1u64 << n;
    let chunk = (total / 64).max(1);
    Ok((0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; n + 1];
            let mut mask = vec![false; n];
            for pattern in c * chunk..((c + 1) * chunk).min(total) {
                for (j, e) in mask.iter_mut().enumerate() {
                    *e = (pattern >> j) & 1 == 1;
                }
                if !decoder.peel_mask(&mut mask) {
                    counts[pattern.count_ones() as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
}

/// Exact block-error probability `sum_E eps^|E| (1-eps)^{n-|E|} [peeling fails on E]`.
pub fn block_error_exact(h: &BinaryMatrix, epsilon: &BigRational) -> Result<BigRational> {
    if epsilon < &BigRational::zero() || epsilon > &BigRational::one() {
        return Err(invalid(format!("erasure probability {epsilon} outside [0, 1]")));
    }
    let counts = failure_counts_by_weight(h)?;
    let n = h.n();
    let keep = BigRational::one() - epsilon;
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| {
            BigRational::from_integer(BigInt::from(c)) * num_traits::pow(epsilon.clone(), k) * num_traits::pow(keep.clone(), n - k)
        })
        .fold(BigRational::zero(), |a, b| a + b))
}

/// Floating-point version of [`block_error_exact`] for CSV sweeps.
pub fn block_error_exact_f64(h: &BinaryMatrix, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let counts = failure_counts_by_weight(h)?;
    let n = h.n() as i32;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(k, &c)| c as f64 * epsilon.powi(k as i32) * (1.0 - epsilon).powi(n - k as i32))
        .sum())
}

/// Wilson score interval for `failures / trials` at normal quantile `z`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let nt = trials as f64;
    let p = failures as f64 / nt;
    let z2 = z * z;
    let denom = 1.0 + z2 / nt;
    let center = (p + z2 / (2.0 * nt)) / denom;
    let half = z * (p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)).sqrt() / denom;
    // Exact endpoints at the extremes instead of rounding residue.
    let lo = if failures == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if failures >= trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub epsilon: f64,
    pub trials: u64,
    pub failures: u64,
    pub estimate: f64,
    /// Wilson 95% interval.
    pub ci95: (f64, f64),
    pub seed: u64,
}

impl SimResult {
    pub fn new(epsilon: f64, trials: u64, failures: u64, seed: u64) -> Self {
        Self {
            epsilon,
            trials,
            failures,
            estimate: failures as f64 / trials as f64,
            ci95: wilson_interval(failures, trials, 1.959_963_984_540_054),
            seed,
        }
    }

    pub fn wilson(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.failures, self.trials, z)
    }
}

/// Per-trial failure indicators for several decoders on the same erasure
/// draws (common random numbers). Every decoder must have the same length.
pub fn simulate_failures(decoders: &[&PeelingDecoder], epsilon: f64, trials: u64, seed: u64) -> Result<Vec<Vec<bool>>> {
    check_epsilon(epsilon)?;
    let Some(first) = decoders.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    if let Some(d) = decoders.iter().find(|d| d.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: d.n() });
    }
    let per_trial: Vec<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map_init(
            || (vec![false; n], vec![false; n]),
            |(draw, work), t| {
                sample_mask(n, epsilon, trial_seed(seed, t), draw);
                decoders
                    .iter()
                    .map(|d| {
                        work.copy_from_slice(draw);
                        !d.peel_mask(work)
                    })
                    .collect()
            },
        )
        .collect();
    Ok((0..decoders.len())
        .map(|k| per_trial.iter().map(|row| row[k]).collect())
        .collect())
}

/// Monte Carlo block-error estimate of peeling on the erasure channel.
pub fn block_error_monte_carlo(h: &BinaryMatrix, epsilon: f64, trials: u64, seed: u64) -> Result<SimResult> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let decoder = PeelingDecoder::new(h);
    let fails = simulate_failures(&[&decoder], epsilon, trials, seed)?;
    let failures = fails[0].iter().filter(|&&f| f).count() as u64;
    Ok(SimResult::new(epsilon, trials, failures, seed))
}
