//! Seeded Monte Carlo simulation of the race.
//!
//! Each trial draws letters from its own counter-based generator keyed by
//! (seed, trial index), so results are identical whether trials run
//! sequentially or fan out across threads, and aggregation is a plain
//! integer sum with no ordering sensitivity.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::automaton::MatchAutomaton;
use crate::exactmath::{rat_int, Rational};
use crate::patterns::{Distribution, Pattern, PatternSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("AllTrialsTruncated: no trial finished within {max_steps} steps")]
    AllTrialsTruncated { max_steps: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    /// Steps after which a trial is abandoned and counted as truncated.
    pub max_steps: u64,
}

impl SimConfig {
    pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

    pub fn new(trials: u64, seed: u64) -> SimConfig {
        SimConfig {
            trials,
            seed,
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> SimConfig {
        self.max_steps = max_steps;
        self
    }

    /// Truncation guard tuned to a known race: a hundred times the
    /// expected wait, rounded up.
    pub fn max_steps_for(expected_wait: &Rational) -> u64 {
        let scaled = (expected_wait * rat_int(100)).ceil();
        scaled.to_integer().to_u64().unwrap_or(u64::MAX).max(1)
    }
}

/// Aggregated trial outcomes. Only integer tallies are stored; estimates
/// are derived on demand, so merging partial reports is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimReport {
    trials: u64,
    truncated: u64,
    win_counts: Vec<u64>,
    wait_sums: Vec<u128>,
    wait_sq_sums: Vec<u128>,
}

impl SimReport {
    fn empty(m: usize) -> SimReport {
        SimReport {
            trials: 0,
            truncated: 0,
            win_counts: vec![0; m],
            wait_sums: vec![0; m],
            wait_sq_sums: vec![0; m],
        }
    }

    fn record_win(&mut self, winner: usize, wait: u64) {
        self.trials += 1;
        self.win_counts[winner] += 1;
        self.wait_sums[winner] += u128::from(wait);
        self.wait_sq_sums[winner] += u128::from(wait) * u128::from(wait);
    }

    fn record_truncated(&mut self) {
        self.trials += 1;
        self.truncated += 1;
    }

    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn merge(mut self, other: SimReport) -> SimReport {
        self.trials += other.trials;
        self.truncated += other.truncated;
        for (a, b) in self.win_counts.iter_mut().zip(&other.win_counts) {
            *a += b;
        }
        for (a, b) in self.wait_sums.iter_mut().zip(&other.wait_sums) {
            *a += b;
        }
        for (a, b) in self.wait_sq_sums.iter_mut().zip(&other.wait_sq_sums) {
            *a += b;
        }
        self
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Trials that finished within the step budget.
    pub fn completed(&self) -> u64 {
        self.trials - self.truncated
    }

    pub fn truncated(&self) -> u64 {
        self.truncated
    }

    pub fn win_counts(&self) -> &[u64] {
        &self.win_counts
    }

    /// Summed waiting times per winning pattern, exact.
    pub fn wait_sums(&self) -> &[u128] {
        &self.wait_sums
    }

    /// Summed squared waiting times per winning pattern, exact.
    pub fn wait_sq_sums(&self) -> &[u128] {
        &self.wait_sq_sums
    }

    /// Fraction of completed trials won by pattern `i`.
    pub fn win_fraction(&self, i: usize) -> f64 {
        self.win_counts[i] as f64 / self.completed() as f64
    }

    /// Mean waiting time over completed trials.
    pub fn mean_wait(&self) -> f64 {
        let total: u128 = self.wait_sums.iter().sum();
        total as f64 / self.completed() as f64
    }

    /// Mean waiting time over trials won by pattern `i`; `None` when it
    /// never won.
    pub fn conditional_mean_wait(&self, i: usize) -> Option<f64> {
        if self.win_counts[i] == 0 {
            return None;
        }
        Some(self.wait_sums[i] as f64 / self.win_counts[i] as f64)
    }

    /// Standard error of the mean wait, from the sample variance of the
    /// completed trials.
    pub fn mean_wait_std_error(&self) -> f64 {
        let n = self.completed() as f64;
        if n < 2.0 {
            return f64::INFINITY;
        }
        let sum: u128 = self.wait_sums.iter().sum();
        let sq_sum: u128 = self.wait_sq_sums.iter().sum();
        let variance = (sq_sum as f64 - (sum as f64) * (sum as f64) / n) / (n - 1.0);
        (variance.max(0.0) / n).sqrt()
    }
}

/// Exact sampler for the letter distribution: integer thresholds over the
/// common denominator, with a single-word fast path.
pub(crate) enum LetterSampler {
    Small { thresholds: Vec<u64>, total: u64 },
    Big { thresholds: Vec<BigUint>, total: BigUint },
}

impl LetterSampler {
    pub(crate) fn new(dist: &Distribution) -> LetterSampler {
        let denom: BigInt = dist
            .probs()
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let weights: Vec<BigUint> = dist
            .probs()
            .iter()
            .map(|p| {
                (p.numer() * (&denom / p.denom()))
                    .abs()
                    .to_biguint()
                    .expect("letter weights are nonnegative")
            })
            .collect();
        let mut thresholds = Vec::with_capacity(weights.len());
        let mut acc = BigUint::zero();
        for w in &weights {
            acc += w;
            thresholds.push(acc.clone());
        }
        let total = acc;
        match total.to_u64() {
            Some(total) => LetterSampler::Small {
                thresholds: thresholds
                    .iter()
                    .map(|t| t.to_u64().expect("thresholds are bounded by the total"))
                    .collect(),
                total,
            },
            None => LetterSampler::Big { thresholds, total },
        }
    }

    pub(crate) fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        match self {
            LetterSampler::Small { thresholds, total } => {
                let u = rng.random_range(0..*total);
                thresholds
                    .iter()
                    .position(|&t| u < t)
                    .expect("thresholds cover the sample range")
            }
            LetterSampler::Big { thresholds, total } => {
                let u = sample_below(rng, total);
                thresholds
                    .iter()
                    .position(|t| &u < t)
                    .expect("thresholds cover the sample range")
            }
        }
    }
}

/// Uniform draw from `[0, bound)` by rejection on the bit width of the
/// bound; acceptance probability is at least one half.
fn sample_below<R: Rng>(rng: &mut R, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let spare_bits = (bytes as u64) * 8 - bits;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        // bytes are little endian, so the mask applies to the last one
        buf[bytes - 1] >>= spare_bits;
        let candidate = BigUint::from_bytes_le(&buf);
        if &candidate < bound {
            return candidate;
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_trial(
    automaton: &MatchAutomaton,
    sampler: &LetterSampler,
    seed: u64,
    trial: u64,
    max_steps: u64,
) -> Option<(usize, u64)> {
    let mut rng = trial_rng(seed, trial);
    let mut state = automaton.start();
    for step in 1..=max_steps {
        let letter = sampler.sample(&mut rng);
        state = automaton.step(state, letter);
        if let Some(winner) = automaton.accepting(state) {
            return Some((winner, step));
        }
    }
    None
}

fn check_config(sys: &PatternSystem, cfg: &SimConfig) -> Result<(), SimError> {
    if cfg.trials == 0 {
        return Err(SimError::InvalidConfig("trials must be at least 1".into()));
    }
    let max_len = sys.patterns().iter().map(Pattern::len).max().unwrap_or(0) as u64;
    if cfg.max_steps < max_len {
        return Err(SimError::InvalidConfig(format!(
            "max_steps = {} cannot fit the longest pattern ({} letters)",
            cfg.max_steps, max_len
        )));
    }
    Ok(())
}

fn finish(report: SimReport, cfg: &SimConfig) -> Result<SimReport, SimError> {
    if report.completed() == 0 {
        return Err(SimError::AllTrialsTruncated {
            max_steps: cfg.max_steps,
        });
    }
    Ok(report)
}

/// Runs the simulation on the default engine: parallel when the `parallel`
/// feature is on, sequential otherwise. Both produce identical reports for
/// identical configs.
pub fn simulate(sys: &PatternSystem, cfg: SimConfig) -> Result<SimReport, SimError> {
    #[cfg(feature = "parallel")]
    {
        simulate_parallel(sys, cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        simulate_sequential(sys, cfg)
    }
}

/// Single-threaded reference engine.
pub fn simulate_sequential(sys: &PatternSystem, cfg: SimConfig) -> Result<SimReport, SimError> {
    check_config(sys, &cfg)?;
    let automaton = MatchAutomaton::build(sys);
    let sampler = LetterSampler::new(sys.distribution());
    let mut report = SimReport::empty(sys.len());
    for trial in 0..cfg.trials {
        match run_trial(&automaton, &sampler, cfg.seed, trial, cfg.max_steps) {
            Some((winner, wait)) => report.record_win(winner, wait),
            None => report.record_truncated(),
        }
    }
    finish(report, &cfg)
}

/// Data-parallel engine; bit-identical to the sequential one because
/// every trial owns its generator and the tallies commute.
#[cfg(feature = "parallel")]
pub fn simulate_parallel(sys: &PatternSystem, cfg: SimConfig) -> Result<SimReport, SimError> {
    use rayon::prelude::*;

    check_config(sys, &cfg)?;
    let automaton = MatchAutomaton::build(sys);
    let sampler = LetterSampler::new(sys.distribution());
    let m = sys.len();
    let report = (0..cfg.trials)
        .into_par_iter()
        .fold(
            || SimReport::empty(m),
            |mut acc, trial| {
                match run_trial(&automaton, &sampler, cfg.seed, trial, cfg.max_steps) {
                    Some((winner, wait)) => acc.record_win(winner, wait),
                    None => acc.record_truncated(),
                }
                acc
            },
        )
        .reduce(|| SimReport::empty(m), SimReport::merge);
    finish(report, &cfg)
}
