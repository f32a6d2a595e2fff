//! Paired comparison of two strategies on identical workloads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::sim::{run_strategy, RunOutput, SimConfig};
use crate::strategy::StrategyKind;

/// One time bucket, both strategies side by side (epoch means).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedBucket {
    pub start: f64,
    pub end: f64,
    pub peak: bool,
    pub arrivals: f64,
    pub det_acceptance: Option<f64>,
    pub sph_acceptance: Option<f64>,
    pub det_profit: f64,
    pub sph_profit: f64,
}

impl PairedBucket {
    pub fn acceptance_gain(&self) -> Option<f64> {
        Some(self.det_acceptance? - self.sph_acceptance?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGain {
    pub buckets: usize,
    /// Mean over buckets with arrivals of the per-bucket acceptance difference.
    pub mean_acceptance_gain: Option<f64>,
    /// Mean per-bucket profit difference.
    pub mean_profit_gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
    pub resamples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareSummary {
    pub seed: u64,
    pub epochs: usize,
    pub det_mean_acceptance: Option<f64>,
    pub sph_mean_acceptance: Option<f64>,
    /// Mean over epochs of the per-epoch acceptance difference.
    pub mean_acceptance_gain: f64,
    pub acceptance_gain_ci: ConfidenceInterval,
    pub mean_profit_gain: f64,
    pub peak: PhaseGain,
    pub off_peak: PhaseGain,
    /// Peak buckets in which the baseline accepted a larger share.
    pub peak_buckets_lost: usize,
}

pub struct Comparison {
    pub det: RunOutput,
    pub sph: RunOutput,
    pub buckets: Vec<PairedBucket>,
    pub summary: CompareSummary,
}

pub const BOOTSTRAP_RESAMPLES: usize = 10_000;

/// Percentile bootstrap interval for the mean of `samples`.
pub fn bootstrap_mean_ci(samples: &[f64], level: f64, resamples: usize, seed: u64) -> ConfidenceInterval {
    assert!(!samples.is_empty(), "bootstrap needs at least one sample");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = samples.len();
    let mut means: Vec<f64> =
        (0..resamples).map(|_| (0..n).map(|_| samples[rng.gen_range(0..n)]).sum::<f64>() / n as f64).collect();
    means.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let at = |q: f64| means[((q * resamples as f64).floor() as usize).min(resamples - 1)];
    ConfidenceInterval { level, lo: at(tail), hi: at(1.0 - tail), resamples }
}

pub fn phase_gain<'a>(buckets: impl IntoIterator<Item = &'a PairedBucket>) -> PhaseGain {
    let buckets: Vec<&PairedBucket> = buckets.into_iter().collect();
    let gains: Vec<f64> = buckets.iter().filter_map(|b| b.acceptance_gain()).collect();
    PhaseGain {
        buckets: buckets.len(),
        mean_acceptance_gain: (!gains.is_empty()).then(|| gains.iter().sum::<f64>() / gains.len() as f64),
        mean_profit_gain: if buckets.is_empty() {
            0.0
        } else {
            buckets.iter().map(|b| b.det_profit - b.sph_profit).sum::<f64>() / buckets.len() as f64
        },
    }
}

/// Runs both strategies on the same seeded workloads.
pub fn compare(cfg: &SimConfig) -> Result<Comparison, ConfigError> {
    let (det, sph) =
        rayon::join(|| run_strategy(cfg, StrategyKind::DetSfcd), || run_strategy(cfg, StrategyKind::SphLe));
    let (det, sph) = (det?, sph?);

    let buckets: Vec<PairedBucket> = det
        .metrics
        .mean_buckets
        .iter()
        .zip(&sph.metrics.mean_buckets)
        .map(|(d, s)| PairedBucket {
            start: d.start,
            end: d.end,
            peak: d.peak,
            arrivals: d.arrivals,
            det_acceptance: d.acceptance_rate,
            sph_acceptance: s.acceptance_rate,
            det_profit: d.profit,
            sph_profit: s.profit,
        })
        .collect();

    let epoch_gains: Vec<f64> = det
        .metrics
        .epochs
        .iter()
        .zip(&sph.metrics.epochs)
        .map(|(d, s)| d.acceptance_rate().unwrap_or(0.0) - s.acceptance_rate().unwrap_or(0.0))
        .collect();
    let n = epoch_gains.len() as f64;
    let profit_gain = det.metrics.mean_profit - sph.metrics.mean_profit;

    let summary = CompareSummary {
        seed: cfg.seed,
        epochs: cfg.epochs,
        det_mean_acceptance: det.metrics.mean_acceptance,
        sph_mean_acceptance: sph.metrics.mean_acceptance,
        mean_acceptance_gain: epoch_gains.iter().sum::<f64>() / n,
        acceptance_gain_ci: bootstrap_mean_ci(&epoch_gains, 0.95, BOOTSTRAP_RESAMPLES, cfg.seed),
        mean_profit_gain: profit_gain,
        peak: phase_gain(buckets.iter().filter(|b| b.peak)),
        off_peak: phase_gain(buckets.iter().filter(|b| !b.peak)),
        peak_buckets_lost: buckets.iter().filter(|b| b.peak && b.acceptance_gain().is_some_and(|g| g < 0.0)).count(),
    };
    Ok(Comparison { det, sph, buckets, summary })
}
