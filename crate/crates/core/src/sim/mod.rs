//! Seeded discrete-event simulation of chain arrivals and departures.
//!
//! One epoch draws a tidal request stream, replays it against a strategy on a
//! fresh network and aggregates per-bucket acceptance and profit. Epoch `e`
//! uses seed `seed + e`; the topology is drawn once from `seed` on a separate
//! random stream so all epochs and strategies share it.

pub mod compare;
pub mod config;
pub mod export;
pub mod instances;
pub mod metrics;
pub mod topology_gen;
pub mod workload;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{SfcRequest, Topology};
use crate::state::NetworkState;
use crate::strategy::StrategyKind;

pub use config::SimConfig;
pub use metrics::{BucketStats, LatencyBucket, LogEntry};

/// Builds the (epoch-independent) physical network of `cfg`.
pub fn build_topology(cfg: &SimConfig) -> Result<Topology, ConfigError> {
    match &cfg.topology {
        config::TopologySpec::Generated { nodes, avg_degree, cpu_capacity, mem_capacity, bandwidth, link_length } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(1);
            let spec = topology_gen::GenSpec {
                nodes: *nodes,
                avg_degree: *avg_degree,
                cpu_capacity: *cpu_capacity,
                mem_capacity: *mem_capacity,
                bandwidth: *bandwidth,
                link_length: *link_length,
            };
            Ok(topology_gen::generate(&spec, &mut rng))
        }
        config::TopologySpec::Explicit { nodes, links } => Ok(Topology::new(nodes.clone(), links.clone())?),
    }
}

pub fn epoch_seed(cfg: &SimConfig, epoch: usize) -> u64 {
    cfg.seed.wrapping_add(epoch as u64)
}

/// Request stream of one epoch.
pub fn epoch_workload(cfg: &SimConfig, node_count: usize, epoch: usize) -> Vec<SfcRequest> {
    let mut rng = ChaCha8Rng::seed_from_u64(epoch_seed(cfg, epoch));
    workload::generate_workload(&cfg.arrivals, cfg.sim_duration, node_count, &cfg.requests, cfg.mean_lifetime, &mut rng)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub seed: u64,
    pub arrivals: u64,
    pub accepted: u64,
    pub total_profit: f64,
    pub rejections: BTreeMap<String, u64>,
    pub buckets: Vec<BucketStats>,
    /// Events after which residual bookkeeping disagreed with the active set.
    pub invariant_violations: u64,
    /// All residuals back at capacity once every lifetime expired.
    pub residuals_restored: bool,
}

impl EpochMetrics {
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.arrivals > 0).then(|| self.accepted as f64 / self.arrivals as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanBucket {
    pub start: f64,
    pub end: f64,
    pub peak: bool,
    /// Mean over epochs in which the bucket saw arrivals.
    pub acceptance_rate: Option<f64>,
    pub arrivals: f64,
    pub profit: f64,
    pub cumulative_profit: f64,
}

/// Aggregated result of all epochs for one strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimMetrics {
    pub strategy: StrategyKind,
    pub seed: u64,
    pub epochs: Vec<EpochMetrics>,
    pub mean_buckets: Vec<MeanBucket>,
    pub mean_acceptance: Option<f64>,
    pub mean_profit: f64,
    /// Latency and jitter per data-rate bucket, pooled over epochs.
    pub latency: Vec<LatencyBucket>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: SimMetrics,
    /// Per-epoch deployment logs, in arrival order.
    pub logs: Vec<Vec<LogEntry>>,
}

fn entry_for(req: &SfcRequest, cfg: &SimConfig, outcome: &Result<crate::Deployment, crate::Rejection>) -> LogEntry {
    let band_lower = req.latency_bound - cfg.params.band_for(req.latency_bound);
    let base = LogEntry {
        request_id: req.id,
        arrival: req.arrival,
        lifetime: req.lifetime,
        data_rate: req.data_rate,
        latency_bound: req.latency_bound,
        band_lower,
        accepted: false,
        reason: None,
        achieved_latency: None,
        cost: 0.0,
        revenue: 0.0,
        profit: 0.0,
        vnf_nodes: Vec::new(),
        vnf_cores: Vec::new(),
    };
    match outcome {
        Ok(dep) => LogEntry {
            accepted: true,
            achieved_latency: Some(dep.achieved_latency),
            cost: dep.cost,
            revenue: dep.revenue,
            profit: dep.profit,
            vnf_nodes: dep.vnf_nodes.iter().map(|n| n.0).collect(),
            vnf_cores: dep.vnf_cores.clone(),
            ..base
        },
        Err(rej) => LogEntry { reason: Some(rej.reason), ..base },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Departure {
    time: f64,
    id: u64,
}

impl Eq for Departure {}
impl PartialOrd for Departure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Departure {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.time.total_cmp(&other.time).then(self.id.cmp(&other.id))
    }
}

/// Replays `requests` against `strategy`. Departures due at or before an
/// arrival are processed first; after the last arrival every outstanding
/// departure is drained.
pub fn run_epoch_with(
    cfg: &SimConfig,
    topology: Arc<Topology>,
    strategy: StrategyKind,
    epoch: usize,
    requests: &[SfcRequest],
) -> (EpochMetrics, Vec<LogEntry>) {
    let mut state = NetworkState::new(topology);
    let mut departures: BinaryHeap<Reverse<Departure>> = BinaryHeap::new();
    let mut buckets = metrics::BucketAccumulator::new(cfg.bucket_width, cfg.bucket_count());
    let mut log = Vec::with_capacity(requests.len());
    let mut rejections: BTreeMap<String, u64> = BTreeMap::new();
    let mut invariant_violations = 0u64;
    let mut accepted = 0u64;
    let mut total_profit = 0.0;

    let check = |state: &NetworkState, violations: &mut u64| {
        if cfg.check_invariants {
            if let Err(msg) = state.check_conservation() {
                log::error!("epoch {epoch}: {msg}");
                *violations += 1;
            }
        }
    };

    for req in requests {
        while let Some(Reverse(d)) = departures.peek().copied() {
            if d.time > req.arrival {
                break;
            }
            departures.pop();
            state.release(d.id);
            check(&state, &mut invariant_violations);
        }
        let outcome = strategy.deploy(&mut state, req, &cfg.params);
        let entry = entry_for(req, cfg, &outcome);
        buckets.record(entry.arrival, entry.accepted, entry.profit);
        match &outcome {
            Ok(dep) => {
                accepted += 1;
                total_profit += dep.profit;
                departures.push(Reverse(Departure { time: req.arrival + req.lifetime, id: req.id }));
            }
            Err(rej) => *rejections.entry(rej.reason.as_str().to_string()).or_default() += 1,
        }
        log.push(entry);
        check(&state, &mut invariant_violations);
    }
    while let Some(Reverse(d)) = departures.pop() {
        state.release(d.id);
        check(&state, &mut invariant_violations);
    }

    let metrics = EpochMetrics {
        epoch,
        seed: epoch_seed(cfg, epoch),
        arrivals: requests.len() as u64,
        accepted,
        total_profit,
        rejections,
        buckets: buckets.finish(),
        invariant_violations,
        residuals_restored: state.is_idle(),
    };
    (metrics, log)
}

fn mean_buckets(cfg: &SimConfig, epochs: &[EpochMetrics]) -> Vec<MeanBucket> {
    let n = epochs.len() as f64;
    (0..cfg.bucket_count())
        .map(|i| {
            let start = i as f64 * cfg.bucket_width;
            let end = start + cfg.bucket_width;
            let rates: Vec<f64> = epochs.iter().filter_map(|e| e.buckets[i].acceptance_rate).collect();
            MeanBucket {
                start,
                end,
                peak: cfg.arrivals.is_peak((start + end) / 2.0),
                acceptance_rate: (!rates.is_empty()).then(|| rates.iter().sum::<f64>() / rates.len() as f64),
                arrivals: epochs.iter().map(|e| e.buckets[i].arrivals as f64).sum::<f64>() / n,
                profit: epochs.iter().map(|e| e.buckets[i].profit).sum::<f64>() / n,
                cumulative_profit: epochs.iter().map(|e| e.buckets[i].cumulative_profit).sum::<f64>() / n,
            }
        })
        .collect()
}

/// Runs every epoch of `cfg` with `strategy`. Epochs run in parallel; results
/// are ordered by epoch index and do not depend on scheduling.
pub fn run_strategy(cfg: &SimConfig, strategy: StrategyKind) -> Result<RunOutput, ConfigError> {
    cfg.validate()?;
    let topology = Arc::new(build_topology(cfg)?);
    let results: Vec<(EpochMetrics, Vec<LogEntry>)> = (0..cfg.epochs)
        .into_par_iter()
        .map(|e| {
            let requests = epoch_workload(cfg, topology.node_count(), e);
            run_epoch_with(cfg, Arc::clone(&topology), strategy, e, &requests)
        })
        .collect();
    let (epochs, logs): (Vec<_>, Vec<_>) = results.into_iter().unzip();

    let rates: Vec<f64> = epochs.iter().filter_map(EpochMetrics::acceptance_rate).collect();
    let metrics = SimMetrics {
        strategy,
        seed: cfg.seed,
        mean_buckets: mean_buckets(cfg, &epochs),
        mean_acceptance: (!rates.is_empty()).then(|| rates.iter().sum::<f64>() / rates.len() as f64),
        mean_profit: epochs.iter().map(|e| e.total_profit).sum::<f64>() / epochs.len() as f64,
        latency: metrics::jitter_report(logs.iter().flatten(), cfg.requests.data_rate.lo, cfg.rate_bucket_width),
        epochs,
    };
    Ok(RunOutput { metrics, logs })
}

/// Runs `cfg` with its configured strategy.
pub fn run(cfg: &SimConfig) -> Result<RunOutput, ConfigError> {
    run_strategy(cfg, cfg.strategy)
}
