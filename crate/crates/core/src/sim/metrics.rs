//! Time-bucketed acceptance/profit aggregates and the latency/jitter report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::detsfcd::RejectReason;

/// Outcome of one arrival.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub request_id: u64,
    pub arrival: f64,
    pub lifetime: f64,
    pub data_rate: f64,
    pub latency_bound: f64,
    /// Lower edge of the admission band, `bound - band`.
    pub band_lower: f64,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<RejectReason>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub achieved_latency: Option<f64>,
    pub cost: f64,
    pub revenue: f64,
    /// Zero for rejected requests.
    pub profit: f64,
    pub vnf_nodes: Vec<usize>,
    pub vnf_cores: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketStats {
    pub start: f64,
    pub end: f64,
    pub arrivals: u64,
    pub accepted: u64,
    /// `None` when no request arrived in the bucket.
    pub acceptance_rate: Option<f64>,
    pub profit: f64,
    pub cumulative_profit: f64,
}

/// Streaming accumulator over time buckets.
#[derive(Debug, Clone)]
pub struct BucketAccumulator {
    width: f64,
    buckets: Vec<BucketStats>,
}

impl BucketAccumulator {
    pub fn new(width: f64, count: usize) -> Self {
        let buckets = (0..count)
            .map(|i| BucketStats {
                start: i as f64 * width,
                end: (i + 1) as f64 * width,
                arrivals: 0,
                accepted: 0,
                acceptance_rate: None,
                profit: 0.0,
                cumulative_profit: 0.0,
            })
            .collect();
        BucketAccumulator { width, buckets }
    }

    pub fn record(&mut self, arrival: f64, accepted: bool, profit: f64) {
        if self.buckets.is_empty() {
            return;
        }
        let idx = ((arrival / self.width) as usize).min(self.buckets.len() - 1);
        let b = &mut self.buckets[idx];
        b.arrivals += 1;
        if accepted {
            b.accepted += 1;
            b.profit += profit;
        }
    }

    pub fn finish(mut self) -> Vec<BucketStats> {
        let mut cumulative = 0.0;
        for b in &mut self.buckets {
            b.acceptance_rate = (b.arrivals > 0).then(|| b.accepted as f64 / b.arrivals as f64);
            cumulative += b.profit;
            b.cumulative_profit = cumulative;
        }
        self.buckets
    }
}

/// Rebuilds the bucket aggregates from a deployment log.
pub fn buckets_from_log(log: &[LogEntry], width: f64, count: usize) -> Vec<BucketStats> {
    let mut acc = BucketAccumulator::new(width, count);
    for e in log {
        acc.record(e.arrival, e.accepted, e.profit);
    }
    acc.finish()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyBucket {
    /// Data-rate range `[rate_lo, rate_hi)`, Mbps.
    pub rate_lo: f64,
    pub rate_hi: f64,
    pub count: u64,
    pub mean_latency: f64,
    pub mean_bound: f64,
    pub mean_band_lower: f64,
    /// Mean of `achieved - bound`.
    pub mean_deviation: f64,
    /// Population standard deviation of `achieved - bound`.
    pub jitter: f64,
}

/// Groups accepted entries by data rate (buckets of `width` starting at
/// `origin`) and reports mean latency and jitter per bucket. Empty buckets
/// are omitted.
pub fn jitter_report<'a>(log: impl IntoIterator<Item = &'a LogEntry>, origin: f64, width: f64) -> Vec<LatencyBucket> {
    let mut groups: BTreeMap<i64, Vec<&LogEntry>> = BTreeMap::new();
    for e in log {
        if e.accepted && e.achieved_latency.is_some() {
            let k = ((e.data_rate - origin) / width).floor() as i64;
            groups.entry(k).or_default().push(e);
        }
    }
    groups
        .into_iter()
        .map(|(k, entries)| {
            let n = entries.len() as f64;
            let mean = |f: &dyn Fn(&LogEntry) -> f64| entries.iter().map(|e| f(e)).sum::<f64>() / n;
            let mean_latency = mean(&|e| e.achieved_latency.unwrap());
            let mean_deviation = mean(&|e| e.achieved_latency.unwrap() - e.latency_bound);
            let var = mean(&|e| {
                let d = e.achieved_latency.unwrap() - e.latency_bound - mean_deviation;
                d * d
            });
            LatencyBucket {
                rate_lo: origin + k as f64 * width,
                rate_hi: origin + (k + 1) as f64 * width,
                count: entries.len() as u64,
                mean_latency,
                mean_bound: mean(&|e| e.latency_bound),
                mean_band_lower: mean(&|e| e.band_lower),
                mean_deviation,
                jitter: var.sqrt(),
            }
        })
        .collect()
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation with average ranks for ties. `None` for fewer
/// than two points or a constant series.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        None
    } else {
        Some(cov / (vx * vy).sqrt())
    }
}
