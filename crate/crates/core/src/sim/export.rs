//! CSV and JSON renderings of simulation results.
//!
//! Every float in a CSV is written in scientific notation with 9 significant
//! digits so files compare byte-for-byte across runs. Undefined values
//! (acceptance of an empty bucket) are written as empty fields.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::sim::compare::{CompareSummary, PairedBucket};
use crate::sim::{RunOutput, SimMetrics};

pub const METRICS_CSV: &str = "metrics.csv";
pub const EPOCHS_CSV: &str = "epochs.csv";
pub const LATENCY_CSV: &str = "latency.csv";
pub const METRICS_JSON: &str = "metrics.json";
pub const LOG_JSON: &str = "deployment_log.json";
pub const PAIRED_CSV: &str = "compare.csv";
pub const PAIRED_EPOCHS_CSV: &str = "compare_epochs.csv";
pub const SUMMARY_JSON: &str = "summary.json";

pub const METRICS_HEADER: &str =
    "time_bucket,strategy,acceptance_rate,profit,cumulative_profit,arrivals,bucket_end,peak";
pub const EPOCHS_HEADER: &str =
    "time_bucket,strategy,acceptance_rate,profit,cumulative_profit,arrivals,accepted,bucket_end,epoch";
pub const LATENCY_HEADER: &str =
    "rate_lo,rate_hi,strategy,count,mean_latency,mean_bound,mean_band_lower,mean_deviation,jitter";
pub const PAIRED_HEADER: &str =
    "time_bucket,bucket_end,peak,arrivals,det_acceptance,sph_acceptance,acceptance_gain,det_profit,sph_profit,profit_gain";
pub const PAIRED_EPOCHS_HEADER: &str = "epoch,det_acceptance,sph_acceptance,acceptance_gain,det_profit,sph_profit";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Epoch-mean time series.
pub fn metrics_csv(m: &SimMetrics) -> String {
    let mut out = format!("{METRICS_HEADER}\n");
    for b in &m.mean_buckets {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(b.start),
            m.strategy,
            fmt_opt(b.acceptance_rate),
            fmt_f64(b.profit),
            fmt_f64(b.cumulative_profit),
            fmt_f64(b.arrivals),
            fmt_f64(b.end),
            b.peak
        );
    }
    out
}

/// Per-epoch time series.
pub fn epochs_csv(m: &SimMetrics) -> String {
    let mut out = format!("{EPOCHS_HEADER}\n");
    for e in &m.epochs {
        for b in &e.buckets {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                fmt_f64(b.start),
                m.strategy,
                fmt_opt(b.acceptance_rate),
                fmt_f64(b.profit),
                fmt_f64(b.cumulative_profit),
                b.arrivals,
                b.accepted,
                fmt_f64(b.end),
                e.epoch
            );
        }
    }
    out
}

pub fn latency_csv(m: &SimMetrics) -> String {
    let mut out = format!("{LATENCY_HEADER}\n");
    for b in &m.latency {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt_f64(b.rate_lo),
            fmt_f64(b.rate_hi),
            m.strategy,
            b.count,
            fmt_f64(b.mean_latency),
            fmt_f64(b.mean_bound),
            fmt_f64(b.mean_band_lower),
            fmt_f64(b.mean_deviation),
            fmt_f64(b.jitter)
        );
    }
    out
}

pub fn paired_csv(buckets: &[PairedBucket]) -> String {
    let mut out = format!("{PAIRED_HEADER}\n");
    for b in buckets {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(b.start),
            fmt_f64(b.end),
            b.peak,
            fmt_f64(b.arrivals),
            fmt_opt(b.det_acceptance),
            fmt_opt(b.sph_acceptance),
            fmt_opt(b.acceptance_gain()),
            fmt_f64(b.det_profit),
            fmt_f64(b.sph_profit),
            fmt_f64(b.det_profit - b.sph_profit)
        );
    }
    out
}

pub fn paired_epochs_csv(det: &SimMetrics, sph: &SimMetrics) -> String {
    let mut out = format!("{PAIRED_EPOCHS_HEADER}\n");
    for (d, s) in det.epochs.iter().zip(&sph.epochs) {
        let (da, sa) = (d.acceptance_rate().unwrap_or(0.0), s.acceptance_rate().unwrap_or(0.0));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            d.epoch,
            fmt_f64(da),
            fmt_f64(sa),
            fmt_f64(da - sa),
            fmt_f64(d.total_profit),
            fmt_f64(s.total_profit)
        );
    }
    out
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("metrics serialize");
    s.push('\n');
    s
}

/// File name and contents of every output of a single-strategy run.
pub fn simulate_files(run: &RunOutput) -> Vec<(&'static str, String)> {
    vec![
        (METRICS_CSV, metrics_csv(&run.metrics)),
        (EPOCHS_CSV, epochs_csv(&run.metrics)),
        (LATENCY_CSV, latency_csv(&run.metrics)),
        (METRICS_JSON, json(&run.metrics)),
        (LOG_JSON, json(&run.logs)),
    ]
}

pub fn compare_files(
    det: &SimMetrics,
    sph: &SimMetrics,
    buckets: &[PairedBucket],
    summary: &CompareSummary,
) -> Vec<(&'static str, String)> {
    let mut latency = latency_csv(det);
    latency.push_str(latency_csv(sph).split_once('\n').map_or("", |(_, rest)| rest));
    vec![
        (PAIRED_CSV, paired_csv(buckets)),
        (PAIRED_EPOCHS_CSV, paired_epochs_csv(det, sph)),
        (LATENCY_CSV, latency),
        (SUMMARY_JSON, json(summary)),
    ]
}

/// Writes `files` into `dir`, creating it if needed. Returns the paths written.
pub fn write_files(dir: &Path, files: &[(&'static str, String)]) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body)?;
            Ok(path)
        })
        .collect()
}
