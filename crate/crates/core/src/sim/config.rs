//! Simulation configuration and its JSON file format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{EdgeNode, PhysLink, Topology};
use crate::oracle::OracleLimits;
use crate::params::ModelParams;
use crate::strategy::StrategyKind;

/// Inclusive numeric range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range<T> {
    pub lo: T,
    pub hi: T,
}

impl<T> Range<T> {
    pub const fn new(lo: T, hi: T) -> Self {
        Range { lo, hi }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopologySpec {
    /// Seeded synthetic network: a random spanning tree plus random chords.
    Generated {
        nodes: usize,
        avg_degree: f64,
        cpu_capacity: u32,
        /// GB.
        mem_capacity: f64,
        /// bits/s.
        bandwidth: u64,
        /// km.
        link_length: Range<f64>,
    },
    Explicit {
        nodes: Vec<EdgeNode>,
        links: Vec<PhysLink>,
    },
}

impl Default for TopologySpec {
    fn default() -> Self {
        TopologySpec::Generated {
            nodes: 52,
            avg_degree: 3.5,
            cpu_capacity: 128,
            mem_capacity: 64.0,
            bandwidth: 10_000_000_000,
            link_length: Range::new(5.0, 50.0),
        }
    }
}

/// Tidal arrival process: the rate swings sinusoidally between `base_rate`
/// and `peak_rate` (arrivals per time unit) with the given period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrivalProfile {
    pub base_rate: f64,
    pub peak_rate: f64,
    pub period: f64,
}

impl Default for ArrivalProfile {
    fn default() -> Self {
        ArrivalProfile { base_rate: 1.0, peak_rate: 10.0, period: 1000.0 }
    }
}

impl ArrivalProfile {
    pub fn rate_at(&self, t: f64) -> f64 {
        let swing = (1.0 + (2.0 * std::f64::consts::PI * t / self.period).sin()) / 2.0;
        self.base_rate + (self.peak_rate - self.base_rate) * swing
    }

    pub fn max_rate(&self) -> f64 {
        self.base_rate.max(self.peak_rate)
    }

    /// True in the half of the cycle where the rate is above its midpoint.
    pub fn is_peak(&self, t: f64) -> bool {
        self.rate_at(t) >= (self.base_rate + self.peak_rate) / 2.0
    }
}

/// Distributions request fields are drawn from (uniform unless noted).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RequestDistributions {
    pub num_rbs: Range<u32>,
    /// Mbps.
    pub data_rate: Range<f64>,
    /// GB per chain, split evenly over its VNFs.
    pub mem: Range<f64>,
    /// VNFs per chain, Layer-1 RAN first.
    pub chain_len: usize,
    pub mcs: Range<u32>,
    /// Cycles per bit of the generic VNFs.
    pub rho: Range<f64>,
    /// Latency bounds in ms, one picked uniformly per request.
    pub latency_bounds: Vec<f64>,
    /// bits.
    pub packet_size: f64,
}

impl Default for RequestDistributions {
    fn default() -> Self {
        RequestDistributions {
            num_rbs: Range::new(50, 100),
            data_rate: Range::new(20.0, 200.0),
            mem: Range::new(1.0, 8.0),
            chain_len: 4,
            mcs: Range::new(5, 20),
            rho: Range::new(0.04, 0.16),
            latency_bounds: vec![10.0, 15.0, 20.0],
            packet_size: 12_000.0,
        }
    }
}

/// Settings of the `oracle-check` instance generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleCheckConfig {
    pub limits: OracleLimits,
    pub nodes: Range<usize>,
    pub chain_len: Range<usize>,
    /// Extra links beyond a spanning tree, as a fraction of the node count.
    pub extra_link_ratio: f64,
    pub cpu_capacity: u32,
    pub mem_capacity: f64,
    pub bandwidth: u64,
    /// Background requests deployed before the measured one.
    pub background_requests: usize,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig {
            limits: OracleLimits::default(),
            nodes: Range::new(3, 7),
            chain_len: Range::new(2, 3),
            extra_link_ratio: 0.5,
            cpu_capacity: 16,
            mem_capacity: 24.0,
            bandwidth: 1_000_000_000,
            background_requests: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub seed: u64,
    pub epochs: usize,
    pub sim_duration: f64,
    /// Width of the time buckets metrics are aggregated over.
    pub bucket_width: f64,
    /// Width of the data-rate buckets of the latency/jitter report, Mbps.
    pub rate_bucket_width: f64,
    pub mean_lifetime: f64,
    pub strategy: StrategyKind,
    pub topology: TopologySpec,
    pub arrivals: ArrivalProfile,
    pub requests: RequestDistributions,
    pub params: ModelParams,
    pub oracle_check: OracleCheckConfig,
    /// Re-derive residuals from the active set after every event.
    pub check_invariants: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 1,
            epochs: 20,
            sim_duration: 1000.0,
            bucket_width: 50.0,
            rate_bucket_width: 30.0,
            mean_lifetime: 100.0,
            strategy: StrategyKind::DetSfcd,
            topology: TopologySpec::default(),
            arrivals: ArrivalProfile::default(),
            requests: RequestDistributions::default(),
            params: ModelParams::default(),
            oracle_check: OracleCheckConfig::default(),
            check_invariants: false,
        }
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), reason: reason.into() }
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("must be positive, got {v}")))
    }
}

fn ordered<T: PartialOrd + std::fmt::Debug>(key: &str, r: &Range<T>) -> Result<(), ConfigError> {
    if r.lo <= r.hi {
        Ok(())
    } else {
        Err(invalid(key, format!("lo {:?} exceeds hi {:?}", r.lo, r.hi)))
    }
}

impl SimConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: SimConfig =
            serde_json::from_str(text).map_err(|source| ConfigError::Parse { path: origin.to_string(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.epochs == 0 {
            return Err(invalid("epochs", "must be at least 1"));
        }
        positive("sim_duration", self.sim_duration)?;
        positive("bucket_width", self.bucket_width)?;
        positive("rate_bucket_width", self.rate_bucket_width)?;
        positive("mean_lifetime", self.mean_lifetime)?;
        self.params.validate()?;

        let a = &self.arrivals;
        if !(a.base_rate >= 0.0 && a.peak_rate >= 0.0 && a.base_rate.is_finite() && a.peak_rate.is_finite()) {
            return Err(invalid("arrivals", "rates must be non-negative and finite"));
        }
        positive("arrivals.period", a.period)?;

        let r = &self.requests;
        ordered("requests.num_rbs", &r.num_rbs)?;
        ordered("requests.data_rate", &r.data_rate)?;
        ordered("requests.mem", &r.mem)?;
        ordered("requests.mcs", &r.mcs)?;
        ordered("requests.rho", &r.rho)?;
        positive("requests.data_rate.lo", r.data_rate.lo)?;
        positive("requests.rho.lo", r.rho.lo)?;
        if r.mem.lo < 0.0 {
            return Err(invalid("requests.mem.lo", "must be non-negative"));
        }
        if r.chain_len == 0 {
            return Err(invalid("requests.chain_len", "must be at least 1"));
        }
        if r.latency_bounds.is_empty() {
            return Err(invalid("requests.latency_bounds", "must list at least one bound"));
        }
        for &l in &r.latency_bounds {
            positive("requests.latency_bounds", l)?;
        }
        positive("requests.packet_size", r.packet_size)?;

        match &self.topology {
            TopologySpec::Generated { nodes, avg_degree, cpu_capacity, mem_capacity, bandwidth, link_length } => {
                if *nodes < 2 {
                    return Err(invalid("topology.nodes", "need at least 2 nodes"));
                }
                if !(*avg_degree >= 0.0 && avg_degree.is_finite()) {
                    return Err(invalid("topology.avg_degree", "must be non-negative"));
                }
                if *cpu_capacity == 0 {
                    return Err(invalid("topology.cpu_capacity", "must be positive"));
                }
                positive("topology.mem_capacity", *mem_capacity)?;
                if *bandwidth == 0 {
                    return Err(invalid("topology.bandwidth", "must be positive"));
                }
                ordered("topology.link_length", link_length)?;
                if link_length.lo < 0.0 {
                    return Err(invalid("topology.link_length.lo", "must be non-negative"));
                }
            }
            TopologySpec::Explicit { nodes, links } => {
                Topology::new(nodes.clone(), links.clone())?;
                if nodes.len() < 2 {
                    return Err(invalid("topology.nodes", "need at least 2 nodes"));
                }
            }
        }

        let o = &self.oracle_check;
        ordered("oracle_check.nodes", &o.nodes)?;
        ordered("oracle_check.chain_len", &o.chain_len)?;
        if o.nodes.lo < 2 {
            return Err(invalid("oracle_check.nodes.lo", "need at least 2 nodes"));
        }
        if o.nodes.hi > o.limits.max_nodes {
            return Err(invalid("oracle_check.nodes.hi", format!("exceeds oracle limit {}", o.limits.max_nodes)));
        }
        if o.chain_len.lo == 0 {
            return Err(invalid("oracle_check.chain_len.lo", "must be at least 1"));
        }
        if o.chain_len.hi > o.limits.max_vnfs {
            return Err(invalid("oracle_check.chain_len.hi", format!("exceeds oracle limit {}", o.limits.max_vnfs)));
        }
        Ok(())
    }

    /// Number of time buckets covering `[0, sim_duration)`.
    pub fn bucket_count(&self) -> usize {
        (self.sim_duration / self.bucket_width).ceil() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips_and_validates() {
        let cfg = SimConfig::default();
        cfg.validate().unwrap();
        let back = SimConfig::from_json(&cfg.to_json(), "inline").unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn partial_file_uses_defaults() {
        let cfg = SimConfig::from_json(r#"{"seed": 7, "epochs": 2}"#, "inline").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.epochs, 2);
        assert_eq!(cfg.params, ModelParams::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = SimConfig::from_json(r#"{"sede": 7}"#, "inline").unwrap_err();
        assert!(err.to_string().contains("sede"), "{err}");
    }

    #[test]
    fn bad_value_is_named() {
        let err = SimConfig::from_json(r#"{"params": {"bw_overprovision": 0.5}}"#, "inline").unwrap_err();
        assert!(err.to_string().contains("params.bw_overprovision"), "{err}");
        let err = SimConfig::from_json(r#"{"requests": {"data_rate": {"lo": 50.0, "hi": 10.0}}}"#, "x").unwrap_err();
        assert!(err.to_string().contains("requests.data_rate"), "{err}");
    }

    #[test]
    fn tidal_rate_shape() {
        let a = ArrivalProfile { base_rate: 1.0, peak_rate: 3.0, period: 1000.0 };
        assert!((a.rate_at(0.0) - 2.0).abs() < 1e-12);
        assert!((a.rate_at(250.0) - 3.0).abs() < 1e-12);
        assert!((a.rate_at(750.0) - 1.0).abs() < 1e-12);
        assert!(a.is_peak(100.0) && !a.is_peak(600.0));
    }
}
