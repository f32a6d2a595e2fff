//! Small random instances for measuring the heuristics against the oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::model::{EdgeNode, NodeId, PhysLink, SfcRequest, Topology};
use crate::oracle::{admission_value, optimal_deploy_with};
use crate::params::ModelParams;
use crate::sim::config::{OracleCheckConfig, RequestDistributions};
use crate::sim::workload::sample_request;
use crate::state::NetworkState;
use crate::strategy::StrategyKind;
use crate::validate::LatencyPolicy;

/// A loaded network and the request to be admitted into it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub state: NetworkState,
    pub request: SfcRequest,
}

fn random_topology<R: Rng>(cfg: &OracleCheckConfig, rng: &mut R) -> Topology {
    let n = rng.gen_range(cfg.nodes.lo..=cfg.nodes.hi);
    let nodes: Vec<EdgeNode> = (0..n)
        .map(|i| EdgeNode { id: NodeId(i), cpu_capacity: cfg.cpu_capacity, mem_capacity: cfg.mem_capacity })
        .collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let mut rest: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|p| !pairs.contains(p)).collect();
    rest.shuffle(rng);
    let extra = (cfg.extra_link_ratio * n as f64).round() as usize;
    pairs.extend(rest.into_iter().take(extra));
    let links = pairs
        .into_iter()
        .map(|(a, b)| PhysLink {
            endpoints: (NodeId(a), NodeId(b)),
            bandwidth_capacity: cfg.bandwidth,
            length: rng.gen_range(1.0..=50.0),
        })
        .collect();
    Topology::new(nodes, links).expect("spanning tree keeps the instance connected")
}

fn random_request<R: Rng>(
    id: u64,
    n: usize,
    cfg: &OracleCheckConfig,
    dist: &RequestDistributions,
    rng: &mut R,
) -> SfcRequest {
    let chain_len = rng.gen_range(cfg.chain_len.lo..=cfg.chain_len.hi);
    let dist = RequestDistributions { chain_len, ..dist.clone() };
    sample_request(id, 0.0, n, &dist, 100.0, rng)
}

/// Instance `index` of the family seeded by `seed`. Background requests are
/// admitted with Det-SFCD first so the measured request meets a loaded network.
pub fn instance(
    seed: u64,
    index: usize,
    cfg: &OracleCheckConfig,
    dist: &RequestDistributions,
    p: &ModelParams,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 2);
    let topo = random_topology(cfg, &mut rng);
    let n = topo.node_count();
    let mut state = NetworkState::new(topo);
    for b in 0..cfg.background_requests {
        let req = random_request(b as u64 + 1, n, cfg, dist, &mut rng);
        let _ = StrategyKind::DetSfcd.deploy(&mut state, &req, p);
    }
    let request = random_request(0, n, cfg, dist, &mut rng);
    Instance { state, request }
}

/// Oracle and heuristic outcome on one instance. Profits of rejected
/// requests are 0; `*_oracle` is the best admission value under the policy
/// the heuristic is held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub instance: usize,
    pub nodes: usize,
    pub chain_len: usize,
    pub det_feasible: bool,
    pub det_profit: f64,
    pub det_oracle: f64,
    pub det_oracle_feasible: bool,
    pub sph_feasible: bool,
    pub sph_profit: f64,
    pub sph_oracle: f64,
    pub sph_oracle_feasible: bool,
}

impl GapRow {
    /// A heuristic beating the oracle, or finding a deployment where the
    /// oracle found none, is a correctness failure.
    pub fn dominance_holds(&self) -> bool {
        self.det_oracle >= self.det_profit
            && self.sph_oracle >= self.sph_profit
            && (!self.det_feasible || self.det_oracle_feasible)
            && (!self.sph_feasible || self.sph_oracle_feasible)
    }
}

pub fn evaluate(
    index: usize,
    inst: &Instance,
    cfg: &OracleCheckConfig,
    p: &ModelParams,
) -> Result<GapRow, OracleError> {
    let req = &inst.request;
    let heuristic = |kind: StrategyKind| {
        let mut state = inst.state.clone();
        kind.deploy(&mut state, req, p).ok().map(|d| d.profit)
    };
    let det = heuristic(StrategyKind::DetSfcd);
    let sph = heuristic(StrategyKind::SphLe);
    let det_best = optimal_deploy_with(&inst.state, req, p, &cfg.limits, LatencyPolicy::Band)?;
    let sph_best = optimal_deploy_with(&inst.state, req, p, &cfg.limits, LatencyPolicy::UpperOnly)?;
    Ok(GapRow {
        instance: index,
        nodes: inst.state.topology().node_count(),
        chain_len: req.chain_len(),
        det_feasible: det.is_some(),
        det_profit: det.unwrap_or(0.0),
        det_oracle: admission_value(det_best.as_ref()),
        det_oracle_feasible: det_best.is_some(),
        sph_feasible: sph.is_some(),
        sph_profit: sph.unwrap_or(0.0),
        sph_oracle: admission_value(sph_best.as_ref()),
        sph_oracle_feasible: sph_best.is_some(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub instances: usize,
    pub dominance_failures: usize,
    /// Mean of heuristic/oracle profit over instances with positive oracle value.
    pub det_mean_ratio: Option<f64>,
    pub sph_mean_ratio: Option<f64>,
    pub det_acceptance: Option<f64>,
    pub sph_acceptance: Option<f64>,
}

pub fn summarize(rows: &[GapRow]) -> GapSummary {
    let ratio = |f: fn(&GapRow) -> (f64, f64)| {
        let rs: Vec<f64> = rows.iter().map(f).filter(|(_, o)| *o > 0.0).map(|(h, o)| h / o).collect();
        (!rs.is_empty()).then(|| rs.iter().sum::<f64>() / rs.len() as f64)
    };
    let share = |f: fn(&GapRow) -> bool| {
        (!rows.is_empty()).then(|| rows.iter().filter(|r| f(r)).count() as f64 / rows.len() as f64)
    };
    GapSummary {
        instances: rows.len(),
        dominance_failures: rows.iter().filter(|r| !r.dominance_holds()).count(),
        det_mean_ratio: ratio(|r| (r.det_profit, r.det_oracle)),
        sph_mean_ratio: ratio(|r| (r.sph_profit, r.sph_oracle)),
        det_acceptance: share(|r| r.det_feasible),
        sph_acceptance: share(|r| r.sph_feasible),
    }
}

/// Evaluates instances `0..count` of the family seeded by `seed`, in parallel.
pub fn gap_report(
    seed: u64,
    count: usize,
    cfg: &OracleCheckConfig,
    dist: &RequestDistributions,
    p: &ModelParams,
) -> Result<Vec<GapRow>, OracleError> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(|i| evaluate(i, &instance(seed, i, cfg, dist, p), cfg, p)).collect()
}
