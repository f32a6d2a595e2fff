//! Exhaustive profit-maximising solver for tiny instances.
//!
//! Enumerates every simple path, every order-preserving VNF placement on it
//! and every core vector, keeping the most profitable feasible deployment.
//! This is a test instrument for measuring how far the heuristics are from
//! optimal; instance sizes are capped hard.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::accounting::cpu_cost;
use crate::allocator::bandwidth_assignment;
use crate::detsfcd::assemble_deployment;
use crate::error::OracleError;
use crate::graph::PathResult;
use crate::latency::{path_communication_latency, vnf_latency};
use crate::model::{Deployment, NodeId, SfcRequest, Topology};
use crate::params::ModelParams;
use crate::state::{Footprint, NetworkState};
use crate::validate::{latency_admissible, validate_deployment_with, LatencyPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleLimits {
    pub max_nodes: usize,
    pub max_vnfs: usize,
    pub max_batch: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_nodes: 8, max_vnfs: 3, max_batch: 4 }
    }
}

impl OracleLimits {
    fn check(&self, state: &NetworkState, req: &SfcRequest) -> Result<(), OracleError> {
        let n = state.topology().node_count();
        if n > self.max_nodes {
            return Err(OracleError::TooLarge { what: "nodes", got: n, limit: self.max_nodes });
        }
        if req.vnfs.len() > self.max_vnfs {
            return Err(OracleError::TooLarge { what: "vnfs", got: req.vnfs.len(), limit: self.max_vnfs });
        }
        Ok(())
    }
}

/// All simple node paths from `source` to `dest`, in lexicographic order.
pub fn simple_paths(topo: &Topology, source: NodeId, dest: NodeId) -> Vec<Vec<NodeId>> {
    fn walk(topo: &Topology, dest: NodeId, stack: &mut Vec<NodeId>, on: &mut [bool], out: &mut Vec<Vec<NodeId>>) {
        let at = *stack.last().unwrap();
        if at == dest {
            out.push(stack.clone());
            return;
        }
        for &(next, _) in topo.neighbors(at) {
            if !on[next.0] {
                on[next.0] = true;
                stack.push(next);
                walk(topo, dest, stack, on, out);
                stack.pop();
                on[next.0] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; topo.node_count()];
    on[source.0] = true;
    walk(topo, dest, &mut vec![source], &mut on, &mut out);
    out
}

/// Non-decreasing placements of `chain` VNFs over `len` positions.
fn ordered_placements(chain: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(chain: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == chain {
            out.push(cur.clone());
            return;
        }
        for j in from..len {
            cur.push(j);
            rec(chain, len, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(chain, len, 0, &mut Vec::with_capacity(chain), &mut out);
    out
}

/// Core vectors whose processing latency keeps the end-to-end latency inside
/// the admission window, sorted by CPU cost then lexicographically.
fn admissible_core_vectors(
    table: &[Vec<f64>],
    comm: f64,
    req: &SfcRequest,
    p: &ModelParams,
    policy: LatencyPolicy,
) -> Vec<(f64, Vec<u32>)> {
    fn rec(table: &[Vec<f64>], i: usize, acc: f64, cur: &mut Vec<u32>, keep: &mut dyn FnMut(&[u32], f64)) {
        if i == table.len() {
            keep(cur, acc);
            return;
        }
        for (k, &l) in table[i].iter().enumerate() {
            cur.push(k as u32 + 1);
            rec(table, i + 1, acc + l, cur, keep);
            cur.pop();
        }
    }
    let band = p.band_for(req.latency_bound);
    let mut out = Vec::new();
    let mut keep = |cores: &[u32], proc: f64| {
        if latency_admissible(proc + comm, req.latency_bound, band, policy) {
            out.push((cpu_cost(cores, p), cores.to_vec()));
        }
    };
    rec(table, 0, 0.0, &mut Vec::new(), &mut keep);
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Every feasible deployment of `req` on `state`, or only the cheapest core
/// vector per (path, placement) when `best_only` is set.
fn search(
    state: &NetworkState,
    req: &SfcRequest,
    p: &ModelParams,
    policy: LatencyPolicy,
    best_only: bool,
    mut sink: impl FnMut(Deployment),
) -> Result<(), OracleError> {
    req.validate_in(state.topology())?;
    let topo = state.topology();
    let table: Vec<Vec<f64>> = req
        .vnfs
        .iter()
        .map(|v| (1..=p.max_cores_per_vnf).map(|c| vnf_latency(v, req, c, p)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let bw = bandwidth_assignment(req, p);

    for nodes in simple_paths(topo, req.source, req.dest) {
        let links = topo.links_along(&nodes)?;
        if links.iter().any(|&l| state.residual_bw(l) < bw) {
            continue;
        }
        let comm = path_communication_latency(&links, req.packet_size, bw, topo, p)?;
        let cores_list = admissible_core_vectors(&table, comm, req, p, policy);
        if cores_list.is_empty() {
            continue;
        }
        let path = PathResult { nodes, links, weight: 0.0 };
        for positions in ordered_placements(req.vnfs.len(), path.nodes.len()) {
            let mut mem: BTreeMap<NodeId, f64> = BTreeMap::new();
            for (&j, v) in positions.iter().zip(&req.vnfs) {
                *mem.entry(path.nodes[j]).or_default() += v.mem_demand;
            }
            if mem.iter().any(|(&n, &gb)| gb > state.residual_mem_gb(n) + 1e-9) {
                continue;
            }
            for (_, cores) in &cores_list {
                let mut used: BTreeMap<NodeId, u32> = BTreeMap::new();
                for (&j, &c) in positions.iter().zip(cores) {
                    *used.entry(path.nodes[j]).or_default() += c;
                }
                if used.iter().any(|(&n, &c)| c > state.residual_cpu(n)) {
                    continue;
                }
                let dep = assemble_deployment(state, req, &path, &positions, cores, p)?;
                if validate_deployment_with(state, &dep, req, p, policy).is_ok() {
                    sink(dep);
                    if best_only {
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Most profitable feasible deployment of a single request under `policy`.
///
/// Ties keep the first candidate in (path, placement, cost, cores) order.
pub fn optimal_deploy_with(
    state: &NetworkState,
    req: &SfcRequest,
    p: &ModelParams,
    limits: &OracleLimits,
    policy: LatencyPolicy,
) -> Result<Option<Deployment>, OracleError> {
    limits.check(state, req)?;
    let mut best: Option<Deployment> = None;
    search(state, req, p, policy, true, |dep| {
        if best.as_ref().is_none_or(|b| dep.profit > b.profit) {
            best = Some(dep);
        }
    })?;
    Ok(best)
}

/// [`optimal_deploy_with`] under the full latency band.
pub fn optimal_deploy(
    state: &NetworkState,
    req: &SfcRequest,
    p: &ModelParams,
    limits: &OracleLimits,
) -> Result<Option<Deployment>, OracleError> {
    optimal_deploy_with(state, req, p, limits, LatencyPolicy::Band)
}

/// Value of admitting at best: the optimal profit, or 0 when rejecting is
/// better or nothing is feasible.
pub fn admission_value(best: Option<&Deployment>) -> f64 {
    best.map_or(0.0, |d| d.profit.max(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceSolution {
    /// Ids of admitted requests, in input order.
    pub admitted: Vec<u64>,
    pub deployments: Vec<Deployment>,
    pub total_profit: f64,
}

fn dominated(a: &(Footprint, f64), b: &(Footprint, f64)) -> bool {
    // b dominates a: no more profit for a, and a uses at least as much everywhere.
    fn covers<K: Ord + Copy, V: Ord + Copy + Default>(big: &BTreeMap<K, V>, small: &BTreeMap<K, V>) -> bool {
        small.iter().all(|(k, v)| big.get(k).copied().unwrap_or_default() >= *v)
    }
    a.1 <= b.1 && covers(&a.0.cpu, &b.0.cpu) && covers(&a.0.mem, &b.0.mem) && covers(&a.0.bw, &b.0.bw)
}

/// Jointly optimal admission and deployment of a small batch of requests
/// sharing the capacities of `state`. Rejected requests contribute nothing;
/// deployments with negative profit are never admitted.
pub fn optimal_sequence(
    state: &NetworkState,
    reqs: &[SfcRequest],
    p: &ModelParams,
    limits: &OracleLimits,
) -> Result<SequenceSolution, OracleError> {
    if reqs.len() > limits.max_batch {
        return Err(OracleError::TooLarge { what: "batch", got: reqs.len(), limit: limits.max_batch });
    }
    let mut candidates: Vec<Vec<Deployment>> = Vec::with_capacity(reqs.len());
    for req in reqs {
        limits.check(state, req)?;
        let mut all: Vec<(Footprint, f64, Deployment)> = Vec::new();
        search(state, req, p, LatencyPolicy::Band, false, |dep| {
            if dep.profit > 0.0 {
                all.push((Footprint::of(&dep), dep.profit, dep));
            }
        })?;
        // Keep only Pareto candidates: nothing cheaper-or-equal in every resource with at least the profit.
        let keys: Vec<(Footprint, f64)> = all.iter().map(|(f, pr, _)| (f.clone(), *pr)).collect();
        let mut kept: Vec<Deployment> = Vec::new();
        for (i, (_, _, dep)) in all.into_iter().enumerate() {
            let beaten = keys
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && dominated(&keys[i], other) && (j < i || !dominated(other, &keys[i])));
            if !beaten {
                kept.push(dep);
            }
        }
        kept.sort_by(|a, b| b.profit.total_cmp(&a.profit));
        candidates.push(kept);
    }

    let optimistic: Vec<f64> = candidates.iter().map(|c| c.first().map_or(0.0, |d| d.profit)).collect();
    let mut suffix = vec![0.0; reqs.len() + 1];
    for i in (0..reqs.len()).rev() {
        suffix[i] = suffix[i + 1] + optimistic[i];
    }

    struct Search<'a> {
        candidates: &'a [Vec<Deployment>],
        suffix: &'a [f64],
        chosen: Vec<Deployment>,
        best: (f64, Vec<Deployment>),
    }
    fn dfs(s: &mut Search<'_>, state: &mut NetworkState, i: usize, profit: f64) {
        if i == s.candidates.len() {
            if profit > s.best.0 {
                s.best = (profit, s.chosen.clone());
            }
            return;
        }
        if profit + s.suffix[i] <= s.best.0 {
            return;
        }
        for dep in &s.candidates[i] {
            if state.commit(dep.clone()).is_ok() {
                s.chosen.push(dep.clone());
                dfs(s, state, i + 1, profit + dep.profit);
                s.chosen.pop();
                state.release(dep.request_id);
            }
        }
        dfs(s, state, i + 1, profit);
    }

    let mut work = state.clone();
    let mut s = Search { candidates: &candidates, suffix: &suffix, chosen: Vec::new(), best: (0.0, Vec::new()) };
    dfs(&mut s, &mut work, 0, 0.0);
    let (total_profit, deployments) = s.best;
    Ok(SequenceSolution { admitted: deployments.iter().map(|d| d.request_id).collect(), deployments, total_profit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{line_topology, request, topology};

    #[test]
    fn paths_are_lexicographic() {
        let topo = topology(4, 8, 8.0, 1_000, &[(0, 1, 1.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0), (1, 2, 1.0)]);
        let paths = simple_paths(&topo, NodeId(0), NodeId(3));
        let mut sorted = paths.clone();
        sorted.sort();
        assert_eq!(paths, sorted);
        assert_eq!(paths.len(), 4);
    }

    #[test]
    fn placements_count() {
        assert_eq!(ordered_placements(3, 3).len(), 10);
        assert_eq!(ordered_placements(1, 4).len(), 4);
    }

    #[test]
    fn infeasible_budget_gives_none() {
        let state = NetworkState::new(line_topology(2, 64, 64.0, 10_000_000_000));
        let req = request(3, 200.0, 0.2);
        assert_eq!(optimal_deploy(&state, &req, &ModelParams::default(), &OracleLimits::default()).unwrap(), None);
    }

    #[test]
    fn limits_are_enforced() {
        let state = NetworkState::new(line_topology(9, 8, 8.0, 1_000_000_000));
        let req = request(2, 50.0, 10.0);
        assert!(matches!(
            optimal_deploy(&state, &req, &ModelParams::default(), &OracleLimits::default()),
            Err(OracleError::TooLarge { what: "nodes", .. })
        ));
        let state = NetworkState::new(line_topology(3, 8, 8.0, 1_000_000_000));
        let req = request(4, 50.0, 10.0);
        assert!(matches!(
            optimal_deploy(&state, &req, &ModelParams::default(), &OracleLimits::default()),
            Err(OracleError::TooLarge { what: "vnfs", .. })
        ));
        let reqs = vec![request(1, 50.0, 10.0); 5];
        assert!(matches!(
            optimal_sequence(&state, &reqs, &ModelParams::default(), &OracleLimits::default()),
            Err(OracleError::TooLarge { what: "batch", .. })
        ));
    }

    #[test]
    fn empty_batch() {
        let state = NetworkState::new(line_topology(3, 8, 8.0, 1_000_000_000));
        let sol = optimal_sequence(&state, &[], &ModelParams::default(), &OracleLimits::default()).unwrap();
        assert!(sol.admitted.is_empty());
        assert_eq!(sol.total_profit, 0.0);
    }
}
