//! Deterministic SFC deployment: weight the network by remaining resources,
//! route along the least-cost path, pick the cheapest core allocation whose
//! latency lands just under the bound, and spread the VNFs over the path so
//! that CPU load stays balanced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::accounting::settle;
use crate::allocator::{bandwidth_assignment, enumerate_options, select_min_cost, AllocationOption, ProcessingWindow};
use crate::graph::{deployment_costs, extended_dijkstra, PathResult};
use crate::latency::{end_to_end_latency, path_communication_latency};
use crate::model::{Deployment, NodeId, SfcRequest};
use crate::params::ModelParams;
use crate::state::NetworkState;
use crate::validate::{validate_deployment_with, LatencyPolicy, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    NoPath,
    NoAllocation,
    InsufficientResources,
    /// The request itself is malformed or references unknown nodes.
    InvalidRequest,
}

impl RejectReason {
    pub const ALL: [RejectReason; 4] = [
        RejectReason::NoPath,
        RejectReason::NoAllocation,
        RejectReason::InsufficientResources,
        RejectReason::InvalidRequest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::NoPath => "no_path",
            RejectReason::NoAllocation => "no_allocation",
            RejectReason::InsufficientResources => "insufficient_resources",
            RejectReason::InvalidRequest => "invalid_request",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejection {
    pub reason: RejectReason,
    pub detail: String,
}

impl Rejection {
    pub fn new(reason: RejectReason, detail: impl Into<String>) -> Self {
        Rejection { reason, detail: detail.into() }
    }

    pub(crate) fn from_violations(violations: &[Violation]) -> Self {
        let capacity = violations.iter().any(|v| {
            matches!(v, Violation::CpuCapacity { .. } | Violation::MemCapacity { .. } | Violation::Bandwidth { .. })
        });
        let reason = if capacity { RejectReason::InsufficientResources } else { RejectReason::NoAllocation };
        Rejection::new(reason, format!("{violations:?}"))
    }
}

/// Turns a path and per-VNF positions on it into a [`Deployment`].
///
/// `positions[i]` is the index into `path.nodes` hosting VNF `i`; positions
/// must be non-decreasing. Accounting and latency fields are filled in.
pub fn assemble_deployment(
    state: &NetworkState,
    req: &SfcRequest,
    path: &PathResult,
    positions: &[usize],
    cores: &[u32],
    p: &ModelParams,
) -> Result<Deployment, crate::error::ModelError> {
    debug_assert!(positions.windows(2).all(|w| w[0] <= w[1]));
    let bw = bandwidth_assignment(req, p);
    let last = path.nodes.len() - 1;
    let mut cuts = Vec::with_capacity(positions.len() + 2);
    cuts.push(0);
    cuts.extend_from_slice(positions);
    cuts.push(last);
    let link_paths: Vec<_> = cuts.windows(2).map(|w| path.links[w[0]..w[1]].to_vec()).collect();
    let link_bw = link_paths.iter().map(|l| if l.is_empty() { 0 } else { bw }).collect();
    let mut dep = Deployment {
        request_id: req.id,
        vnf_nodes: positions.iter().map(|&i| path.nodes[i]).collect(),
        vnf_cores: cores.to_vec(),
        vnf_mem: req.vnfs.iter().map(|v| v.mem_demand).collect(),
        link_paths,
        link_bw,
        achieved_latency: 0.0,
        cost: 0.0,
        revenue: 0.0,
        profit: 0.0,
    };
    dep.achieved_latency = end_to_end_latency(&dep, req, state.topology(), p)?;
    settle(&mut dep, req, p)?;
    Ok(dep)
}

/// Calls `visit` with every non-decreasing position vector of length `chain`
/// over `len` path nodes, in lexicographic order.
pub(crate) fn for_each_ordered_assignment(chain: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if chain == 0 || len == 0 {
        return;
    }
    let mut pos = vec![0usize; chain];
    loop {
        visit(&pos);
        let mut i = chain;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pos[i] + 1 < len {
                pos[i] += 1;
                for j in i + 1..chain {
                    pos[j] = pos[i];
                }
                break;
            }
        }
    }
}

/// Places the chain on `path` keeping VNF order along the path direction.
///
/// Among all order-preserving placements the one whose ascending vector of
/// post-placement CPU remaining rates (over the path nodes) is
/// lexicographically largest wins: the most loaded node is left as light as
/// possible, then the second most loaded, and so on. Remaining ties go to the
/// placement that is lexicographically smallest in path positions.
///
/// Returns path positions, one per VNF.
pub fn embed_positions(path: &PathResult, alloc: &AllocationOption, state: &NetworkState) -> Vec<usize> {
    let len = path.nodes.len();
    let caps: Vec<f64> = path.nodes.iter().map(|&n| state.topology().nodes()[n.0].cpu_capacity as f64).collect();
    let residual: Vec<i64> = path.nodes.iter().map(|&n| state.residual_cpu(n) as i64).collect();

    let mut best: Option<(Vec<f64>, Vec<usize>)> = None;
    let mut used = vec![0i64; len];
    let mut rates = vec![0.0; len];
    for_each_ordered_assignment(alloc.cores.len(), len, |pos| {
        used.iter_mut().for_each(|u| *u = 0);
        for (&j, &c) in pos.iter().zip(&alloc.cores) {
            used[j] += c as i64;
        }
        for j in 0..len {
            rates[j] = (residual[j] - used[j]) as f64 / caps[j];
        }
        rates.sort_by(|a, b| a.total_cmp(b));
        let better = match &best {
            None => true,
            Some((best_rates, _)) => {
                rates.iter().zip(best_rates).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne())
                    == Some(std::cmp::Ordering::Greater)
            }
        };
        if better {
            best = Some((rates.clone(), pos.to_vec()));
        }
    });
    best.map(|(_, pos)| pos).unwrap_or_default()
}

/// Node assignment of [`embed_positions`].
pub fn embed_load_balanced(path: &PathResult, alloc: &AllocationOption, state: &NetworkState) -> Vec<NodeId> {
    embed_positions(path, alloc, state).into_iter().map(|i| path.nodes[i]).collect()
}

/// Plans a deployment for `req` on the current state without committing it.
pub fn plan(state: &NetworkState, req: &SfcRequest, p: &ModelParams) -> Result<Deployment, Rejection> {
    req.validate_in(state.topology()).map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    let view = deployment_costs(state);
    let path = extended_dijkstra(&view, req.source, req.dest)
        .ok_or_else(|| Rejection::new(RejectReason::NoPath, format!("{} unreachable from {}", req.dest, req.source)))?;

    let bw = bandwidth_assignment(req, p);
    let comm = path_communication_latency(&path.links, req.packet_size, bw, state.topology(), p)
        .map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    let window = ProcessingWindow { budget: req.latency_bound - comm, band: p.band_for(req.latency_bound) };
    let options =
        enumerate_options(req, window, p).map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    let alloc = select_min_cost(&options).ok_or_else(|| {
        Rejection::new(
            RejectReason::NoAllocation,
            format!("no core vector within [{:.4}, {:.4}] ms", window.lower(), window.budget),
        )
    })?;

    let positions = embed_positions(&path, &alloc, state);
    let dep = assemble_deployment(state, req, &path, &positions, &alloc.cores, p)
        .map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    validate_deployment_with(state, &dep, req, p, LatencyPolicy::Band).map_err(|v| Rejection::from_violations(&v))?;
    Ok(dep)
}

/// Deploys `req`, committing on success. On rejection `state` is untouched.
pub fn deploy(state: &mut NetworkState, req: &SfcRequest, p: &ModelParams) -> Result<Deployment, Rejection> {
    let dep = plan(state, req, p)?;
    state.commit(dep.clone()).map_err(|v| Rejection::from_violations(&v))?;
    Ok(dep)
}

/// Tears down an active deployment. Unknown ids are a logged no-op.
pub fn release(state: &mut NetworkState, request_id: u64) -> Option<Deployment> {
    state.release(request_id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{line_topology, request, topology};
    use crate::model::LinkId;
    use crate::validate::validate_deployment;

    fn path_of(state: &NetworkState, nodes: &[usize]) -> PathResult {
        let nodes: Vec<NodeId> = nodes.iter().map(|&n| NodeId(n)).collect();
        let links = state.topology().links_along(&nodes).unwrap();
        PathResult { nodes, links, weight: 0.0 }
    }

    fn option(cores: Vec<u32>) -> AllocationOption {
        AllocationOption { cores, latency: 0.0, cost: 0.0 }
    }

    fn load(state: &mut NetworkState, id: u64, node: usize, cores: u32) {
        let other = if node == 0 { 1 } else { node - 1 };
        let link = state.topology().link_between(NodeId(node), NodeId(other)).unwrap();
        state
            .commit(Deployment {
                request_id: id,
                vnf_nodes: vec![NodeId(node)],
                vnf_cores: vec![cores],
                vnf_mem: vec![0.0],
                link_paths: vec![vec![link], vec![link]],
                link_bw: vec![1, 1],
                achieved_latency: 0.0,
                cost: 0.0,
                revenue: 0.0,
                profit: 0.0,
            })
            .unwrap();
    }

    #[test]
    fn assignment_enumeration_counts() {
        let mut n = 0;
        for_each_ordered_assignment(4, 2, |_| n += 1);
        assert_eq!(n, 5);
        n = 0;
        for_each_ordered_assignment(3, 4, |p| {
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            n += 1
        });
        assert_eq!(n, 20); // C(6, 3)
    }

    #[test]
    fn single_vnf_single_node() {
        let state = NetworkState::new(line_topology(2, 16, 16.0, 1_000_000_000));
        let path = path_of(&state, &[1]);
        assert_eq!(embed_load_balanced(&path, &option(vec![3]), &state), vec![NodeId(1)]);
    }

    #[test]
    fn heavy_then_light_puts_both_on_light() {
        let mut state = NetworkState::new(line_topology(2, 10, 16.0, 1_000_000_000));
        load(&mut state, 100, 0, 9); // node 0 at 10% remaining
        let path = path_of(&state, &[0, 1]);
        let nodes = embed_load_balanced(&path, &option(vec![2, 2]), &state);
        assert_eq!(nodes, vec![NodeId(1), NodeId(1)]);
    }

    #[test]
    fn four_vnfs_split_evenly_on_equal_nodes() {
        let state = NetworkState::new(line_topology(2, 16, 16.0, 1_000_000_000));
        let path = path_of(&state, &[0, 1]);
        let nodes = embed_load_balanced(&path, &option(vec![2, 2, 2, 2]), &state);
        assert_eq!(nodes, vec![NodeId(0), NodeId(0), NodeId(1), NodeId(1)]);
    }

    #[test]
    fn deploy_on_idle_network_validates() {
        let topo = line_topology(3, 64, 64.0, 10_000_000_000);
        let mut state = NetworkState::new(topo);
        let mut req = request(4, 100.0, 15.0);
        req.dest = NodeId(2);
        let before = state.clone();
        let dep = deploy(&mut state, &req, &ModelParams::default()).unwrap();
        validate_deployment(&before, &dep, &req, &ModelParams::default()).unwrap();
        assert!(state.is_active(req.id));
        assert_eq!(release(&mut state, req.id), Some(dep));
        assert_eq!(state, before);
        assert_eq!(release(&mut state, req.id), None);
    }

    #[test]
    fn unreachable_destination() {
        // Node 2 is only reachable over an exhausted link.
        let topo = topology(3, 16, 16.0, 1_000_000, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let mut state = NetworkState::new(topo);
        state
            .commit(Deployment {
                request_id: 9,
                vnf_nodes: vec![NodeId(1)],
                vnf_cores: vec![1],
                vnf_mem: vec![0.0],
                link_paths: vec![vec![], vec![LinkId(1)]],
                link_bw: vec![0, 1_000_000],
                achieved_latency: 0.0,
                cost: 0.0,
                revenue: 0.0,
                profit: 0.0,
            })
            .unwrap();
        let mut req = request(1, 10.0, 20.0);
        req.dest = NodeId(2);
        let before = state.clone();
        let err = deploy(&mut state, &req, &ModelParams::default()).unwrap_err();
        assert_eq!(err.reason, RejectReason::NoPath);
        assert_eq!(state, before);
    }

    #[test]
    fn impossible_bound_is_no_allocation() {
        let mut state = NetworkState::new(line_topology(2, 64, 64.0, 10_000_000_000));
        let req = request(4, 200.0, 0.5);
        let before = state.clone();
        let err = deploy(&mut state, &req, &ModelParams::default()).unwrap_err();
        assert_eq!(err.reason, RejectReason::NoAllocation);
        assert_eq!(state, before);
    }

    #[test]
    fn invalid_request_is_rejected_not_panicking() {
        let mut state = NetworkState::new(line_topology(2, 64, 64.0, 10_000_000_000));
        let mut req = request(2, 50.0, 10.0);
        req.dest = NodeId(7);
        assert_eq!(deploy(&mut state, &req, &ModelParams::default()).unwrap_err().reason, RejectReason::InvalidRequest);
    }
}
