//! Shortest-path heuristic with latency equalization (SPH-LE), the baseline.
//!
//! Routes on the minimum-hop path regardless of load, hands every VNF an equal
//! share of the processing budget, and gives each VNF the fewest cores that
//! meet its share. VNF `i` goes to path node `i` (the last node takes any
//! overflow), so placement is round-robin in path order without wrapping.

use crate::allocator::bandwidth_assignment;
use crate::detsfcd::{assemble_deployment, RejectReason, Rejection};
use crate::graph::min_hop_path;
use crate::latency::{path_communication_latency, vnf_latency};
use crate::model::{Deployment, SfcRequest};
use crate::params::ModelParams;
use crate::state::NetworkState;
use crate::validate::{validate_deployment_with, LatencyPolicy};

/// Fewest cores per VNF meeting a per-VNF latency target of `target` ms.
/// `None` if some VNF misses the target even at the core limit.
pub fn equalized_cores(req: &SfcRequest, target: f64, p: &ModelParams) -> Option<Vec<u32>> {
    if !(target > 0.0) {
        return None;
    }
    req.vnfs
        .iter()
        .map(|v| (1..=p.max_cores_per_vnf).find(|&c| vnf_latency(v, req, c, p).map(|l| l <= target).unwrap_or(false)))
        .collect()
}

/// Round-robin positions: VNF `i` on path node `min(i, len - 1)`.
pub fn round_robin_positions(chain: usize, path_len: usize) -> Vec<usize> {
    (0..chain).map(|i| i.min(path_len - 1)).collect()
}

/// Plans an SPH-LE deployment without committing it.
///
/// Only the upper latency bound is enforced; the equalized allocation can land
/// anywhere below it.
pub fn plan_sphle(state: &NetworkState, req: &SfcRequest, p: &ModelParams) -> Result<Deployment, Rejection> {
    req.validate_in(state.topology()).map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    let path = min_hop_path(state.topology(), req.source, req.dest)
        .ok_or_else(|| Rejection::new(RejectReason::NoPath, "destination unreachable"))?;
    let bw = bandwidth_assignment(req, p);
    let comm = path_communication_latency(&path.links, req.packet_size, bw, state.topology(), p)
        .map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    let target = (req.latency_bound - comm) / req.vnfs.len() as f64;
    let cores = equalized_cores(req, target, p).ok_or_else(|| {
        Rejection::new(RejectReason::NoAllocation, format!("per-VNF target {target:.4} ms is out of reach"))
    })?;
    let positions = round_robin_positions(req.vnfs.len(), path.nodes.len());
    let dep = assemble_deployment(state, req, &path, &positions, &cores, p)
        .map_err(|e| Rejection::new(RejectReason::InvalidRequest, e.to_string()))?;
    validate_deployment_with(state, &dep, req, p, LatencyPolicy::UpperOnly)
        .map_err(|v| Rejection::from_violations(&v))?;
    Ok(dep)
}

/// Deploys `req` with SPH-LE, committing on success. On rejection `state` is
/// untouched.
pub fn deploy_sphle(state: &mut NetworkState, req: &SfcRequest, p: &ModelParams) -> Result<Deployment, Rejection> {
    let dep = plan_sphle(state, req, p)?;
    state.commit(dep.clone()).map_err(|v| Rejection::from_violations(&v))?;
    Ok(dep)
}
