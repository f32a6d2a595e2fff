//! Closed-form processing and communication latency.

use crate::error::ModelError;
use crate::model::{Deployment, SfcRequest, Topology, VnfDescriptor, VnfKind};
use crate::params::ModelParams;

fn layer1_polynomial(mcs_index: u32, p: &ModelParams) -> f64 {
    let m = mcs_index as f64;
    p.a[0] + p.a[1] * m + p.a[2] * m * m
}

/// Aggregate computational demand of a chain: the Layer-1 RB/MCS term plus
/// the rate-proportional term of the upper layers.
pub fn compute_demand(req: &SfcRequest, p: &ModelParams) -> f64 {
    p.theta1 * req.num_rbs as f64 * layer1_polynomial(req.mcs_index, p) + p.theta2 * req.data_rate
}

fn check_cores(cores: u32) -> Result<(), ModelError> {
    if cores == 0 {
        Err(ModelError::InvalidAllocation("a VNF needs at least one core".into()))
    } else {
        Ok(())
    }
}

/// Layer-1 RAN processing time in ms. Quadratic in the allocated frequency.
pub fn layer1_latency(num_rbs: u32, mcs_index: u32, cores: u32, p: &ModelParams) -> Result<f64, ModelError> {
    check_cores(cores)?;
    let freq = p.frequency(cores);
    Ok(num_rbs as f64 * layer1_polynomial(mcs_index, p) / (freq * freq))
}

/// Processing time in ms of a rate-driven VNF: `rho * rate / freq`.
pub fn generic_vnf_latency(rho: f64, data_rate: f64, cores: u32, p: &ModelParams) -> Result<f64, ModelError> {
    check_cores(cores)?;
    if !(rho > 0.0) {
        return Err(ModelError::InvalidAllocation(format!("rho must be positive, got {rho}")));
    }
    Ok(rho * data_rate / p.frequency(cores))
}

/// Latency of one VNF of `req` when given `cores` cores.
pub fn vnf_latency(vnf: &VnfDescriptor, req: &SfcRequest, cores: u32, p: &ModelParams) -> Result<f64, ModelError> {
    match vnf.kind {
        VnfKind::Layer1Ran => layer1_latency(req.num_rbs, req.mcs_index, cores, p),
        VnfKind::Generic => generic_vnf_latency(vnf.rho, req.data_rate, cores, p),
    }
}

/// Total processing latency of a chain for a per-VNF core vector.
///
/// Terms are summed in chain order starting from zero; the allocator relies on
/// this order to reproduce the value bit for bit.
pub fn chain_processing_latency(req: &SfcRequest, cores: &[u32], p: &ModelParams) -> Result<f64, ModelError> {
    if cores.len() != req.vnfs.len() {
        return Err(ModelError::InvalidAllocation(format!(
            "{} core counts for a chain of {} VNFs",
            cores.len(),
            req.vnfs.len()
        )));
    }
    let mut total = 0.0;
    for (vnf, &c) in req.vnfs.iter().zip(cores) {
        total += vnf_latency(vnf, req, c, p)?;
    }
    Ok(total)
}

pub fn processing_latency(dep: &Deployment, req: &SfcRequest, p: &ModelParams) -> Result<f64, ModelError> {
    chain_processing_latency(req, &dep.vnf_cores, p)
}

/// Transmission time of one packet over a hop carrying `bw_bps`.
pub fn transmission_latency(packet_bits: f64, bw_bps: u64) -> Result<f64, ModelError> {
    if bw_bps == 0 {
        return Err(ModelError::InvalidAllocation("zero bandwidth on a traversed link".into()));
    }
    Ok(packet_bits / bw_bps as f64 * 1e3)
}

/// Communication latency in ms of a deployed chain.
///
/// Every traversed physical hop contributes its propagation delay plus one
/// packet transmission time at the virtual link's bandwidth. Virtual links
/// between co-located VNFs have empty paths and contribute nothing.
pub fn communication_latency(
    dep: &Deployment,
    req: &SfcRequest,
    topo: &Topology,
    p: &ModelParams,
) -> Result<f64, ModelError> {
    if dep.link_paths.len() != dep.link_bw.len() {
        return Err(ModelError::InvalidAllocation("link_paths and link_bw differ in length".into()));
    }
    let mut total = 0.0;
    for (path, &bw) in dep.link_paths.iter().zip(&dep.link_bw) {
        if path.is_empty() {
            continue;
        }
        let trans = transmission_latency(req.packet_size, bw)?;
        for &l in path {
            let link = topo.link(l).ok_or_else(|| ModelError::InvalidAllocation(format!("unknown link {l}")))?;
            total += link.length / p.prop_speed + trans;
        }
    }
    Ok(total)
}

/// Communication latency of a chain routed along `path_links` with every
/// virtual link allocated `bw_bps`. With order-preserving placement on a simple
/// path each hop is crossed exactly once, so this is independent of where the
/// VNFs sit on the path.
pub fn path_communication_latency(
    path_links: &[crate::model::LinkId],
    packet_bits: f64,
    bw_bps: u64,
    topo: &Topology,
    p: &ModelParams,
) -> Result<f64, ModelError> {
    if path_links.is_empty() {
        return Ok(0.0);
    }
    let trans = transmission_latency(packet_bits, bw_bps)?;
    let mut total = 0.0;
    for &l in path_links {
        let link = topo.link(l).ok_or_else(|| ModelError::InvalidAllocation(format!("unknown link {l}")))?;
        total += link.length / p.prop_speed + trans;
    }
    Ok(total)
}

/// End-to-end latency: processing plus communication.
pub fn end_to_end_latency(
    dep: &Deployment,
    req: &SfcRequest,
    topo: &Topology,
    p: &ModelParams,
) -> Result<f64, ModelError> {
    Ok(processing_latency(dep, req, p)? + communication_latency(dep, req, topo, p)?)
}
