//! Feasibility check of a deployment against the network state and the
//! request's latency requirement.

use serde::Serialize;

use crate::latency::end_to_end_latency;
use crate::model::{Deployment, LinkId, NodeId, SfcRequest};
use crate::params::ModelParams;
use crate::state::NetworkState;

/// Relative slack applied to latency comparisons to absorb summation order.
pub const LATENCY_TOLERANCE: f64 = 1e-9;

/// Which side of the latency window is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LatencyPolicy {
    /// `bound - band <= latency <= bound`.
    Band,
    /// `latency <= bound` only.
    UpperOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Shape mismatch between the deployment vectors and the chain.
    Shape {
        reason: String,
    },
    /// A VNF is not placed on exactly one known node.
    Placement {
        vnf: usize,
        reason: String,
    },
    InvalidAllocation {
        vnf: usize,
        reason: String,
    },
    CpuCapacity {
        node: NodeId,
        demand: u32,
        residual: u32,
    },
    MemCapacity {
        node: NodeId,
        demand_gb: f64,
        residual_gb: f64,
    },
    Bandwidth {
        link: LinkId,
        demand: u64,
        residual: u64,
    },
    /// Virtual link paths do not chain source -> VNFs -> destination.
    Routing {
        virtual_link: usize,
        reason: String,
    },
    LatencyAboveBound {
        latency: f64,
        bound: f64,
    },
    LatencyBelowBand {
        latency: f64,
        lower: f64,
    },
    /// The recorded latency disagrees with the recomputed one.
    LatencyMismatch {
        recorded: f64,
        computed: f64,
    },
    DuplicateRequest {
        request_id: u64,
    },
}

/// True when `latency` lies inside the admission window of `bound`.
pub fn latency_admissible(latency: f64, bound: f64, band: f64, policy: LatencyPolicy) -> bool {
    let tol = LATENCY_TOLERANCE * bound;
    let upper_ok = latency <= bound + tol;
    match policy {
        LatencyPolicy::UpperOnly => upper_ok,
        LatencyPolicy::Band => upper_ok && latency >= bound - band - tol,
    }
}

/// Checks `dep` against `state` enforcing the full latency band.
pub fn validate_deployment(
    state: &NetworkState,
    dep: &Deployment,
    req: &SfcRequest,
    p: &ModelParams,
) -> Result<(), Vec<Violation>> {
    validate_deployment_with(state, dep, req, p, LatencyPolicy::Band)
}

/// Checks `dep` against `state`: placement, residual CPU, memory and
/// bandwidth, head-to-tail routing through every VNF node in order, and the
/// latency window selected by `policy`. Never panics.
pub fn validate_deployment_with(
    state: &NetworkState,
    dep: &Deployment,
    req: &SfcRequest,
    p: &ModelParams,
    policy: LatencyPolicy,
) -> Result<(), Vec<Violation>> {
    let topo = state.topology();
    let chain = req.vnfs.len();
    let mut out = Vec::new();

    if dep.request_id != req.id {
        out.push(Violation::Shape {
            reason: format!("deployment for {} checked against request {}", dep.request_id, req.id),
        });
    }
    if dep.vnf_nodes.len() != chain || dep.vnf_cores.len() != chain || dep.vnf_mem.len() != chain {
        out.push(Violation::Placement {
            vnf: dep.vnf_nodes.len().min(dep.vnf_cores.len()).min(dep.vnf_mem.len()),
            reason: format!("expected {chain} entries per VNF vector"),
        });
        return Err(out);
    }
    if dep.link_paths.len() != chain + 1 || dep.link_bw.len() != chain + 1 {
        out.push(Violation::Shape { reason: format!("expected {} virtual links", chain + 1) });
        return Err(out);
    }
    for (i, &n) in dep.vnf_nodes.iter().enumerate() {
        if !topo.contains(n) {
            out.push(Violation::Placement { vnf: i, reason: format!("unknown node {n}") });
        }
        if dep.vnf_cores[i] == 0 {
            out.push(Violation::InvalidAllocation { vnf: i, reason: "zero cores".into() });
        } else if dep.vnf_cores[i] > p.max_cores_per_vnf {
            out.push(Violation::InvalidAllocation {
                vnf: i,
                reason: format!("{} cores exceed the per-VNF limit {}", dep.vnf_cores[i], p.max_cores_per_vnf),
            });
        }
        if (dep.vnf_mem[i] - req.vnfs[i].mem_demand).abs() > 1e-12 {
            out.push(Violation::InvalidAllocation { vnf: i, reason: "memory differs from the VNF demand".into() });
        }
    }
    if !topo.contains(req.source) || !topo.contains(req.dest) {
        out.push(Violation::Routing { virtual_link: 0, reason: "request endpoint outside topology".into() });
    }
    if !out.is_empty() {
        return Err(out);
    }

    // Head-to-tail routing: virtual link i walks from waypoint i to waypoint i+1.
    let mut waypoints = Vec::with_capacity(chain + 2);
    waypoints.push(req.source);
    waypoints.extend(dep.vnf_nodes.iter().copied());
    waypoints.push(req.dest);
    for (i, path) in dep.link_paths.iter().enumerate() {
        let (from, to) = (waypoints[i], waypoints[i + 1]);
        let mut at = from;
        let mut broken = false;
        for &l in path {
            match topo.link(l).and_then(|link| link.other(at)) {
                Some(next) => at = next,
                None => {
                    out.push(Violation::Routing { virtual_link: i, reason: format!("link {l} does not leave {at}") });
                    broken = true;
                    break;
                }
            }
        }
        if !broken && at != to {
            out.push(Violation::Routing {
                virtual_link: i,
                reason: format!("walk from {from} ends at {at}, not {to}"),
            });
        }
        if !path.is_empty() && dep.link_bw[i] == 0 {
            out.push(Violation::InvalidAllocation { vnf: i, reason: format!("virtual link {i} has no bandwidth") });
        }
    }
    if !out.is_empty() {
        return Err(out);
    }

    out.extend(state.capacity_violations(dep));

    match end_to_end_latency(dep, req, topo, p) {
        Ok(latency) => {
            let bound = req.latency_bound;
            let band = p.band_for(bound);
            if !latency_admissible(latency, bound, band, LatencyPolicy::UpperOnly) {
                out.push(Violation::LatencyAboveBound { latency, bound });
            } else if !latency_admissible(latency, bound, band, policy) {
                out.push(Violation::LatencyBelowBand { latency, lower: bound - band });
            }
            if (dep.achieved_latency - latency).abs() > LATENCY_TOLERANCE * bound {
                out.push(Violation::LatencyMismatch { recorded: dep.achieved_latency, computed: latency });
            }
        }
        Err(e) => out.push(Violation::InvalidAllocation { vnf: 0, reason: e.to_string() }),
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
