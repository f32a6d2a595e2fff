//! Small constructors for hand-built networks and requests, used by the
//! examples and tests.

use crate::model::{EdgeNode, NodeId, PhysLink, SfcRequest, Topology, VnfDescriptor};

/// Uniform node with `cpu` cores and `mem` GB.
pub fn node(id: usize, cpu: u32, mem: f64) -> EdgeNode {
    EdgeNode { id: NodeId(id), cpu_capacity: cpu, mem_capacity: mem }
}

pub fn link(a: usize, b: usize, bw_bps: u64, length_km: f64) -> PhysLink {
    PhysLink { endpoints: (NodeId(a), NodeId(b)), bandwidth_capacity: bw_bps, length: length_km }
}

/// Builds a topology from `(a, b, length_km)` triples with uniform capacities.
///
/// Panics if the result is not a valid topology.
pub fn topology(n: usize, cpu: u32, mem: f64, bw_bps: u64, edges: &[(usize, usize, f64)]) -> Topology {
    let nodes = (0..n).map(|i| node(i, cpu, mem)).collect();
    let links = edges.iter().map(|&(a, b, len)| link(a, b, bw_bps, len)).collect();
    Topology::new(nodes, links).expect("valid hand-built topology")
}

/// A path graph `0 - 1 - ... - (n-1)` with unit-length links.
pub fn line_topology(n: usize, cpu: u32, mem: f64, bw_bps: u64) -> Topology {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1.0)).collect();
    topology(n, cpu, mem, bw_bps, &edges)
}

/// A request from node 0 to node 1 with a Layer-1 VNF followed by
/// `chain_len - 1` generic VNFs (rho 0.08, 1 GB each).
pub fn request(chain_len: usize, data_rate: f64, latency_bound: f64) -> SfcRequest {
    let mut vnfs = vec![VnfDescriptor::layer1(1.0)];
    vnfs.extend((1..chain_len).map(|_| VnfDescriptor::generic(0.08, 1.0)));
    SfcRequest {
        id: 0,
        source: NodeId(0),
        dest: NodeId(1),
        vnfs,
        data_rate,
        latency_bound,
        num_rbs: 50,
        mcs_index: 10,
        packet_size: 12_000.0,
        arrival: 0.0,
        lifetime: 100.0,
    }
}
