//! Domain types: the physical edge network, SFC requests and deployments.
//!
//! Unit conventions used throughout the crate:
//!
//! | quantity          | unit       |
//! |-------------------|------------|
//! | latency           | ms         |
//! | data rate (λ)     | Mbps       |
//! | link bandwidth    | bits/s     |
//! | packet size       | bits       |
//! | memory            | GB         |
//! | CPU               | cores      |
//! | link length       | km         |

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Identifier of an edge node. Nodes of a [`Topology`] are numbered `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

/// Index of a physical link inside [`Topology::links`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Memory is tracked internally in MiB so that allocation and release are exact.
pub(crate) fn gb_to_mib(gb: f64) -> u64 {
    (gb * 1024.0).round() as u64
}

/// Mbps to bits/s, rounded to a whole bit.
pub fn mbps_to_bps(mbps: f64) -> u64 {
    (mbps * 1e6).round() as u64
}

pub fn bps_to_mbps(bps: u64) -> f64 {
    bps as f64 / 1e6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeNode {
    pub id: NodeId,
    pub cpu_capacity: u32,
    /// GB.
    pub mem_capacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysLink {
    pub endpoints: (NodeId, NodeId),
    /// bits/s.
    pub bandwidth_capacity: u64,
    /// km.
    pub length: f64,
}

impl PhysLink {
    /// The endpoint opposite to `node`, if `node` is one of the endpoints.
    pub fn other(&self, node: NodeId) -> Option<NodeId> {
        let (a, b) = self.endpoints;
        if node == a {
            Some(b)
        } else if node == b {
            Some(a)
        } else {
            None
        }
    }
}

/// Undirected physical network. Links are traversable in both directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Topology {
    nodes: Vec<EdgeNode>,
    links: Vec<PhysLink>,
    #[serde(skip)]
    adjacency: Vec<Vec<(NodeId, LinkId)>>,
}

impl Topology {
    /// Builds and validates a topology. Node ids must be exactly `0..nodes.len()`
    /// in order, every link must join two distinct existing nodes, and the graph
    /// must be connected.
    pub fn new(nodes: Vec<EdgeNode>, links: Vec<PhysLink>) -> Result<Self, ModelError> {
        if nodes.is_empty() {
            return Err(ModelError::InvalidTopology("topology has no nodes".into()));
        }
        for (i, node) in nodes.iter().enumerate() {
            if node.id != NodeId(i) {
                return Err(ModelError::InvalidTopology(format!(
                    "node at position {i} has id {}, expected n{i}",
                    node.id
                )));
            }
            if node.cpu_capacity == 0 {
                return Err(ModelError::InvalidTopology(format!("{} has zero CPU capacity", node.id)));
            }
            if !(node.mem_capacity > 0.0 && node.mem_capacity.is_finite()) {
                return Err(ModelError::InvalidTopology(format!("{} has non-positive memory capacity", node.id)));
            }
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut seen = BTreeSet::new();
        for (i, link) in links.iter().enumerate() {
            let (a, b) = link.endpoints;
            if a.0 >= nodes.len() || b.0 >= nodes.len() {
                return Err(ModelError::InvalidTopology(format!("link e{i} references an unknown node")));
            }
            if a == b {
                return Err(ModelError::InvalidTopology(format!("link e{i} is a self-loop on {a}")));
            }
            if link.bandwidth_capacity == 0 {
                return Err(ModelError::InvalidTopology(format!("link e{i} has zero bandwidth")));
            }
            if !(link.length >= 0.0 && link.length.is_finite()) {
                return Err(ModelError::InvalidTopology(format!("link e{i} has invalid length")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(ModelError::InvalidTopology(format!("link e{i} duplicates {a}-{b}")));
            }
            adjacency[a.0].push((b, LinkId(i)));
            adjacency[b.0].push((a, LinkId(i)));
        }
        for adj in &mut adjacency {
            adj.sort();
        }
        let topo = Topology { nodes, links, adjacency };
        if !topo.is_connected() {
            return Err(ModelError::InvalidTopology("graph is not connected".into()));
        }
        Ok(topo)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(n) = stack.pop() {
            for &(m, _) in &self.adjacency[n] {
                if !seen[m.0] {
                    seen[m.0] = true;
                    stack.push(m.0);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn nodes(&self) -> &[EdgeNode] {
        &self.nodes
    }

    pub fn links(&self) -> &[PhysLink] {
        &self.links
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> Option<&EdgeNode> {
        self.nodes.get(id.0)
    }

    pub fn link(&self, id: LinkId) -> Option<&PhysLink> {
        self.links.get(id.0)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.nodes.len()
    }

    /// Neighbours of `node` with the connecting link, sorted by neighbour id.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, LinkId)] {
        &self.adjacency[node.0]
    }

    /// The link joining `a` and `b`, if any.
    pub fn link_between(&self, a: NodeId, b: NodeId) -> Option<LinkId> {
        self.adjacency.get(a.0)?.iter().find(|(n, _)| *n == b).map(|&(_, l)| l)
    }

    /// Translates a node walk into the links it traverses.
    pub fn links_along(&self, walk: &[NodeId]) -> Result<Vec<LinkId>, ModelError> {
        walk.windows(2)
            .map(|w| {
                self.link_between(w[0], w[1])
                    .ok_or_else(|| ModelError::InvalidTopology(format!("no link between {} and {}", w[0], w[1])))
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for Topology {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            nodes: Vec<EdgeNode>,
            links: Vec<PhysLink>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Topology::new(raw.nodes, raw.links).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VnfKind {
    /// RAN Layer-1 processing; latency follows the RB/MCS polynomial model.
    Layer1Ran,
    /// Any other VNF; latency is linear in the data rate.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VnfDescriptor {
    pub kind: VnfKind,
    /// CPU cycles per information bit. Ignored for [`VnfKind::Layer1Ran`].
    pub rho: f64,
    /// GB.
    pub mem_demand: f64,
}

impl VnfDescriptor {
    pub fn layer1(mem_demand: f64) -> Self {
        VnfDescriptor { kind: VnfKind::Layer1Ran, rho: 0.0, mem_demand }
    }

    pub fn generic(rho: f64, mem_demand: f64) -> Self {
        VnfDescriptor { kind: VnfKind::Generic, rho, mem_demand }
    }
}

/// A service function chain request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfcRequest {
    pub id: u64,
    pub source: NodeId,
    pub dest: NodeId,
    pub vnfs: Vec<VnfDescriptor>,
    /// Mbps.
    pub data_rate: f64,
    /// ms.
    pub latency_bound: f64,
    /// Number of aggregated resource blocks.
    pub num_rbs: u32,
    pub mcs_index: u32,
    /// bits.
    pub packet_size: f64,
    pub arrival: f64,
    pub lifetime: f64,
}

impl SfcRequest {
    pub fn chain_len(&self) -> usize {
        self.vnfs.len()
    }

    /// Checks the request's own invariants.
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: &str| Err(ModelError::InvalidRequest { id: self.id, reason: msg.to_string() });
        if self.vnfs.is_empty() {
            return bad("chain has no VNFs");
        }
        if self.vnfs[0].kind != VnfKind::Layer1Ran {
            return bad("first VNF must be Layer-1 RAN");
        }
        for v in &self.vnfs[1..] {
            if v.kind == VnfKind::Generic && !(v.rho > 0.0 && v.rho.is_finite()) {
                return bad("generic VNF needs rho > 0");
            }
        }
        if self.vnfs.iter().any(|v| !(v.mem_demand >= 0.0 && v.mem_demand.is_finite())) {
            return bad("memory demand must be non-negative");
        }
        if !(self.data_rate > 0.0 && self.data_rate.is_finite()) {
            return bad("data rate must be positive");
        }
        if !(self.latency_bound > 0.0 && self.latency_bound.is_finite()) {
            return bad("latency bound must be positive");
        }
        if !(self.lifetime > 0.0) {
            return bad("lifetime must be positive");
        }
        if !(self.packet_size > 0.0 && self.packet_size.is_finite()) {
            return bad("packet size must be positive");
        }
        if self.source == self.dest {
            return bad("source and destination coincide");
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus endpoint membership in `topo`.
    pub fn validate_in(&self, topo: &Topology) -> Result<(), ModelError> {
        self.validate()?;
        for n in [self.source, self.dest] {
            if !topo.contains(n) {
                return Err(ModelError::InvalidRequest {
                    id: self.id,
                    reason: format!("endpoint {n} is not in the topology"),
                });
            }
        }
        Ok(())
    }
}

/// A complete embedding of one request.
///
/// `link_paths[i]` carries virtual link `i`: link 0 runs from the source to
/// VNF 0, link `i` from VNF `i-1` to VNF `i`, and the last link from the final
/// VNF to the destination. Co-located neighbours have an empty path and a
/// zero bandwidth entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub request_id: u64,
    pub vnf_nodes: Vec<NodeId>,
    pub vnf_cores: Vec<u32>,
    /// GB.
    pub vnf_mem: Vec<f64>,
    pub link_paths: Vec<Vec<LinkId>>,
    /// bits/s.
    pub link_bw: Vec<u64>,
    /// ms.
    pub achieved_latency: f64,
    pub cost: f64,
    pub revenue: f64,
    pub profit: f64,
}

impl Deployment {
    /// Distinct nodes hosting at least one VNF, ascending.
    pub fn hosting_nodes(&self) -> BTreeSet<NodeId> {
        self.vnf_nodes.iter().copied().collect()
    }
}
