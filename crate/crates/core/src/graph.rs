//! Load-aware path selection.
//!
//! Every node and link is weighted by the reciprocal of its remaining
//! resource rate, so an idle node weighs 2 (CPU + memory) and an idle link 1,
//! while nearly exhausted elements become very expensive. The extended
//! Dijkstra search then minimises the sum of link weights *and* the weights of
//! every node on the path, endpoints included.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::Arc;

use crate::model::{LinkId, NodeId, Topology};
use crate::state::NetworkState;

/// Deployment-cost snapshot of a [`NetworkState`].
///
/// Exhausted elements carry `f64::INFINITY` and are never traversed.
#[derive(Debug, Clone)]
pub struct WeightedView {
    pub node_weight: Vec<f64>,
    pub edge_weight: Vec<f64>,
    topology: Arc<Topology>,
}

impl WeightedView {
    /// A view with explicit weights, mostly useful for tests.
    pub fn from_weights(topology: Arc<Topology>, node_weight: Vec<f64>, edge_weight: Vec<f64>) -> Self {
        assert_eq!(node_weight.len(), topology.node_count());
        assert_eq!(edge_weight.len(), topology.links().len());
        WeightedView { node_weight, edge_weight, topology }
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// Recomputes the weight of a node walk, summing from the first node
    /// outwards. Returns `None` if the walk is not a path of the topology.
    pub fn walk_weight(&self, nodes: &[NodeId]) -> Option<f64> {
        let first = nodes.first()?;
        let mut w = self.node_weight[first.0];
        for pair in nodes.windows(2) {
            let l = self.topology.link_between(pair[0], pair[1])?;
            w = w + self.edge_weight[l.0] + self.node_weight[pair[1].0];
        }
        Some(w)
    }
}

fn reciprocal(rate: f64) -> f64 {
    if rate > 0.0 {
        1.0 / rate
    } else {
        f64::INFINITY
    }
}

/// Node weights `1/r_cpu + 1/r_mem` and link weights `1/r_bw` from the
/// current remaining rates.
pub fn deployment_costs(state: &NetworkState) -> WeightedView {
    let topo = state.shared_topology();
    let node_weight =
        topo.nodes().iter().map(|n| reciprocal(state.cpu_rate(n.id)) + reciprocal(state.mem_rate(n.id))).collect();
    let edge_weight = (0..topo.links().len()).map(|i| reciprocal(state.bw_rate(LinkId(i)))).collect();
    WeightedView { node_weight, edge_weight, topology: topo }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub nodes: Vec<NodeId>,
    pub links: Vec<LinkId>,
    /// Sum of the weights of all nodes on the path plus all traversed links.
    pub weight: f64,
}

impl PathResult {
    pub fn hops(&self) -> usize {
        self.links.len()
    }
}

#[derive(Debug, Clone)]
struct Label {
    weight: f64,
    nodes: Vec<NodeId>,
}

impl Label {
    /// Weight, then hop count, then lexicographic node sequence.
    fn rank(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.nodes.len().cmp(&other.nodes.len()))
            .then_with(|| self.nodes.cmp(&other.nodes))
    }
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.rank(other) == Ordering::Equal
    }
}
impl Eq for Label {}
impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Label {
    // Reversed so that BinaryHeap pops the best label first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.rank(self)
    }
}

fn label_search(
    topo: &Topology,
    source: NodeId,
    dest: NodeId,
    node_w: impl Fn(NodeId) -> f64,
    edge_w: impl Fn(LinkId) -> f64,
) -> Option<PathResult> {
    if !topo.contains(source) || !topo.contains(dest) {
        return None;
    }
    let start = node_w(source);
    if !start.is_finite() {
        return None;
    }
    let mut settled = vec![false; topo.node_count()];
    let mut heap = BinaryHeap::new();
    heap.push(Label { weight: start, nodes: vec![source] });
    while let Some(label) = heap.pop() {
        let at = *label.nodes.last().expect("labels are never empty");
        if settled[at.0] {
            continue;
        }
        settled[at.0] = true;
        if at == dest {
            let links = topo.links_along(&label.nodes).expect("labels follow topology links");
            return Some(PathResult { nodes: label.nodes, links, weight: label.weight });
        }
        for &(next, link) in topo.neighbors(at) {
            if settled[next.0] {
                continue;
            }
            let ew = edge_w(link);
            let nw = node_w(next);
            if !ew.is_finite() || !nw.is_finite() {
                continue;
            }
            let mut nodes = Vec::with_capacity(label.nodes.len() + 1);
            nodes.extend_from_slice(&label.nodes);
            nodes.push(next);
            heap.push(Label { weight: label.weight + ew + nw, nodes });
        }
    }
    None
}

/// Least-deployment-cost path from `source` to `dest`.
///
/// Ties on weight go to the path with fewer hops, then to the
/// lexicographically smallest node sequence. `None` when no path of finite
/// weight exists.
pub fn extended_dijkstra(view: &WeightedView, source: NodeId, dest: NodeId) -> Option<PathResult> {
    label_search(&view.topology, source, dest, |n| view.node_weight[n.0], |l| view.edge_weight[l.0])
}

/// Minimum-hop path, ignoring load entirely. Ties go to the lexicographically
/// smallest node sequence. The reported weight is the hop count.
pub fn min_hop_path(topo: &Topology, source: NodeId, dest: NodeId) -> Option<PathResult> {
    label_search(topo, source, dest, |_| 0.0, |_| 1.0)
}
