//! Reference implementations shared by the integration tests. Everything here
//! is written from the model definitions directly and only uses the crate for
//! its data types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use detsfc::builders::node;
use detsfc::graph::WeightedView;
use detsfc::model::{Deployment, NodeId, PhysLink, SfcRequest, Topology, VnfDescriptor, VnfKind};
use detsfc::{ModelParams, NetworkState};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random connected topology: spanning tree plus `extra` random chords.
pub fn random_topology<R: Rng>(rng: &mut R, n: usize, extra: usize, cpu: u32, mem: f64, bw: u64) -> Topology {
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let mut rest: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|p| !pairs.contains(p)).collect();
    rest.shuffle(rng);
    pairs.extend(rest.into_iter().take(extra));
    let links = pairs
        .into_iter()
        .map(|(a, b)| PhysLink {
            endpoints: (NodeId(a), NodeId(b)),
            bandwidth_capacity: bw,
            length: rng.gen_range(1.0..40.0),
        })
        .collect();
    Topology::new((0..n).map(|i| node(i, cpu, mem)).collect(), links).unwrap()
}

/// Random request between distinct nodes of an `n`-node network.
pub fn random_request<R: Rng>(rng: &mut R, id: u64, n: usize, chain_len: usize) -> SfcRequest {
    let source = rng.gen_range(0..n);
    let dest = (source + rng.gen_range(1..n)) % n;
    let mut vnfs = vec![VnfDescriptor::layer1(rng.gen_range(0.25..2.0))];
    for _ in 1..chain_len {
        vnfs.push(VnfDescriptor::generic(rng.gen_range(0.04..0.16), rng.gen_range(0.25..2.0)));
    }
    SfcRequest {
        id,
        source: NodeId(source),
        dest: NodeId(dest),
        vnfs,
        data_rate: rng.gen_range(20.0..200.0),
        latency_bound: [10.0, 15.0, 20.0][rng.gen_range(0..3)],
        num_rbs: rng.gen_range(50..=100),
        mcs_index: rng.gen_range(5..=20),
        packet_size: 12_000.0,
        arrival: 0.0,
        lifetime: 100.0,
    }
}

/// Every simple path from `s` to `d` (as node lists), by depth-first search.
pub fn all_simple_paths(topo: &Topology, s: NodeId, d: NodeId) -> Vec<Vec<NodeId>> {
    let n = topo.node_count();
    let mut adj = vec![Vec::new(); n];
    for l in topo.links() {
        adj[l.endpoints.0 .0].push(l.endpoints.1 .0);
        adj[l.endpoints.1 .0].push(l.endpoints.0 .0);
    }
    let mut out = Vec::new();
    let mut stack = vec![s.0];
    let mut seen = vec![false; n];
    seen[s.0] = true;
    fn go(adj: &[Vec<usize>], d: usize, stack: &mut Vec<usize>, seen: &mut [bool], out: &mut Vec<Vec<NodeId>>) {
        let at = *stack.last().unwrap();
        if at == d {
            out.push(stack.iter().map(|&i| NodeId(i)).collect());
            return;
        }
        for &next in &adj[at] {
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
                go(adj, d, stack, seen, out);
                stack.pop();
                seen[next] = false;
            }
        }
    }
    go(&adj, d.0, &mut stack, &mut seen, &mut out);
    out
}

/// Node weights of all path nodes plus link weights of all hops, accumulated
/// from the source outwards.
pub fn path_weight(view: &WeightedView, topo: &Topology, path: &[NodeId]) -> f64 {
    let mut w = view.node_weight[path[0].0];
    for pair in path.windows(2) {
        let l = topo.link_between(pair[0], pair[1]).unwrap();
        w = w + view.edge_weight[l.0] + view.node_weight[pair[1].0];
    }
    w
}

/// Minimum finite path weight by exhaustive enumeration.
pub fn brute_force_min_weight(view: &WeightedView, topo: &Topology, s: NodeId, d: NodeId) -> Option<f64> {
    all_simple_paths(topo, s, d)
        .iter()
        .map(|p| path_weight(view, topo, p))
        .filter(|w| w.is_finite())
        .min_by(f64::total_cmp)
}

pub fn vnf_latency_ref(vnf: &VnfDescriptor, req: &SfcRequest, cores: u32, p: &ModelParams) -> f64 {
    let pi = cores as f64 * p.core_freq;
    match vnf.kind {
        VnfKind::Layer1Ran => {
            let m = req.mcs_index as f64;
            req.num_rbs as f64 * (p.a[0] + p.a[1] * m + p.a[2] * m * m) / (pi * pi)
        }
        VnfKind::Generic => vnf.rho * req.data_rate / pi,
    }
}

pub fn processing_ref(req: &SfcRequest, cores: &[u32], p: &ModelParams) -> f64 {
    let mut total = 0.0;
    for (v, &c) in req.vnfs.iter().zip(cores) {
        total += vnf_latency_ref(v, req, c, p);
    }
    total
}

/// Cheapest core vector with processing latency in `[budget - band, budget]`,
/// ties to the lexicographically smallest vector. Found by nested recursion
/// over all vectors.
pub fn brute_force_allocation(req: &SfcRequest, budget: f64, band: f64, p: &ModelParams) -> Option<(Vec<u32>, f64)> {
    fn go(
        req: &SfcRequest,
        budget: f64,
        band: f64,
        p: &ModelParams,
        prefix: &mut Vec<u32>,
        best: &mut Option<(Vec<u32>, f64)>,
    ) {
        if prefix.len() == req.vnfs.len() {
            let lat = processing_ref(req, prefix, p);
            if lat <= budget && lat >= budget - band {
                let cost = p.alpha_cpu * prefix.iter().map(|&c| c as u64).sum::<u64>() as f64;
                let better = match best {
                    None => true,
                    Some((cores, c)) => cost < *c || (cost == *c && prefix < cores),
                };
                if better {
                    *best = Some((prefix.clone(), cost));
                }
            }
            return;
        }
        for c in 1..=p.max_cores_per_vnf {
            prefix.push(c);
            go(req, budget, band, p, prefix, best);
            prefix.pop();
        }
    }
    let mut best = None;
    go(req, budget, band, p, &mut Vec::new(), &mut best);
    best
}

/// Independent feasibility check of `dep` against the residuals of `before`.
/// Returns human-readable violations; empty means feasible.
pub fn evaluate(before: &NetworkState, dep: &Deployment, req: &SfcRequest, p: &ModelParams, band: bool) -> Vec<String> {
    let topo = before.topology();
    let mut out = Vec::new();
    let i_len = req.vnfs.len();
    if dep.vnf_nodes.len() != i_len || dep.vnf_cores.len() != i_len || dep.vnf_mem.len() != i_len {
        return vec!["vector lengths".into()];
    }
    if dep.link_paths.len() != i_len + 1 || dep.link_bw.len() != i_len + 1 {
        return vec!["virtual link count".into()];
    }
    let mut cpu: BTreeMap<usize, u64> = BTreeMap::new();
    let mut mem: BTreeMap<usize, f64> = BTreeMap::new();
    for i in 0..i_len {
        let n = dep.vnf_nodes[i].0;
        if n >= topo.node_count() {
            return vec![format!("vnf {i} on unknown node")];
        }
        let c = dep.vnf_cores[i];
        if c == 0 || c > p.max_cores_per_vnf {
            out.push(format!("vnf {i} has {c} cores"));
        }
        if dep.vnf_mem[i] != req.vnfs[i].mem_demand {
            out.push(format!("vnf {i} memory"));
        }
        *cpu.entry(n).or_default() += c as u64;
        *mem.entry(n).or_default() += dep.vnf_mem[i];
    }
    for (&n, &c) in &cpu {
        if c > before.residual_cpu(NodeId(n)) as u64 {
            out.push(format!("cpu on n{n}"));
        }
    }
    for (&n, &m) in &mem {
        if m > before.residual_mem_gb(NodeId(n)) + 1e-6 {
            out.push(format!("memory on n{n}"));
        }
    }
    let mut stops = vec![req.source];
    stops.extend(dep.vnf_nodes.iter().copied());
    stops.push(req.dest);
    let mut bw: BTreeMap<usize, u64> = BTreeMap::new();
    let mut comm = 0.0;
    for (i, path) in dep.link_paths.iter().enumerate() {
        let mut at = stops[i];
        for l in path {
            let Some(link) = topo.links().get(l.0) else {
                out.push(format!("virtual link {i}: unknown link"));
                return out;
            };
            at = if link.endpoints.0 == at {
                link.endpoints.1
            } else if link.endpoints.1 == at {
                link.endpoints.0
            } else {
                out.push(format!("virtual link {i}: link does not continue the walk"));
                return out;
            };
            *bw.entry(l.0).or_default() += dep.link_bw[i];
            comm += link.length / p.prop_speed + req.packet_size / dep.link_bw[i] as f64 * 1e3;
        }
        if at != stops[i + 1] {
            out.push(format!("virtual link {i} ends at the wrong node"));
        }
    }
    for (&l, &b) in &bw {
        if b > before.residual_bw(detsfc::LinkId(l)) {
            out.push(format!("bandwidth on e{l}"));
        }
    }
    let latency = processing_ref(req, &dep.vnf_cores, p) + comm;
    let tol = 1e-9 * req.latency_bound;
    if latency > req.latency_bound + tol {
        out.push(format!("latency {latency} above {}", req.latency_bound));
    }
    if band && latency < req.latency_bound - p.latency_band * req.latency_bound - tol {
        out.push(format!("latency {latency} below band"));
    }
    if (latency - dep.achieved_latency).abs() > 1e-9 * latency.max(1.0) {
        out.push(format!("recorded latency {} vs {latency}", dep.achieved_latency));
    }
    out
}

/// Relative closeness used for sums that may differ only in association order.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}
