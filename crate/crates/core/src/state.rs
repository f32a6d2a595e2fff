//! Residual resources of the network and the set of active deployments.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::model::{gb_to_mib, Deployment, LinkId, NodeId, Topology};
use crate::validate::Violation;

/// Aggregate resource footprint of one deployment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Footprint {
    pub cpu: BTreeMap<NodeId, u32>,
    /// MiB.
    pub mem: BTreeMap<NodeId, u64>,
    /// bits/s.
    pub bw: BTreeMap<LinkId, u64>,
}

impl Footprint {
    pub fn of(dep: &Deployment) -> Self {
        let mut f = Footprint::default();
        for (i, &n) in dep.vnf_nodes.iter().enumerate() {
            *f.cpu.entry(n).or_default() += dep.vnf_cores.get(i).copied().unwrap_or(0);
            *f.mem.entry(n).or_default() += gb_to_mib(dep.vnf_mem.get(i).copied().unwrap_or(0.0));
        }
        for (path, &bw) in dep.link_paths.iter().zip(&dep.link_bw) {
            for &l in path {
                *f.bw.entry(l).or_default() += bw;
            }
        }
        f
    }
}

/// Mutable view of the network: capacities minus what active deployments hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkState {
    #[serde(skip)]
    topology: Arc<Topology>,
    residual_cpu: Vec<u32>,
    residual_mem: Vec<u64>,
    residual_bw: Vec<u64>,
    active: BTreeMap<u64, Deployment>,
}

impl NetworkState {
    /// A fresh, unloaded network.
    pub fn new(topology: impl Into<Arc<Topology>>) -> Self {
        let topology = topology.into();
        let residual_cpu = topology.nodes().iter().map(|n| n.cpu_capacity).collect();
        let residual_mem = topology.nodes().iter().map(|n| gb_to_mib(n.mem_capacity)).collect();
        let residual_bw = topology.links().iter().map(|l| l.bandwidth_capacity).collect();
        NetworkState { topology, residual_cpu, residual_mem, residual_bw, active: BTreeMap::new() }
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn shared_topology(&self) -> Arc<Topology> {
        Arc::clone(&self.topology)
    }

    pub fn residual_cpu(&self, n: NodeId) -> u32 {
        self.residual_cpu[n.0]
    }

    /// MiB.
    pub fn residual_mem_mib(&self, n: NodeId) -> u64 {
        self.residual_mem[n.0]
    }

    pub fn residual_mem_gb(&self, n: NodeId) -> f64 {
        self.residual_mem[n.0] as f64 / 1024.0
    }

    pub fn residual_bw(&self, l: LinkId) -> u64 {
        self.residual_bw[l.0]
    }

    /// Residual / capacity for CPU, in `[0, 1]`.
    pub fn cpu_rate(&self, n: NodeId) -> f64 {
        self.residual_cpu[n.0] as f64 / self.topology.nodes()[n.0].cpu_capacity as f64
    }

    pub fn mem_rate(&self, n: NodeId) -> f64 {
        self.residual_mem[n.0] as f64 / gb_to_mib(self.topology.nodes()[n.0].mem_capacity) as f64
    }

    pub fn bw_rate(&self, l: LinkId) -> f64 {
        self.residual_bw[l.0] as f64 / self.topology.links()[l.0].bandwidth_capacity as f64
    }

    pub fn active(&self) -> &BTreeMap<u64, Deployment> {
        &self.active
    }

    pub fn is_active(&self, request_id: u64) -> bool {
        self.active.contains_key(&request_id)
    }

    /// Capacity violations `dep` would cause if committed now.
    pub fn capacity_violations(&self, dep: &Deployment) -> Vec<Violation> {
        let fp = Footprint::of(dep);
        let mut out = Vec::new();
        for (&n, &cores) in &fp.cpu {
            if n.0 >= self.residual_cpu.len() {
                continue;
            }
            if cores > self.residual_cpu[n.0] {
                out.push(Violation::CpuCapacity { node: n, demand: cores, residual: self.residual_cpu[n.0] });
            }
        }
        for (&n, &mib) in &fp.mem {
            if n.0 >= self.residual_mem.len() {
                continue;
            }
            if mib > self.residual_mem[n.0] {
                out.push(Violation::MemCapacity {
                    node: n,
                    demand_gb: mib as f64 / 1024.0,
                    residual_gb: self.residual_mem[n.0] as f64 / 1024.0,
                });
            }
        }
        for (&l, &bw) in &fp.bw {
            if l.0 >= self.residual_bw.len() {
                continue;
            }
            if bw > self.residual_bw[l.0] {
                out.push(Violation::Bandwidth { link: l, demand: bw, residual: self.residual_bw[l.0] });
            }
        }
        out
    }

    /// Reserves the resources of `dep`. All-or-nothing: on any capacity
    /// violation nothing is changed and the violations are returned.
    pub fn commit(&mut self, dep: Deployment) -> Result<(), Vec<Violation>> {
        if self.active.contains_key(&dep.request_id) {
            return Err(vec![Violation::DuplicateRequest { request_id: dep.request_id }]);
        }
        let violations = self.capacity_violations(&dep);
        if !violations.is_empty() {
            return Err(violations);
        }
        let fp = Footprint::of(&dep);
        for (n, c) in fp.cpu {
            self.residual_cpu[n.0] -= c;
        }
        for (n, m) in fp.mem {
            self.residual_mem[n.0] -= m;
        }
        for (l, b) in fp.bw {
            self.residual_bw[l.0] -= b;
        }
        self.active.insert(dep.request_id, dep);
        Ok(())
    }

    /// Frees the resources held by `request_id`. Unknown ids are a logged no-op.
    pub fn release(&mut self, request_id: u64) -> Option<Deployment> {
        let Some(dep) = self.active.remove(&request_id) else {
            log::warn!("release of unknown request {request_id} ignored");
            return None;
        };
        let fp = Footprint::of(&dep);
        for (n, c) in fp.cpu {
            self.residual_cpu[n.0] += c;
        }
        for (n, m) in fp.mem {
            self.residual_mem[n.0] += m;
        }
        for (l, b) in fp.bw {
            self.residual_bw[l.0] += b;
        }
        Some(dep)
    }

    /// Recomputes residuals from capacities and the active set and compares
    /// them with the tracked values. Returns a description of the first mismatch.
    pub fn check_conservation(&self) -> Result<(), String> {
        let topo = &self.topology;
        let mut cpu: Vec<u64> = vec![0; topo.node_count()];
        let mut mem: Vec<u64> = vec![0; topo.node_count()];
        let mut bw: Vec<u64> = vec![0; topo.links().len()];
        for dep in self.active.values() {
            let fp = Footprint::of(dep);
            for (n, c) in fp.cpu {
                cpu[n.0] += c as u64;
            }
            for (n, m) in fp.mem {
                mem[n.0] += m;
            }
            for (l, b) in fp.bw {
                bw[l.0] += b;
            }
        }
        for (i, node) in topo.nodes().iter().enumerate() {
            if cpu[i] > node.cpu_capacity as u64 {
                return Err(format!("n{i}: {} cores held, capacity {}", cpu[i], node.cpu_capacity));
            }
            if self.residual_cpu[i] as u64 != node.cpu_capacity as u64 - cpu[i] {
                return Err(format!("n{i}: residual CPU {} != capacity - used", self.residual_cpu[i]));
            }
            let cap = gb_to_mib(node.mem_capacity);
            if mem[i] > cap {
                return Err(format!("n{i}: {} MiB held, capacity {cap}", mem[i]));
            }
            if self.residual_mem[i] != cap - mem[i] {
                return Err(format!("n{i}: residual memory {} != capacity - used", self.residual_mem[i]));
            }
        }
        for (i, link) in topo.links().iter().enumerate() {
            if bw[i] > link.bandwidth_capacity {
                return Err(format!("e{i}: {} bit/s held, capacity {}", bw[i], link.bandwidth_capacity));
            }
            if self.residual_bw[i] != link.bandwidth_capacity - bw[i] {
                return Err(format!("e{i}: residual bandwidth {} != capacity - used", self.residual_bw[i]));
            }
        }
        Ok(())
    }

    /// True when every residual equals its capacity.
    pub fn is_idle(&self) -> bool {
        *self == NetworkState::new(self.shared_topology())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::line_topology;

    fn dep(id: u64, nodes: Vec<usize>, cores: Vec<u32>) -> Deployment {
        let n = nodes.len();
        Deployment {
            request_id: id,
            vnf_nodes: nodes.into_iter().map(NodeId).collect(),
            vnf_cores: cores,
            vnf_mem: vec![1.5; n],
            link_paths: vec![vec![LinkId(0)], vec![]],
            link_bw: vec![10_000_000, 0],
            achieved_latency: 0.0,
            cost: 0.0,
            revenue: 0.0,
            profit: 0.0,
        }
    }

    #[test]
    fn commit_and_release_restore_bit_exactly() {
        let mut s = NetworkState::new(line_topology(3, 16, 8.0, 100_000_000));
        let before = s.clone();
        s.commit(dep(1, vec![1], vec![4])).unwrap();
        assert_eq!(s.residual_cpu(NodeId(1)), 12);
        assert_eq!(s.residual_bw(LinkId(0)), 90_000_000);
        s.check_conservation().unwrap();
        assert!(s.release(1).is_some());
        assert_eq!(s, before);
        assert!(s.release(1).is_none());
        assert_eq!(s, before);
    }

    #[test]
    fn over_capacity_commit_changes_nothing() {
        let mut s = NetworkState::new(line_topology(2, 4, 8.0, 100_000_000));
        let before = s.clone();
        let err = s.commit(dep(1, vec![0], vec![5])).unwrap_err();
        assert!(matches!(err[0], Violation::CpuCapacity { demand: 5, residual: 4, .. }));
        assert_eq!(s, before);
    }

    #[test]
    fn rates() {
        let mut s = NetworkState::new(line_topology(2, 8, 8.0, 100_000_000));
        s.commit(dep(1, vec![0], vec![4])).unwrap();
        assert_eq!(s.cpu_rate(NodeId(0)), 0.5);
        assert_eq!(s.bw_rate(LinkId(0)), 0.9);
        assert!((s.mem_rate(NodeId(0)) - 6.5 / 8.0).abs() < 1e-12);
    }
}
