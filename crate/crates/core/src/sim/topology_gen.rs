//! Seeded synthetic topologies.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{EdgeNode, NodeId, PhysLink, Topology};
use crate::sim::config::Range;

pub struct GenSpec {
    pub nodes: usize,
    pub avg_degree: f64,
    pub cpu_capacity: u32,
    pub mem_capacity: f64,
    pub bandwidth: u64,
    pub link_length: Range<f64>,
}

/// A random recursive spanning tree (node `i` attaches to a uniform earlier
/// node) plus uniformly drawn extra links until the average degree reaches
/// `avg_degree` or the graph is complete. Always connected.
pub fn generate<R: Rng>(spec: &GenSpec, rng: &mut R) -> Topology {
    let n = spec.nodes;
    let nodes: Vec<EdgeNode> = (0..n)
        .map(|i| EdgeNode { id: NodeId(i), cpu_capacity: spec.cpu_capacity, mem_capacity: spec.mem_capacity })
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut present = vec![vec![false; n]; n];
    let mut add = |a: usize, b: usize, edges: &mut Vec<(usize, usize)>| {
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !present[a][b] {
            present[a][b] = true;
            edges.push((a, b));
            true
        } else {
            false
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        add(i, j, &mut edges);
    }
    let max_edges = n * (n - 1) / 2;
    let target = ((spec.avg_degree * n as f64 / 2.0).round() as usize).clamp(n - 1, max_edges);
    if target > edges.len() {
        let mut missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !present_pair(&edges, a, b))
            .collect();
        missing.shuffle(rng);
        for (a, b) in missing.into_iter().take(target - edges.len()) {
            add(a, b, &mut edges);
        }
    }
    let links = edges
        .into_iter()
        .map(|(a, b)| PhysLink {
            endpoints: (NodeId(a), NodeId(b)),
            bandwidth_capacity: spec.bandwidth,
            length: if spec.link_length.hi > spec.link_length.lo {
                rng.gen_range(spec.link_length.lo..=spec.link_length.hi)
            } else {
                spec.link_length.lo
            },
        })
        .collect();
    Topology::new(nodes, links).expect("generated topology is connected")
}

fn present_pair(edges: &[(usize, usize)], a: usize, b: usize) -> bool {
    edges.contains(&(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(nodes: usize, avg_degree: f64) -> GenSpec {
        GenSpec {
            nodes,
            avg_degree,
            cpu_capacity: 128,
            mem_capacity: 64.0,
            bandwidth: 10_000_000_000,
            link_length: Range::new(5.0, 50.0),
        }
    }

    #[test]
    fn degree_and_determinism() {
        let a = generate(&spec(52, 3.5), &mut ChaCha8Rng::seed_from_u64(3));
        let b = generate(&spec(52, 3.5), &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.links().len(), 91);
        assert!(a.links().iter().all(|l| (5.0..=50.0).contains(&l.length)));
    }

    #[test]
    fn small_graphs_saturate_at_complete() {
        let t = generate(&spec(4, 10.0), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(t.links().len(), 6);
        let t = generate(&spec(2, 0.0), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(t.links().len(), 1);
    }
}
