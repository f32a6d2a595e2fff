//! Load-aware path weights versus fewest hops on a partly loaded network.

use detsfc::builders::{request, topology};
use detsfc::graph::{deployment_costs, extended_dijkstra, min_hop_path};
use detsfc::{detsfcd, ModelParams, NetworkState, NodeId};

fn main() {
    let topo =
        topology(5, 32, 32.0, 10_000_000_000, &[(0, 1, 10.0), (1, 4, 10.0), (0, 2, 8.0), (2, 3, 8.0), (3, 4, 8.0)]);
    let mut state = NetworkState::new(topo);
    let p = ModelParams::default();
    // Chains from node 1 to node 4 load both ends of the short route.
    for id in 0..8 {
        let mut r = request(4, 150.0, 10.0);
        r.id = id;
        r.source = NodeId(1);
        r.dest = NodeId(4);
        let _ = detsfcd::deploy(&mut state, &r, &p);
    }
    for n in 0..5 {
        println!("n{n}: {} cores left", state.residual_cpu(NodeId(n)));
    }

    let view = deployment_costs(&state);
    let weighted = extended_dijkstra(&view, NodeId(0), NodeId(4)).unwrap();
    let hops = min_hop_path(state.topology(), NodeId(0), NodeId(4)).unwrap();
    println!("fewest hops:   {:?}", hops.nodes);
    println!("least weight:  {:?} (weight {:.4})", weighted.nodes, weighted.weight);
}
