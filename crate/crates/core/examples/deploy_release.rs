//! Admit a chain, check it, and give its resources back.

use detsfc::builders::{line_topology, request};
use detsfc::validate::validate_deployment;
use detsfc::{detsfcd, ModelParams, NetworkState, NodeId};

fn main() {
    let p = ModelParams::default();
    let mut state = NetworkState::new(line_topology(4, 32, 32.0, 10_000_000_000));
    let mut req = request(4, 100.0, 15.0);
    req.dest = NodeId(3);

    let before = state.clone();
    let dep = detsfcd::deploy(&mut state, &req, &p).expect("fits an idle network");
    validate_deployment(&before, &dep, &req, &p).unwrap();
    println!("nodes {:?}", dep.vnf_nodes);
    println!("cores {:?}", dep.vnf_cores);
    println!(
        "latency {:.4} ms (window [{:.2}, {:.2}])",
        dep.achieved_latency,
        req.latency_bound - p.band_for(req.latency_bound),
        req.latency_bound
    );
    println!("revenue {:.3}  cost {:.3}  profit {:.3}", dep.revenue, dep.cost, dep.profit);

    detsfcd::release(&mut state, req.id).unwrap();
    state.check_conservation().unwrap();
    println!("released; idle again: {}", state.is_idle());
}
