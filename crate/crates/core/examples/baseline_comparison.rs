//! The shortest-path baseline and the load-aware algorithm on one request.

use detsfc::builders::{request, topology};
use detsfc::{sphle, ModelParams, NetworkState, NodeId, StrategyKind};

fn main() {
    let p = ModelParams::default();
    let topo =
        topology(5, 16, 32.0, 10_000_000_000, &[(0, 1, 10.0), (1, 4, 10.0), (0, 2, 10.0), (2, 3, 10.0), (3, 4, 10.0)]);
    let mut base = NetworkState::new(topo);
    // Pin a chain holding all but one of node 1's cores.
    let mut filler = request(1, 100.0, 20.0);
    filler.id = 100;
    filler.source = NodeId(1);
    filler.dest = NodeId(4);
    let mut pinned = sphle::plan_sphle(&base, &filler, &p).unwrap();
    pinned.vnf_nodes = vec![NodeId(1)];
    pinned.vnf_cores = vec![15];
    base.commit(pinned).unwrap();

    let mut req = request(4, 150.0, 15.0);
    req.dest = NodeId(4);
    for kind in StrategyKind::ALL {
        let mut state = base.clone();
        match kind.deploy(&mut state, &req, &p) {
            Ok(d) => println!(
                "{kind}: nodes {:?} cores {:?} latency {:.3} profit {:.3}",
                d.vnf_nodes, d.vnf_cores, d.achieved_latency, d.profit
            ),
            Err(r) => println!("{kind}: rejected ({})", r.reason.as_str()),
        }
    }
}
