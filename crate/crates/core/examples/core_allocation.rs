//! Cheapest core vector whose processing latency lands in a window.

use detsfc::allocator::{enumerate_options, select_min_cost, ProcessingWindow};
use detsfc::builders::request;
use detsfc::ModelParams;

fn main() {
    let p = ModelParams { a: [1.0, 0.0, 0.0], core_freq: 1.0, alpha_cpu: 0.72, ..Default::default() };
    let mut req = request(3, 100.0, 10.0);
    req.num_rbs = 10;
    req.vnfs[1].rho = 0.03;
    req.vnfs[2].rho = 0.038;

    let window = ProcessingWindow { budget: 8.0, band: 0.5 };
    let options = enumerate_options(&req, window, &p).unwrap();
    println!("{} vectors in [{}, {}] ms", options.len(), window.budget - window.band, window.budget);
    for o in options.iter().take(5) {
        println!("  cores {:?}  latency {:.3}  cost {:.3}", o.cores, o.latency, o.cost);
    }
    let best = select_min_cost(&options).unwrap();
    println!("chosen: {:?}", best.cores);
}
