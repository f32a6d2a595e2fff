//! Processing latency of a Layer-1 VNF and a generic VNF as cores grow.

use detsfc::latency::{generic_vnf_latency, layer1_latency};
use detsfc::ModelParams;

fn main() {
    let p = ModelParams::default();
    println!("{:>5} {:>12} {:>12}", "cores", "layer1 ms", "generic ms");
    for cores in 1..=p.max_cores_per_vnf {
        let l1 = layer1_latency(75, 12, cores, &p).unwrap();
        let g = generic_vnf_latency(0.1, 120.0, cores, &p).unwrap();
        println!("{cores:>5} {l1:>12.4} {g:>12.4}");
    }
}
