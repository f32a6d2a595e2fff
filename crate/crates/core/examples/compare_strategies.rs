//! Both strategies on identical workloads, with a bootstrap interval on the gain.

use detsfc::sim::compare::compare;
use detsfc::sim::SimConfig;

fn main() {
    let cfg = SimConfig { epochs: 8, ..Default::default() };
    let c = compare(&cfg).unwrap();
    let s = &c.summary;
    println!(
        "acceptance det {:.4} vs sph {:.4}; gain {:+.4} [{:+.4}, {:+.4}]",
        s.det_mean_acceptance.unwrap_or(f64::NAN),
        s.sph_mean_acceptance.unwrap_or(f64::NAN),
        s.mean_acceptance_gain,
        s.acceptance_gain_ci.lo,
        s.acceptance_gain_ci.hi
    );
    for b in &c.buckets {
        println!(
            "{:>6.0} {} det {:.3} sph {:.3}",
            b.start,
            if b.peak { "peak" } else { "    " },
            b.det_acceptance.unwrap_or(f64::NAN),
            b.sph_acceptance.unwrap_or(f64::NAN)
        );
    }
}
