//! A short seeded simulation and its per-bucket acceptance.

use detsfc::sim::{run_strategy, SimConfig};
use detsfc::StrategyKind;

fn main() {
    let cfg = SimConfig { epochs: 4, ..Default::default() };
    let out = run_strategy(&cfg, StrategyKind::DetSfcd).unwrap();
    let m = &out.metrics;
    println!("mean acceptance {:.4}, mean profit {:.2}", m.mean_acceptance.unwrap_or(f64::NAN), m.mean_profit);
    for b in &m.mean_buckets {
        let bar = "#".repeat((b.acceptance_rate.unwrap_or(0.0) * 40.0) as usize);
        println!("{:>6.0} {} {:>5.1} {bar}", b.start, if b.peak { "*" } else { " " }, b.arrivals);
    }
    for l in &m.latency {
        println!(
            "rate [{:.0}, {:.0}): n={} mean {:.3} ms jitter {:.4}",
            l.rate_lo, l.rate_hi, l.count, l.mean_latency, l.jitter
        );
    }
}
