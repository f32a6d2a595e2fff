//! How close the heuristics get to the exhaustive optimum on tiny instances.

use detsfc::sim::instances::{gap_report, summarize};
use detsfc::sim::SimConfig;

fn main() {
    let cfg = SimConfig::default();
    let rows = gap_report(cfg.seed, 40, &cfg.oracle_check, &cfg.requests, &cfg.params).unwrap();
    for r in rows.iter().take(8) {
        println!(
            "#{:<3} n={} chain={} det {:>8.3} / {:>8.3}   sph {:>8.3} / {:>8.3}",
            r.instance, r.nodes, r.chain_len, r.det_profit, r.det_oracle, r.sph_profit, r.sph_oracle
        );
    }
    let s = summarize(&rows);
    println!(
        "{} instances: det/oracle {:.3}, sph/oracle {:.3}, dominance failures {}",
        s.instances,
        s.det_mean_ratio.unwrap_or(f64::NAN),
        s.sph_mean_ratio.unwrap_or(f64::NAN),
        s.dominance_failures
    );
}
