//! Arrivals per time bucket under the sinusoidal rate profile.

use detsfc::sim::config::ArrivalProfile;
use detsfc::sim::workload::arrival_times;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let profile = ArrivalProfile::default();
    let times = arrival_times(&profile, profile.period, &mut ChaCha8Rng::seed_from_u64(1));
    let width = profile.period / 20.0;
    let mut counts = [0usize; 20];
    for t in &times {
        counts[(t / width) as usize] += 1;
    }
    for (i, c) in counts.iter().enumerate() {
        let mid = (i as f64 + 0.5) * width;
        println!("{:>6.0} {:>6.2} {:>4} {}", i as f64 * width, profile.rate_at(mid), c, "#".repeat(c / 10));
    }
}
