//! Seeded request streams with tidal (sinusoidal-rate) Poisson arrivals.

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::model::{NodeId, SfcRequest, VnfDescriptor};
use crate::sim::config::{ArrivalProfile, Range, RequestDistributions};

/// Arrival instants in `[0, horizon)` of an inhomogeneous Poisson process,
/// drawn by thinning a homogeneous process at the profile's maximum rate.
pub fn arrival_times<R: Rng>(profile: &ArrivalProfile, horizon: f64, rng: &mut R) -> Vec<f64> {
    let max = profile.max_rate();
    if !(max > 0.0) {
        return Vec::new();
    }
    let gap = Exp::new(max).expect("positive rate");
    let mut out = Vec::new();
    let mut t = 0.0;
    loop {
        t += gap.sample(rng);
        if t >= horizon {
            return out;
        }
        if rng.gen::<f64>() * max < profile.rate_at(t) {
            out.push(t);
        }
    }
}

fn uniform_f64<R: Rng>(r: &Range<f64>, rng: &mut R) -> f64 {
    if r.hi > r.lo {
        rng.gen_range(r.lo..=r.hi)
    } else {
        r.lo
    }
}

fn uniform_u32<R: Rng>(r: &Range<u32>, rng: &mut R) -> u32 {
    rng.gen_range(r.lo..=r.hi)
}

/// Draws the fields of one request. Endpoints are distinct uniform nodes.
pub fn sample_request<R: Rng>(
    id: u64,
    arrival: f64,
    node_count: usize,
    dist: &RequestDistributions,
    mean_lifetime: f64,
    rng: &mut R,
) -> SfcRequest {
    let source = rng.gen_range(0..node_count);
    let mut dest = rng.gen_range(0..node_count - 1);
    if dest >= source {
        dest += 1;
    }
    let mem = uniform_f64(&dist.mem, rng) / dist.chain_len as f64;
    let mut vnfs = Vec::with_capacity(dist.chain_len);
    vnfs.push(VnfDescriptor::layer1(mem));
    for _ in 1..dist.chain_len {
        vnfs.push(VnfDescriptor::generic(uniform_f64(&dist.rho, rng), mem));
    }
    let lifetime = Exp::new(1.0 / mean_lifetime).expect("positive mean").sample(rng);
    SfcRequest {
        id,
        source: NodeId(source),
        dest: NodeId(dest),
        vnfs,
        data_rate: uniform_f64(&dist.data_rate, rng),
        latency_bound: dist.latency_bounds[rng.gen_range(0..dist.latency_bounds.len())],
        num_rbs: uniform_u32(&dist.num_rbs, rng),
        mcs_index: uniform_u32(&dist.mcs, rng),
        packet_size: dist.packet_size,
        arrival,
        // Exp can return 0 with vanishing probability; keep lifetimes positive.
        lifetime: lifetime.max(f64::MIN_POSITIVE),
    }
}

/// Complete time-ordered request stream for one epoch. Ids count up from 0.
pub fn generate_workload<R: Rng>(
    profile: &ArrivalProfile,
    horizon: f64,
    node_count: usize,
    dist: &RequestDistributions,
    mean_lifetime: f64,
    rng: &mut R,
) -> Vec<SfcRequest> {
    let times = arrival_times(profile, horizon, rng);
    times
        .into_iter()
        .enumerate()
        .map(|(i, t)| sample_request(i as u64, t, node_count, dist, mean_lifetime, rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_rate_means_no_arrivals() {
        let p = ArrivalProfile { base_rate: 0.0, peak_rate: 0.0, period: 100.0 };
        assert!(arrival_times(&p, 1000.0, &mut ChaCha8Rng::seed_from_u64(1)).is_empty());
    }

    #[test]
    fn requests_respect_ranges() {
        let dist = RequestDistributions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..500 {
            let r = sample_request(i, 0.0, 52, &dist, 100.0, &mut rng);
            r.validate().unwrap();
            assert!((50..=100).contains(&r.num_rbs));
            assert!((20.0..=200.0).contains(&r.data_rate));
            assert_eq!(r.vnfs.len(), 4);
            let mem: f64 = r.vnfs.iter().map(|v| v.mem_demand).sum();
            assert!((1.0 - 1e-9..=8.0 + 1e-9).contains(&mem));
            assert!(dist.latency_bounds.contains(&r.latency_bound));
        }
    }
}
