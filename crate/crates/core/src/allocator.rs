//! Per-VNF CPU core allocation along a chosen path.
//!
//! Once the path is fixed the communication latency is known and whatever is
//! left of the bound becomes the processing budget. Every core vector in
//! `{1..max_cores}^I` is scored; options whose processing latency falls inside
//! the window `[budget - band, budget]` survive, and the cheapest one wins.

use serde::Serialize;

use crate::accounting::cpu_cost;
use crate::error::ModelError;
use crate::latency::vnf_latency;
use crate::model::{mbps_to_bps, SfcRequest};
use crate::params::ModelParams;

/// Upper limit on the number of grid points examined for one request.
pub const MAX_GRID: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllocationOption {
    pub cores: Vec<u32>,
    /// Processing latency, ms.
    pub latency: f64,
    /// CPU resource cost.
    pub cost: f64,
}

/// Processing-latency window an allocation has to land in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessingWindow {
    /// Upper end, ms.
    pub budget: f64,
    /// Width below the upper end, ms. `f64::INFINITY` accepts anything under budget.
    pub band: f64,
}

impl ProcessingWindow {
    pub fn lower(&self) -> f64 {
        self.budget - self.band
    }

    pub fn contains(&self, latency: f64) -> bool {
        latency <= self.budget && latency >= self.lower()
    }
}

/// Bandwidth reserved on every virtual link of `req`, bits/s.
pub fn bandwidth_assignment(req: &SfcRequest, p: &ModelParams) -> u64 {
    mbps_to_bps(req.data_rate * p.bw_overprovision)
}

/// `table[i][c - 1]` is the latency of VNF `i` on `c` cores.
pub fn latency_table(req: &SfcRequest, p: &ModelParams) -> Result<Vec<Vec<f64>>, ModelError> {
    req.vnfs.iter().map(|v| (1..=p.max_cores_per_vnf).map(|c| vnf_latency(v, req, c, p)).collect()).collect()
}

fn grid_size(chain: usize, max_cores: u32) -> Result<u64, ModelError> {
    let mut n: u64 = 1;
    for _ in 0..chain {
        n = n.saturating_mul(max_cores as u64);
    }
    if n > MAX_GRID {
        return Err(ModelError::InvalidAllocation(format!(
            "core grid of {n} points exceeds the enumeration limit {MAX_GRID}"
        )));
    }
    Ok(n)
}

/// Calls `visit` with every core vector of the grid in lexicographic order,
/// along with its processing latency summed in chain order.
pub(crate) fn for_each_grid_point(table: &[Vec<f64>], mut visit: impl FnMut(&[u32], f64)) {
    let chain = table.len();
    if chain == 0 {
        return;
    }
    let max = table[0].len() as u32;
    let mut cores = vec![1u32; chain];
    loop {
        let mut latency = 0.0;
        for (row, &c) in table.iter().zip(&cores) {
            latency += row[(c - 1) as usize];
        }
        visit(&cores, latency);
        // Odometer increment, last position fastest.
        let mut i = chain;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cores[i] < max {
                cores[i] += 1;
                break;
            }
            cores[i] = 1;
        }
    }
}

fn by_cost_then_cores(a: &AllocationOption, b: &AllocationOption) -> std::cmp::Ordering {
    a.cost.total_cmp(&b.cost).then_with(|| a.cores.cmp(&b.cores))
}

/// All core vectors whose processing latency lies in `window`, sorted by cost
/// and then lexicographically by cores.
pub fn enumerate_options(
    req: &SfcRequest,
    window: ProcessingWindow,
    p: &ModelParams,
) -> Result<Vec<AllocationOption>, ModelError> {
    grid_size(req.vnfs.len(), p.max_cores_per_vnf)?;
    if !(window.budget > 0.0) {
        return Ok(Vec::new());
    }
    let table = latency_table(req, p)?;
    let mut options = Vec::new();
    for_each_grid_point(&table, |cores, latency| {
        if window.contains(latency) {
            options.push(AllocationOption { cores: cores.to_vec(), latency, cost: cpu_cost(cores, p) });
        }
    });
    options.sort_by(by_cost_then_cores);
    Ok(options)
}

/// Cheapest option, ties broken by the lexicographically smaller core vector.
pub fn select_min_cost(options: &[AllocationOption]) -> Option<AllocationOption> {
    options.iter().min_by(|a, b| by_cost_then_cores(a, b)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::request;
    use crate::latency::chain_processing_latency;
    use crate::model::VnfDescriptor;

    #[test]
    fn bandwidth_examples() {
        let req = request(2, 100.0, 10.0);
        assert_eq!(bandwidth_assignment(&req, &ModelParams::default()), 100_000_000);
        let req = request(2, 20.0, 10.0);
        let p = ModelParams { bw_overprovision: 1.2, ..Default::default() };
        assert_eq!(bandwidth_assignment(&req, &p), 24_000_000);
    }

    #[test]
    fn grid_sizes() {
        let p = ModelParams::default();
        let mut seen = 0;
        let table = latency_table(&request(1, 50.0, 10.0), &p).unwrap();
        for_each_grid_point(&table, |_, _| seen += 1);
        assert_eq!(seen, 8);
        let table = latency_table(&request(3, 50.0, 10.0), &p).unwrap();
        seen = 0;
        for_each_grid_point(&table, |_, _| seen += 1);
        assert_eq!(seen, 512);
    }

    #[test]
    fn grid_latency_matches_model_bit_exactly() {
        let p = ModelParams::default();
        let req = request(3, 130.0, 10.0);
        let table = latency_table(&req, &p).unwrap();
        for_each_grid_point(&table, |cores, latency| {
            assert_eq!(latency, chain_processing_latency(&req, cores, &p).unwrap());
        });
    }

    #[test]
    fn oversized_grid_is_refused() {
        let p = ModelParams { max_cores_per_vnf: 64, ..Default::default() };
        let req = request(5, 50.0, 10.0);
        let w = ProcessingWindow { budget: 5.0, band: 1.0 };
        assert!(enumerate_options(&req, w, &p).is_err());
    }

    #[test]
    fn empty_when_nothing_fits() {
        let p = ModelParams::default();
        let req = request(3, 200.0, 10.0);
        let w = ProcessingWindow { budget: 1e-6, band: 1e-7 };
        let options = enumerate_options(&req, w, &p).unwrap();
        assert!(options.is_empty());
        assert!(select_min_cost(&options).is_none());
    }

    #[test]
    fn single_option_and_tie_break() {
        let a = AllocationOption { cores: vec![2, 1], latency: 3.0, cost: 0.6 };
        assert_eq!(select_min_cost(std::slice::from_ref(&a)), Some(a.clone()));
        let b = AllocationOption { cores: vec![1, 2], latency: 3.1, cost: 0.6 };
        assert_eq!(select_min_cost(&[a, b.clone()]).unwrap().cores, vec![1, 2]);
    }

    /// Three-VNF chain with a 10 ms bound and 2 ms of communication, so 8 ms
    /// remain for processing. Constants are chosen so that per-VNF latencies
    /// at (2, 2, 1) cores are 2.5 + 1.5 + 3.8 = 7.8 ms and the CPU cost at
    /// 0.72 per core is 3.6.
    #[test]
    fn two_two_one_example() {
        let p = ModelParams {
            a: [1.0, 0.0, 0.0],
            core_freq: 1.0,
            alpha_cpu: 0.72,
            latency_band: 0.05,
            max_cores_per_vnf: 8,
            ..Default::default()
        };
        let mut req = request(3, 100.0, 10.0);
        req.num_rbs = 10;
        req.vnfs =
            vec![VnfDescriptor::layer1(1.0), VnfDescriptor::generic(0.03, 1.0), VnfDescriptor::generic(0.038, 1.0)];
        let window = ProcessingWindow { budget: 10.0 - 2.0, band: p.band_for(10.0) };
        let options = enumerate_options(&req, window, &p).unwrap();
        let best = select_min_cost(&options).unwrap();
        assert_eq!(best.cores, vec![2, 2, 1]);
        assert!((best.latency - 7.8).abs() < 1e-12 && best.latency <= 8.0);
        assert!((best.cost - 3.6).abs() < 1e-12);
        assert_eq!(options[0], best);
    }
}
