//! Cost, revenue and profit of deployed chains.

use crate::error::ModelError;
use crate::model::{bps_to_mbps, Deployment, SfcRequest};
use crate::params::ModelParams;

/// CPU part of the resource cost. Core counts are summed as integers first,
/// so vectors with the same total cost exactly the same.
pub fn cpu_cost(cores: &[u32], p: &ModelParams) -> f64 {
    let total: u64 = cores.iter().map(|&c| c as u64).sum();
    p.alpha_cpu * total as f64
}

/// Resource cost of a deployment: CPU and memory per VNF plus bandwidth per
/// virtual link (charged per Mbit/s).
pub fn sfc_cost(dep: &Deployment, p: &ModelParams) -> f64 {
    let mut total = cpu_cost(&dep.vnf_cores, p);
    for &m in &dep.vnf_mem {
        total += p.alpha_mem * m;
    }
    for &bw in &dep.link_bw {
        total += p.beta * bps_to_mbps(bw);
    }
    total
}

/// Revenue of serving `req`: a rate term plus a premium on tight bounds.
pub fn sfc_revenue(req: &SfcRequest, p: &ModelParams) -> Result<f64, ModelError> {
    if !(req.latency_bound > 0.0) {
        return Err(ModelError::InvalidRequest { id: req.id, reason: "latency bound must be positive".into() });
    }
    Ok(p.delta * req.data_rate + p.omega / req.latency_bound)
}

pub fn sfc_profit(dep: &Deployment, req: &SfcRequest, p: &ModelParams) -> Result<f64, ModelError> {
    Ok(sfc_revenue(req, p)? - sfc_cost(dep, p))
}

/// Total profit of a set of deployments, summed in iteration order.
pub fn system_profit<'a>(deployments: impl IntoIterator<Item = &'a Deployment>) -> f64 {
    deployments.into_iter().map(|d| d.profit).sum()
}

/// Fills `cost`, `revenue` and `profit` of `dep` from the model.
pub fn settle(dep: &mut Deployment, req: &SfcRequest, p: &ModelParams) -> Result<(), ModelError> {
    dep.cost = sfc_cost(dep, p);
    dep.revenue = sfc_revenue(req, p)?;
    dep.profit = dep.revenue - dep.cost;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::request;

    fn dep(cores: Vec<u32>, mem: Vec<f64>, bw: Vec<u64>) -> Deployment {
        Deployment {
            request_id: 0,
            vnf_nodes: vec![],
            vnf_cores: cores,
            vnf_mem: mem,
            link_paths: vec![],
            link_bw: bw,
            achieved_latency: 0.0,
            cost: 0.0,
            revenue: 0.0,
            profit: 0.0,
        }
    }

    #[test]
    fn cost_examples() {
        let p = ModelParams::default();
        assert_eq!(sfc_cost(&dep(vec![], vec![], vec![]), &p), 0.0);

        let p = ModelParams { alpha_cpu: 1.0, alpha_mem: 0.0, beta: 0.0, ..Default::default() };
        assert_eq!(sfc_cost(&dep(vec![2, 2, 1], vec![1.0; 3], vec![5_000_000; 4]), &p), 5.0);

        let p = ModelParams { alpha_cpu: 0.3, alpha_mem: 0.1, beta: 0.01, ..Default::default() };
        let d = dep(vec![2, 3], vec![1.5, 2.0], vec![20_000_000, 0, 20_000_000]);
        let doubled = ModelParams { alpha_cpu: 0.6, alpha_mem: 0.2, beta: 0.02, ..p.clone() };
        assert!((sfc_cost(&d, &doubled) - 2.0 * sfc_cost(&d, &p)).abs() < 1e-12);
    }

    #[test]
    fn revenue_examples() {
        let mut req = request(1, 20.0, 10.0);
        let p = ModelParams { delta: 0.0, omega: 10.0, ..Default::default() };
        assert_eq!(sfc_revenue(&req, &p).unwrap(), 1.0);
        req.latency_bound = 5.0;
        assert_eq!(sfc_revenue(&req, &p).unwrap(), 2.0);

        let p = ModelParams { delta: 1.0, omega: 0.0, ..Default::default() };
        assert_eq!(sfc_revenue(&req, &p).unwrap(), 20.0);

        req.latency_bound = 0.0;
        assert!(sfc_revenue(&req, &p).is_err());
    }

    #[test]
    fn profit_examples() {
        // revenue 5 (delta * 5 Mbps), cost 3 (three cores).
        let req = request(1, 5.0, 10.0);
        let p = ModelParams { delta: 1.0, omega: 0.0, alpha_cpu: 1.0, alpha_mem: 0.0, beta: 0.0, ..Default::default() };
        let mut d = dep(vec![3], vec![1.0], vec![0, 0]);
        assert_eq!(sfc_profit(&d, &req, &p).unwrap(), 2.0);
        d.vnf_cores = vec![5];
        assert_eq!(sfc_profit(&d, &req, &p).unwrap(), 0.0);

        let mut a = dep(vec![], vec![], vec![]);
        a.profit = 2.0;
        let mut b = a.clone();
        b.profit = -1.0;
        assert_eq!(system_profit([&a, &b]), 1.0);
    }
}
