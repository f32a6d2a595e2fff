mod common;

use std::sync::Arc;

use common::{evaluate, random_request, random_topology};
use detsfc::builders::{line_topology, request, topology};
use detsfc::oracle::{optimal_deploy, optimal_sequence, OracleLimits};
use detsfc::validate::{validate_deployment, validate_deployment_with, LatencyPolicy};
use detsfc::{detsfcd, sphle, ModelParams, NetworkState, NodeId, RejectReason, StrategyKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn accepted_deployments_pass_the_independent_checker() {
    let p = ModelParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1);
    let mut checked = [0usize; 2];
    for _ in 0..60 {
        let n = rng.gen_range(3..=10);
        let extra = rng.gen_range(0..=n);
        let topo = Arc::new(random_topology(&mut rng, n, extra, 24, 12.0, 2_000_000_000));
        for (k, kind) in StrategyKind::ALL.into_iter().enumerate() {
            let mut state = NetworkState::new(topo.clone());
            for id in 0..40 {
                let chain = rng.gen_range(1..=4);
                let req = random_request(&mut rng, id, n, chain);
                let before = state.clone();
                if let Ok(dep) = kind.deploy(&mut state, &req, &p) {
                    let band = kind == StrategyKind::DetSfcd;
                    let problems = evaluate(&before, &dep, &req, &p, band);
                    assert!(problems.is_empty(), "{kind}: {problems:?}\n{dep:?}");
                    checked[k] += 1;
                } else {
                    assert_eq!(state, before, "{kind}: rejection changed the state");
                }
                state.check_conservation().unwrap();
            }
        }
    }
    assert!(checked.iter().all(|&c| c > 200), "{checked:?}");
}

#[test]
fn validator_rejects_what_the_checker_rejects() {
    let p = ModelParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf2);
    let mut mutated = 0;
    for case in 0..400 {
        let n = rng.gen_range(3..=7);
        let extra = rng.gen_range(0..=n);
        let topo = Arc::new(random_topology(&mut rng, n, extra, 24, 12.0, 2_000_000_000));
        let state = NetworkState::new(topo.clone());
        let chain = rng.gen_range(1..=4);
        let req = random_request(&mut rng, case, n, chain);
        let Ok(mut dep) = detsfcd::plan(&state, &req, &p) else { continue };
        match rng.gen_range(0..5) {
            0 => {
                let i = rng.gen_range(0..chain);
                dep.vnf_cores[i] = if dep.vnf_cores[i] > 1 { dep.vnf_cores[i] - 1 } else { 2 };
            }
            1 => dep.vnf_cores[0] = 0,
            2 => dep.vnf_nodes[rng.gen_range(0..chain)] = NodeId(rng.gen_range(0..n)),
            3 => dep.achieved_latency += 0.5,
            _ => {
                let i = rng.gen_range(0..=chain);
                dep.link_bw[i] /= 2;
            }
        }
        let independent = evaluate(&state, &dep, &req, &p, true);
        let ours = validate_deployment(&state, &dep, &req, &p);
        if !independent.is_empty() {
            mutated += 1;
            assert!(ours.is_err(), "case {case}: checker found {independent:?}, validator accepted");
        }
    }
    assert!(mutated > 150, "{mutated}");
}

#[test]
fn two_node_network_saturates_and_recovers() {
    let p = ModelParams::default();
    let topo = line_topology(2, 16, 64.0, 10_000_000_000);
    let mut state = NetworkState::new(topo);
    let idle = state.clone();
    let mut accepted = Vec::new();
    let rejection = loop {
        let mut req = request(4, 100.0, 15.0);
        req.id = accepted.len() as u64;
        match detsfcd::deploy(&mut state, &req, &p) {
            Ok(dep) => accepted.push(dep),
            Err(r) => break r,
        }
        state.check_conservation().unwrap();
        assert!(accepted.len() < 64, "never saturated");
    };
    assert!(!accepted.is_empty());
    assert!(matches!(rejection.reason, RejectReason::InsufficientResources | RejectReason::NoPath), "{rejection:?}");
    let used: u32 = accepted.iter().flat_map(|d| d.vnf_cores.iter()).sum();
    assert!(used <= 32);
    assert_eq!(used, 32 - state.residual_cpu(NodeId(0)) - state.residual_cpu(NodeId(1)));
    for d in &accepted {
        assert!(detsfcd::release(&mut state, d.request_id).is_some());
        state.check_conservation().unwrap();
    }
    assert!(state.is_idle());
    assert_eq!(state, idle);
}

/// Five nodes: a two-hop route through node 1 and a three-hop detour via 2
/// and 3. Node 1 has no CPU left.
fn congested_fixture() -> (NetworkState, detsfc::SfcRequest) {
    let topo =
        topology(5, 64, 64.0, 10_000_000_000, &[(0, 1, 10.0), (1, 4, 10.0), (0, 2, 10.0), (2, 3, 10.0), (3, 4, 10.0)]);
    let mut state = NetworkState::new(topo);
    let mut filler = request(1, 100.0, 20.0);
    filler.id = 100;
    filler.source = NodeId(1);
    filler.dest = NodeId(4);
    let mut dep = sphle::plan_sphle(&state, &filler, &ModelParams::default()).unwrap();
    dep.vnf_nodes = vec![NodeId(1)];
    dep.vnf_cores = vec![64];
    state.commit(dep).unwrap();
    let mut req = request(4, 150.0, 15.0);
    req.dest = NodeId(4);
    (state, req)
}

#[test]
fn congestion_aware_routing_admits_what_shortest_path_rejects() {
    let p = ModelParams { max_cores_per_vnf: 64, ..Default::default() };
    let (state, req) = congested_fixture();
    assert_eq!(state.residual_cpu(NodeId(1)), 0);

    let sph = sphle::plan_sphle(&state, &req, &p).unwrap_err();
    assert_eq!(sph.reason, RejectReason::InsufficientResources);

    let det = detsfcd::plan(&state, &req, &p).unwrap();
    assert!(!det.vnf_nodes.contains(&NodeId(1)));
    validate_deployment(&state, &det, &req, &p).unwrap();
}

#[test]
fn joint_placement_admits_what_greedy_placement_blocks() {
    let p = ModelParams::default();
    // Two nodes with 6 cores each. The greedy placement of the first chain
    // leaves no node with room for the second chain's 6-core Layer-1 VNF.
    let topo = line_topology(2, 6, 64.0, 10_000_000_000);
    let state = NetworkState::new(topo);
    let mut first = request(3, 80.0, 20.0);
    first.id = 1;
    let mut second = request(2, 200.0, 10.0);
    second.id = 2;

    let mut greedy = state.clone();
    let a = detsfcd::deploy(&mut greedy, &first, &p).unwrap();
    let b = detsfcd::deploy(&mut greedy, &second, &p).unwrap_err();
    assert_eq!(b.reason, RejectReason::InsufficientResources);

    let limits = OracleLimits::default();
    let alone = optimal_deploy(&state, &second, &p, &limits).unwrap().unwrap();
    let joint = optimal_sequence(&state, &[first.clone(), second.clone()], &p, &limits).unwrap();
    assert_eq!(joint.admitted, vec![1, 2]);
    assert!(joint.total_profit > a.profit);
    assert!(common::close(joint.total_profit, a.profit + alone.profit, 1e-12));

    let mut replay = state.clone();
    for (d, r) in joint.deployments.iter().zip([&first, &second]) {
        validate_deployment_with(&replay, d, r, &p, LatencyPolicy::Band).unwrap();
        replay.commit(d.clone()).unwrap();
    }
}
