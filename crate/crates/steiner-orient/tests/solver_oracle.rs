//! Solver results cross-checked against subset-enumeration oracles that
//! share no code with the flow machinery.

mod common;

use std::collections::BTreeMap;

use rand::Rng;

use steiner_orient::connectivity::{verify, Verdict};
use steiner_orient::solver::{brute_force_solve, solve, solve_r, RInstance, SolveResult};

use common::*;

const BUDGET: u64 = 10_000_000;

#[test]
fn solve_matches_brute_force_on_seeded_corpus() {
    let mut rng = rng(0xA11CE);
    for trial in 0..150 {
        let inst = random_instance(&mut rng, 7, 12, 3, 3);
        let fast = solve(&inst, BUDGET);
        let slow = brute_force_solve(&inst).expect("within brute-force edge limit");
        assert_eq!(
            fast.verdict_str(),
            slow.verdict_str(),
            "trial {trial}: {inst:?}"
        );
        if let SolveResult::Yes(o) = &fast {
            assert_eq!(verify(&inst, o), Verdict::Ok, "trial {trial}");
        }
    }
}

#[test]
fn solve_matches_subset_cut_enumeration() {
    let mut rng = rng(0xBEEF);
    for trial in 0..60 {
        let inst = random_instance(&mut rng, 6, 10, 3, 3);
        let fast = solve(&inst, BUDGET).is_yes();
        let slow = feasible_by_full_enumeration(&inst);
        assert_eq!(fast, slow, "trial {trial}: {inst:?}");
    }
}

#[test]
fn witnesses_pass_the_independent_cut_oracle() {
    let mut rng = rng(0xC0FFEE);
    let mut yes = 0;
    for _ in 0..80 {
        let inst = random_instance(&mut rng, 7, 12, 2, 3);
        if let SolveResult::Yes(o) = solve(&inst, BUDGET) {
            assert!(feasible_by_cuts(&inst, &o));
            yes += 1;
        }
    }
    assert!(
        yes > 10,
        "corpus produced too few feasible instances: {yes}"
    );
}

#[test]
fn verify_agrees_with_cut_oracle_on_random_orientations() {
    let mut rng = rng(0xD00D);
    for trial in 0..120 {
        let inst = random_instance(&mut rng, 7, 12, 3, 3);
        let o = random_orientation(&mut rng, inst.graph().edge_count());
        let library = verify(&inst, &o) == Verdict::Ok;
        let oracle = feasible_by_cuts(&inst, &o);
        assert_eq!(library, oracle, "trial {trial}");
    }
}

#[test]
fn violated_certificates_name_real_deficient_cuts() {
    let mut rng = rng(0x5EED);
    let mut violated = 0;
    for _ in 0..80 {
        let inst = random_instance(&mut rng, 7, 12, 3, 3);
        let o = random_orientation(&mut rng, inst.graph().edge_count());
        if let Verdict::Violated(cert) = verify(&inst, &o) {
            violated += 1;
            let arcs = oriented_arcs(inst.graph(), &o);
            let inside: Vec<bool> = {
                let mut v = vec![false; inst.graph().vertex_count()];
                for &x in &cert.side {
                    v[x] = true;
                }
                v
            };
            assert!(inside[inst.root()]);
            assert!(!inside[cert.separated_terminal]);
            assert!(inst.is_terminal(cert.separated_terminal));
            let crossing = arcs
                .iter()
                .filter(|&&(u, v)| inside[u] && !inside[v])
                .count();
            assert_eq!(crossing, cert.out_degree);
            assert!(cert.out_degree < inst.k());
        }
    }
    assert!(
        violated > 10,
        "corpus produced too few violations: {violated}"
    );
}

#[test]
fn solve_r_matches_orientation_enumeration() {
    let mut rng = rng(0xF00D);
    let mut checked = 0;
    for _ in 0..40 {
        let n = rng.random_range(3..=5);
        let m = rng.random_range(2..=8);
        let g = random_connected_multigraph(&mut rng, n, m);
        let mut demands = BTreeMap::new();
        let pair_count = rng.random_range(1..=2);
        for _ in 0..pair_count {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                demands.insert((u, v), rng.random_range(1..=2));
            }
        }
        if demands.is_empty() {
            continue;
        }
        let ri = RInstance::new(g, demands).unwrap();
        let fast = solve_r(&ri, BUDGET).is_yes();
        // Oracle: try all orientations, checking every demand by subset cuts.
        let m = ri.graph().edge_count();
        let mut slow = false;
        'outer: for mask in 0u32..(1 << m) {
            let dirs: Vec<_> = (0..m)
                .map(|e| {
                    if mask & (1 << e) != 0 {
                        steiner_orient::graph::Dir::Reversed
                    } else {
                        steiner_orient::graph::Dir::AsListed
                    }
                })
                .collect();
            let arcs = oriented_arcs(ri.graph(), &steiner_orient::graph::Orientation::new(dirs));
            for (&(u, v), &req) in ri.demands() {
                if subset_lambda_directed(ri.graph().vertex_count(), &arcs, u, v) < req {
                    continue 'outer;
                }
            }
            slow = true;
            break;
        }
        assert_eq!(fast, slow, "demands: {:?}", ri.demands());
        checked += 1;
    }
    assert!(checked >= 30, "too few demand instances: {checked}");
}

#[test]
fn unknown_only_under_budget_pressure() {
    let mut rng = rng(0x0DD);
    for _ in 0..30 {
        let inst = random_instance(&mut rng, 7, 12, 3, 3);
        match solve(&inst, BUDGET) {
            SolveResult::Unknown(_) => panic!("ample budget must decide tiny instances"),
            SolveResult::Yes(_) | SolveResult::No => {}
        }
    }
}
