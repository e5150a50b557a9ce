//! Regression guard on rule reachability: a fixed seeded sweep (random
//! plus edge-subdivided graphs) must keep exercising the bulk of the
//! rule ladder under full verification. The rules absent here are the
//! engineered-configuration ones covered by dedicated unit tests.

mod common;

use common::random_connected;
use leafspan::graph::Graph;
use leafspan::search::{solve, SolveOptions};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn subdivide(rng: &mut StdRng, g: &Graph, q: f64) -> Graph {
    let mut n = g.vertex_count();
    let mut edges = vec![];
    for (u, v) in g.edges() {
        if rng.random_bool(q) {
            edges.push((u, n));
            edges.push((n, v));
            n += 1;
        } else {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn sweep_fires_the_ladder_under_verification() {
    let opts = SolveOptions { witness: false, verify: true, parallel_roots: false };
    let mut rng = StdRng::seed_from_u64(1337);
    let mut totals = vec![0u64; 40];
    for n in 5..=9u32 {
        for &p in &[0.3, 0.55] {
            for _ in 0..12 {
                let base = random_connected(&mut rng, n, p);
                for g in [base.clone(), subdivide(&mut rng, &base, 0.7)] {
                    for k in 3..=g.vertex_count().min(11) {
                        let v = solve(&g, k, &opts);
                        for (i, c) in v.stats.per_rule_firings.iter().enumerate() {
                            totals[i] += c;
                        }
                    }
                }
            }
        }
    }
    // Rules this sweep reliably reaches; 16..=18 and 31..=39 need
    // engineered floating patterns and are pinned by unit tests instead.
    let expected: Vec<u8> = (1..=15).chain(19..=30).collect();
    let missing: Vec<u8> = expected.iter().copied().filter(|&r| totals[r as usize] == 0).collect();
    assert!(missing.is_empty(), "rules {missing:?} never fired in the sweep");
}
