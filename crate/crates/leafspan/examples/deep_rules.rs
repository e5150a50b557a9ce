//! Hunt for natural firings of the sibling-pair rules on larger graphs
//! (the oracle cannot check these sizes, so monotonicity and the
//! built-in verification stand in for ground truth).

use leafspan::graph::Graph;
use leafspan::search::{solve, SolveOptions};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_connected(rng: &mut StdRng, n: u32, p: f64) -> Graph {
    loop {
        let mut edges = vec![];
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

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

fn main() {
    let opts = SolveOptions { witness: false, verify: true, parallel_roots: false };
    let mut rng = StdRng::seed_from_u64(31337);
    let mut fired = vec![0u64; 40];
    let mut runs = 0u64;
    for i in 0..4000u64 {
        let n = 13 + (i % 6) as u32; // 13..=18
        let p = [0.18, 0.25, 0.35, 0.5][i as usize % 4];
        let mut g = random_connected(&mut rng, n, p);
        if i % 3 == 2 {
            g = subdivide(&mut rng, &g, 0.4);
        }
        // decisions for a band of k; check monotonicity as a cheap oracle
        let mut prev = true;
        for k in 3..=g.vertex_count().min(14) {
            let v = solve(&g, k, &opts);
            assert!(prev || !v.is_yes(), "monotonicity violated");
            prev = v.is_yes();
            for (r, c) in v.stats.per_rule_firings.iter().enumerate() {
                fired[r] += c;
            }
            runs += 1;
        }
    }
    println!("{runs} verified runs");
    for r in 29..=39 {
        println!("  rule {r}: {} firings", fired[r]);
    }
}
