//! Large randomized differential soak: solver vs oracle with full
//! verification, across sizes, densities, and subdivided variants.

use leafspan::graph::Graph;
use leafspan::oracle::max_leaf_bruteforce;
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
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let count: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(3000);
    let mut rng = StdRng::seed_from_u64(seed);
    let opts = SolveOptions { witness: true, verify: true, parallel_roots: false };
    let mut graphs = 0u64;
    let mut decisions = 0u64;
    let mut nodes = 0u64;
    for i in 0..count {
        let n = 4 + (i % 9) as u32; // 4..=12
        let p = [0.15, 0.25, 0.35, 0.5, 0.65, 0.8][i % 6];
        let mut g = random_connected(&mut rng, n, p);
        if i % 4 == 3 && g.vertex_count() <= 8 {
            g = subdivide(&mut rng, &g, 0.5);
        }
        if g.vertex_count() > 12 {
            continue;
        }
        let truth = max_leaf_bruteforce(&g).unwrap();
        for k in 1..=g.vertex_count() {
            let v = solve(&g, k, &opts);
            assert_eq!(
                v.is_yes(),
                truth.max_leaves >= k,
                "MISMATCH seed={seed} i={i} n={} m={} k={k}",
                g.vertex_count(),
                g.edge_count()
            );
            if let Some(w) = &v.witness {
                assert!(w.leaf_count >= k);
            }
            decisions += 1;
            nodes += v.stats.nodes_visited;
        }
        graphs += 1;
    }
    println!("soak clean: {graphs} graphs, {decisions} decisions, {nodes} nodes, zero mismatches");
}
