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

/// Subdivide each edge with probability `q` (one new vertex per picked
/// edge), producing the degree-2 chains the deeper rules want.
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
    let mut totals = vec![0u64; 40];
    let mut rng = StdRng::seed_from_u64(42);
    let run = |g: &Graph, totals: &mut Vec<u64>, kmax: u32| {
        for k in 3..=g.vertex_count().min(kmax) {
            let v = solve(g, k, &opts);
            for (i, c) in v.stats.per_rule_firings.iter().enumerate() {
                totals[i] += c;
            }
        }
    };

    for n in 4..=12u32 {
        for &p in &[0.2, 0.3, 0.4, 0.55, 0.7] {
            for _ in 0..40 {
                let g = random_connected(&mut rng, n, p);
                run(&g, &mut totals, 12);
            }
        }
    }
    // subdivided graphs: long induced chains
    for n in 4..=9u32 {
        for &p in &[0.3, 0.5, 0.8] {
            for &q in &[0.4, 0.8] {
                for _ in 0..40 {
                    let base = random_connected(&mut rng, n, p);
                    let g = subdivide(&mut rng, &base, q);
                    run(&g, &mut totals, 13);
                }
            }
        }
    }

    println!("rule firings over randomized + subdivided sweep:");
    for (id, total) in totals.iter().enumerate().skip(1) {
        println!("  rule {id:>2}: {total:>10}");
    }
    let unfired: Vec<usize> = (1..=39).filter(|&i| totals[i] == 0).collect();
    println!("unfired rules: {unfired:?}");
}
