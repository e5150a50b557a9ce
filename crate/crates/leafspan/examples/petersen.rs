//! Solve the Petersen graph for every k, cross-checked against the
//! brute-force oracle, with full verification on.

use leafspan::graph::Graph;
use leafspan::oracle::max_leaf_bruteforce;
use leafspan::search::{find_max_leaf, solve, SolveOptions};

fn main() {
    let mut edges = vec![];
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((i, i + 5)); // spokes
        edges.push((i + 5, ((i + 2) % 5) + 5)); // inner pentagram
    }
    let g = Graph::from_edges(10, &edges).unwrap();

    let oracle = max_leaf_bruteforce(&g).unwrap();
    println!(
        "oracle max leaves: {} ({} spanning trees evaluated)",
        oracle.max_leaves, oracle.trees_enumerated
    );

    let opts = SolveOptions { witness: true, verify: true, parallel_roots: false };
    for k in 2..=8 {
        let v = solve(&g, k, &opts);
        println!(
            "k={k}: {:?} ({} nodes, depth {})",
            v.decision, v.stats.nodes_visited, v.stats.max_depth
        );
        assert_eq!(v.is_yes(), oracle.max_leaves >= k);
        if let Some(w) = v.witness {
            println!("      witness with {} leaves", w.leaf_count);
        }
    }
    println!("maximum over all spanning trees: {:?}", find_max_leaf(&g, &opts));
}
