//! Shared test corpus: named graphs, isomorphism-free enumeration of all
//! small connected graphs, and seeded random connected graphs.
#![allow(dead_code)] // each test target uses a different subset

use leafspan::graph::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;
use std::sync::OnceLock;

pub fn path(n: u32) -> Graph {
    Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
}

pub fn complete(n: u32) -> Graph {
    let mut e = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            e.push((i, j));
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

pub fn star(tips: u32) -> Graph {
    Graph::from_edges(tips + 1, &(1..=tips).map(|t| (0, t)).collect::<Vec<_>>()).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = vec![];
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, ((i + 2) % 5) + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Edge mask form: bit for pair (i, j), i < j, at index pair_index(i, j).
fn pair_index(n: u32, i: u32, j: u32) -> u32 {
    debug_assert!(i < j && j < n);
    // offset of row i in the upper triangle
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn mask_to_graph(n: u32, mask: u64) -> Graph {
    let mut edges = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_index(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn graph_to_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut mask = 0u64;
    for (i, j) in g.edges() {
        mask |= 1 << pair_index(n, i, j);
    }
    mask
}

/// Smallest edge mask over all vertex relabelings.
fn canonical_mask(n: u32, mask: u64, perms: &[Vec<u32>]) -> u64 {
    let mut edges = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_index(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    let mut best = u64::MAX;
    for perm in perms {
        let mut m = 0u64;
        for &(i, j) in &edges {
            let (a, b) = (perm[i as usize], perm[j as usize]);
            let (a, b) = (a.min(b), a.max(b));
            m |= 1 << pair_index(n, a, b);
        }
        best = best.min(m);
    }
    best
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..n).filter_map(move |v| {
                    if p.contains(&v) {
                        None
                    } else {
                        let mut q = p.clone();
                        q.push(v);
                        Some(q)
                    }
                })
            })
            .collect();
    }
    out
}

/// All connected graphs on exactly n vertices up to isomorphism, by
/// augmenting the (n-1)-vertex classes with one new vertex over every
/// nonempty neighborhood (every connected graph has a non-cut vertex,
/// so this reaches every class).
fn connected_classes(n: u32) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    let prev = connected_classes(n - 1);
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &pmask in &prev {
        // re-index the (n-1)-vertex mask into n-vertex pair positions
        let mut base = 0u64;
        for i in 0..n - 1 {
            for j in (i + 1)..n - 1 {
                if pmask >> pair_index(n - 1, i, j) & 1 == 1 {
                    base |= 1 << pair_index(n, i, j);
                }
            }
        }
        for nbhood in 1u64..(1 << (n - 1)) {
            let mut mask = base;
            for i in 0..n - 1 {
                if nbhood >> i & 1 == 1 {
                    mask |= 1 << pair_index(n, i, n - 1);
                }
            }
            let canon = canonical_mask(n, mask, &perms);
            if seen.insert(canon) {
                out.push(canon);
            }
        }
    }
    out
}

/// Every connected graph with 1..=max_n vertices, one per isomorphism
/// class.
pub fn all_connected_up_to(max_n: u32) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for mask in connected_classes(n) {
            out.push(mask_to_graph(n, mask));
        }
    }
    out
}

/// Cached exhaustive corpus on up to 7 vertices (996 graphs).
pub fn exhaustive_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| all_connected_up_to(7))
}

/// Seeded G(n, p) conditioned on connectivity.
pub fn random_connected(rng: &mut StdRng, n: u32, p: f64) -> Graph {
    for _ in 0..100_000 {
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
    panic!("no connected G({n}, {p}) sample found");
}

/// The randomized corpus the acceptance criteria draw from: `count`
/// graphs with n in 8..=10 and edge probability cycling over
/// {0.2, 0.4, 0.7}.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let probs = [0.2, 0.4, 0.7];
    (0..count)
        .map(|i| {
            let n = 8 + (i % 3) as u32;
            let p = probs[(i / 3) % 3];
            random_connected(&mut rng, n, p)
        })
        .collect()
}

#[allow(dead_code)]
pub fn graph_signature(g: &Graph) -> u64 {
    graph_to_mask(g)
}
