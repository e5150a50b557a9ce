//! Independent ground truth on small graphs: exhaustive max-leaf
//! computation over spanning trees, and minimum connected dominating set
//! by subset enumeration. The two cross-check each other through the
//! complementarity of leaf counts and internal vertices.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use thiserror::Error;

/// Enumeration explodes beyond this; refuse rather than hang.
pub const MAX_ORACLE_VERTICES: u32 = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices; the brute-force oracle accepts at most {MAX_ORACLE_VERTICES}")]
    TooLarge(u32),
    #[error("graph is disconnected; no spanning tree exists")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("connected dominating sets need at least 3 vertices, got {0}")]
    TooSmall(u32),
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub max_leaves: u32,
    pub witness_tree: Vec<(u32, u32)>,
    pub trees_enumerated: u64,
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: u32) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = p;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

struct Search<'a> {
    edges: &'a [(u32, u32)],
    n: u32,
    best: u32,
    best_tree: Vec<(u32, u32)>,
    trees: u64,
}

impl Search<'_> {
    /// Recursive edge inclusion/exclusion. `deg` counts chosen-edge
    /// degrees; a vertex at degree >= 2 can never be a leaf, which gives
    /// the pruning bound, and remaining edges must still be able to
    /// connect all components.
    fn rec(&mut self, idx: usize, chosen: &mut Vec<(u32, u32)>, dsu: &Dsu, deg: &mut [u32]) {
        if chosen.len() as u32 == self.n - 1 {
            self.trees += 1;
            let leaves = deg.iter().filter(|&&d| d == 1).count() as u32;
            if leaves > self.best {
                self.best = leaves;
                self.best_tree = chosen.clone();
            }
            return;
        }
        if idx >= self.edges.len() {
            return;
        }
        let committed = deg.iter().filter(|&&d| d >= 2).count() as u32;
        if self.n - committed <= self.best {
            return; // cannot beat the incumbent
        }
        // feasibility: remaining edges must connect what is left
        let mut probe = Dsu { parent: dsu.parent.clone() };
        let mut comps = self.n - chosen.len() as u32;
        for &(a, b) in &self.edges[idx..] {
            if probe.union(a, b) {
                comps -= 1;
            }
        }
        if comps > 1 {
            return;
        }

        let (a, b) = self.edges[idx];
        let mut with = Dsu { parent: dsu.parent.clone() };
        if with.union(a, b) {
            chosen.push((a, b));
            deg[a as usize] += 1;
            deg[b as usize] += 1;
            self.rec(idx + 1, chosen, &with, deg);
            deg[a as usize] -= 1;
            deg[b as usize] -= 1;
            chosen.pop();
        }
        self.rec(idx + 1, chosen, dsu, deg);
    }
}

/// Exact maximum, over all spanning trees, of the number of degree-1
/// vertices. The single-vertex tree counts as having one leaf, matching
/// the decision convention for n = 1.
pub fn max_leaf_bruteforce(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::Empty);
    }
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    if n == 1 {
        return Ok(OracleResult { max_leaves: 1, witness_tree: vec![], trees_enumerated: 1 });
    }
    let edges = g.edges();
    let mut search = Search {
        edges: &edges,
        n,
        best: 0,
        best_tree: Vec::new(),
        trees: 0,
    };
    let mut chosen = Vec::with_capacity(n as usize - 1);
    let mut deg = vec![0u32; n as usize];
    search.rec(0, &mut chosen, &Dsu::new(n), &mut deg);
    debug_assert!(search.best >= 2);
    Ok(OracleResult {
        max_leaves: search.best,
        witness_tree: search.best_tree,
        trees_enumerated: search.trees,
    })
}

/// Minimum size of a nonempty vertex set that induces a connected
/// subgraph and dominates everything else, by enumerating subsets in
/// increasing size.
pub fn min_cds_bruteforce(g: &Graph) -> Result<u32, OracleError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(OracleError::TooSmall(n));
    }
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    for size in 1..=n {
        let mut mask: u64 = (1 << size) - 1;
        while mask < (1u64 << n) {
            let set = VertexSet::from_iter(n, (0..n).filter(|&v| mask & (1 << v) != 0));
            if dominates(g, &set) && induced_connected(g, &set) {
                return Ok(size);
            }
            // next mask with the same popcount
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set always dominates and is connected");
}

fn dominates(g: &Graph, set: &VertexSet) -> bool {
    g.vertices()
        .all(|v| set.contains(v) || g.neighbors(v).intersects(set))
}

fn induced_connected(g: &Graph, set: &VertexSet) -> bool {
    let Some(start) = set.first() else {
        return false;
    };
    let closure = g.reach_closure(&VertexSet::singleton(g.vertex_count(), start), set);
    set.is_subset_of(&closure)
}

/// Check an oracle witness: spanning, acyclic, and with the claimed
/// number of degree-1 vertices.
pub fn witness_is_valid(g: &Graph, result: &OracleResult) -> bool {
    let n = g.vertex_count();
    if n == 1 {
        return result.witness_tree.is_empty() && result.max_leaves == 1;
    }
    if result.witness_tree.len() as u32 != n - 1 {
        return false;
    }
    let mut dsu = Dsu::new(n);
    let mut deg = vec![0u32; n as usize];
    for &(a, b) in &result.witness_tree {
        if !g.has_edge(a, b) || !dsu.union(a, b) {
            return false;
        }
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    deg.iter().filter(|&&d| d == 1).count() as u32 == result.max_leaves
}
