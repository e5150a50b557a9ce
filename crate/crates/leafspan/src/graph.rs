//! Immutable undirected graph with the constrained-path queries the rule
//! conditions are built from.
//!
//! Vertices are dense 0-based ids; original input labels live in the I/O
//! layer only. The graph is never mutated after construction, so it can be
//! shared freely across threads.

use crate::bitset::VertexSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: u32,
    adj: Vec<VertexSet>,
    m: u32,
}

impl Graph {
    pub fn new(n: u32) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            m: 0,
        }
    }

    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u as usize].contains(v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u32 {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n
    }

    pub fn neighbors(&self, v: u32) -> &VertexSet {
        assert!(v < self.n, "vertex {v} out of range (n = {})", self.n);
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.neighbors(v).count()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).contains(v)
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m as usize);
        for u in 0..self.n {
            for v in self.adj[u as usize].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(self.n, 0);
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            for w in self.adj[v as usize].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.count() == self.n
    }

    /// All vertices lying on some walk that starts in `sources` and whose
    /// vertices after the start all belong to `allowed`. The sources
    /// themselves are included whether or not they are allowed.
    pub fn reach_closure(&self, sources: &VertexSet, allowed: &VertexSet) -> VertexSet {
        let mut seen = sources.clone();
        let mut stack: Vec<u32> = sources.iter().collect();
        while let Some(v) = stack.pop() {
            for w in self.adj[v as usize].iter() {
                if allowed.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Is there a path of length >= 1 from some vertex of `sources` to
    /// `target` whose strictly internal vertices all lie in
    /// `allowed_internal`? A direct source-target edge qualifies (zero
    /// internal vertices). Only nonemptiness is ever needed, so this is
    /// reachability, under which simple paths come for free.
    pub fn paths_nonempty(
        &self,
        sources: &VertexSet,
        target: u32,
        allowed_internal: &VertexSet,
    ) -> bool {
        assert!(target < self.n, "vertex {target} out of range");
        debug_assert!(!sources.contains(target), "target may not be a source");
        let interior = allowed_internal.without(target);
        let closure = self.reach_closure(sources, &interior);
        self.adj[target as usize].intersects(&closure)
    }
}
