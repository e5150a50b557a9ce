//! The intermediate search state: a rooted subtree of the input graph plus
//! the three leaf commitments (fixed, marked, floating), its quarter-unit
//! measure, compliance checking, and witness completion.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use std::collections::HashMap;
use std::sync::Arc;

/// Measure in exact quarter units (measure x 4). All rule deltas are
/// integers in this unit; floating point would break the exact delta
/// assertions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Quarters(pub i64);

impl Quarters {
    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 4.0
    }
}

impl std::fmt::Display for Quarters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

impl std::ops::Sub for Quarters {
    type Output = Quarters;
    fn sub(self, rhs: Quarters) -> Quarters {
        Quarters(self.0 - rhs.0)
    }
}

/// A rooted subtree of the input graph. Children lists are ordered by
/// insertion (ascending vertex id within one attachment), which keeps
/// traces reproducible. Leaves are the vertices with zero children; in
/// particular the root of a one-child tree is not a leaf.
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: u32,
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    members: VertexSet,
    leaves: VertexSet,
}

impl RootedTree {
    pub fn singleton(n: u32, root: u32) -> Self {
        assert!(root < n);
        RootedTree {
            root,
            parent: vec![None; n as usize],
            children: vec![Vec::new(); n as usize],
            members: VertexSet::singleton(n, root),
            leaves: VertexSet::singleton(n, root),
        }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.contains(v)
    }

    pub fn vertex_count(&self) -> u32 {
        self.members.count()
    }

    /// leaves(T) = vertices with zero children. The singleton tree's root
    /// is its one leaf.
    pub fn leaves(&self) -> &VertexSet {
        &self.leaves
    }

    pub fn internal(&self) -> VertexSet {
        self.members.minus(&self.leaves)
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn siblings(&self, v: u32) -> VertexSet {
        let mut s = VertexSet::new(self.members.capacity());
        if let Some(p) = self.parent[v as usize] {
            for &c in &self.children[p as usize] {
                if c != v {
                    s.insert(c);
                }
            }
        }
        s
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.leaves.contains(v)
    }

    /// Attach `child` (not yet in the tree) under the member `p`.
    pub fn attach(&mut self, p: u32, child: u32) {
        debug_assert!(self.members.contains(p), "parent {p} not in tree");
        debug_assert!(!self.members.contains(child), "child {child} already in tree");
        self.parent[child as usize] = Some(p);
        self.children[p as usize].push(child);
        self.members.insert(child);
        self.leaves.remove(p);
        self.leaves.insert(child);
    }

    /// Sum over vertices with i >= 2 children of (i - 1). For any rooted
    /// tree this equals |leaves| - 1, so a surplus of k or more forces
    /// more than k leaves.
    pub fn child_surplus(&self) -> i64 {
        self.members
            .iter()
            .map(|v| (self.children[v as usize].len() as i64 - 1).max(0))
            .sum()
    }

    /// Strict descendants of `p`.
    pub fn descendants(&self, p: u32) -> VertexSet {
        let mut out = VertexSet::new(self.members.capacity());
        let mut stack: Vec<u32> = self.children[p as usize].to_vec();
        while let Some(v) = stack.pop() {
            out.insert(v);
            stack.extend_from_slice(&self.children[v as usize]);
        }
        out
    }

    /// Edges (parent, child) in no particular order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.members
            .iter()
            .filter_map(|v| self.parent[v as usize].map(|p| (p, v)))
            .collect()
    }

    /// Number of degree-1 vertices when the rooting is forgotten. This is
    /// what the decision problem counts; a root with one child is a leaf
    /// here even though it is internal in the rooted view.
    pub fn unrooted_leaf_count(&self) -> u32 {
        if self.vertex_count() == 1 {
            return 1;
        }
        self.members
            .iter()
            .filter(|&v| {
                let deg = self.children[v as usize].len() + usize::from(self.parent[v as usize].is_some());
                deg == 1
            })
            .count() as u32
    }
}

/// Ancestor state recorded when a vertex's parent was made internal: the
/// tree at that node with the parent's new descendants removed, plus the
/// fixed/floating sets of that node. Consulted only by the
/// dependency-claim verifier; the algorithm itself never reads it.
#[derive(Debug)]
pub struct DependencySnapshot {
    pub parent: u32,
    pub tree_members: VertexSet,
    pub tree_leaves: VertexSet,
    pub fixed: VertexSet,
    pub floating: VertexSet,
}

pub type SnapshotMap = HashMap<u32, Arc<DependencySnapshot>>;

/// One node of the search: the rooted subtree plus the committed leaf
/// sets and the parameter. Value-semantic: rule application copies.
#[derive(Clone, Debug)]
pub struct Instance {
    pub tree: RootedTree,
    /// L: tree leaves committed to stay leaves.
    pub fixed: VertexSet,
    /// M: marked tree leaves (carry a quarter-unit measure credit).
    pub marked: VertexSet,
    /// F: vertices (inside the tree as leaves, or outside it) committed to
    /// be leaves in any solution.
    pub floating: VertexSet,
    pub k: u32,
    /// Present only in verification mode.
    pub snapshots: Option<SnapshotMap>,
}

impl Instance {
    pub fn initial(g: &Graph, root: u32, k: u32) -> Self {
        let n = g.vertex_count();
        Instance {
            tree: RootedTree::singleton(n, root),
            fixed: VertexSet::new(n),
            marked: VertexSet::singleton(n, root),
            floating: VertexSet::new(n),
            k,
            snapshots: None,
        }
    }

    pub fn with_verification(mut self) -> Self {
        self.snapshots = Some(HashMap::new());
        self
    }

    /// N: tree leaves that are neither fixed nor marked.
    pub fn open_leaves(&self) -> VertexSet {
        self.tree.leaves().minus(&self.fixed).minus(&self.marked)
    }

    /// M union N, i.e. leaves(T) \ L.
    pub fn undecided_leaves(&self) -> VertexSet {
        self.tree.leaves().minus(&self.fixed)
    }

    /// Leaves a solution extension may attach new subtrees to: undecided
    /// leaves that are not floating. Floating leaves that momentarily sit
    /// in the tree are committed leaves and cannot host attachments even
    /// before the cleanup rule converts them to fixed.
    pub fn attachment_sources(&self) -> VertexSet {
        self.undecided_leaves().minus(&self.floating)
    }

    /// Neighbors of v outside the tree.
    pub fn outside(&self, g: &Graph, v: u32) -> VertexSet {
        g.neighbors(v).minus(self.tree.members())
    }

    pub fn measure(&self) -> Quarters {
        let l = self.fixed.count() as i64;
        let m = self.marked.count() as i64;
        let f = self.floating.count() as i64;
        Quarters(8 * self.k as i64 + m - 4 * (l + f + self.tree.child_surplus()))
    }

    /// Attach the nonempty set X (outside neighbors of the leaf v) as
    /// children of v, in ascending id order. The caller adjusts L/M/F per
    /// the firing rule; this only grows the tree.
    pub fn attach_children(&self, g: &Graph, v: u32, x: &VertexSet) -> Instance {
        assert!(self.tree.is_leaf(v), "attach target {v} must be a leaf");
        assert!(!x.is_empty());
        let mut child = self.clone();
        for u in x.iter() {
            assert!(g.has_edge(v, u), "attachment edge {v}-{u} missing in graph");
            assert!(!self.tree.contains(u), "attached vertex {u} already in tree");
            child.tree.attach(v, u);
        }
        child
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let t = &self.tree;
        let n = g.vertex_count();
        if t.members().count() == 0 {
            return Err("empty tree".into());
        }
        let mut seen = 0u32;
        for v in t.members().iter() {
            match t.parent(v) {
                None => {
                    if v != t.root() {
                        return Err(format!("non-root {v} has no parent"));
                    }
                }
                Some(p) => {
                    if !t.contains(p) {
                        return Err(format!("parent {p} of {v} not in tree"));
                    }
                    if !g.has_edge(p, v) {
                        return Err(format!("tree edge {p}-{v} not in graph"));
                    }
                }
            }
            seen += 1;
        }
        let child_total: u32 = t.members().iter().map(|v| t.children(v).len() as u32).sum();
        if child_total + 1 != seen {
            return Err("tree is not connected/acyclic".into());
        }
        for v in 0..n {
            let expect = t.contains(v) && t.children(v).is_empty();
            if t.leaves().contains(v) != expect {
                return Err(format!("leaf cache wrong at {v}"));
            }
        }
        if !self.fixed.is_subset_of(t.leaves()) {
            return Err("fixed set not a subset of leaves".into());
        }
        if !self.marked.is_subset_of(t.leaves()) {
            return Err("marked set not a subset of leaves".into());
        }
        if !self.fixed.is_disjoint_from(&self.marked) {
            return Err("fixed and marked intersect".into());
        }
        let allowed_floating = t.leaves().minus(&self.fixed).union(&VertexSet::full(n).minus(t.members()));
        if !self.floating.is_subset_of(&allowed_floating) {
            return Err("floating set contains an internal or fixed vertex".into());
        }
        Ok(())
    }
}

/// Does the spanning tree `s` comply with `(t, lf)`?
/// (1) every edge of t is an edge of s;
/// (2) every vertex of lf has degree 1 in s;
/// (3) every internal vertex of t has in s exactly its t-neighborhood —
///     extensions must attach at undecided leaves, never at vertices whose
///     neighborhoods the search already closed.
pub fn complies(g: &Graph, s: &RootedTree, t: &RootedTree, lf: &VertexSet) -> bool {
    let n = g.vertex_count();
    debug_assert_eq!(s.vertex_count(), n, "s must span the graph");
    let mut s_adj: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
    for (a, b) in s.edges() {
        s_adj[a as usize].insert(b);
        s_adj[b as usize].insert(a);
    }
    for (p, v) in t.edges() {
        if !s_adj[p as usize].contains(v) {
            return false;
        }
    }
    for v in lf.iter() {
        if s_adj[v as usize].count() != 1 {
            return false;
        }
    }
    let mut t_adj: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
    for (p, v) in t.edges() {
        t_adj[p as usize].insert(v);
        t_adj[v as usize].insert(p);
    }
    for v in t.internal().iter() {
        if s_adj[v as usize] != t_adj[v as usize] {
            return false;
        }
    }
    true
}

#[derive(Debug, thiserror::Error)]
#[error("cannot extend the tree to a spanning tree: vertex {unreached} is unreachable")]
pub struct WitnessError {
    pub unreached: u32,
}

/// Extend the instance's tree to a spanning tree in which every fixed and
/// floating vertex is a leaf. Iterated breadth-first attachment from the
/// attachment sources through non-floating outside vertices; floating
/// vertices attach as leaves only. Fails exactly when some outside vertex
/// is unreachable that way (the caller should have rejected instead).
pub fn complete_witness(g: &Graph, inst: &Instance) -> Result<RootedTree, WitnessError> {
    let n = g.vertex_count();
    let mut s = inst.tree.clone();
    let mut queue: Vec<u32> = inst.attachment_sources().to_vec();
    let mut qi = 0;
    while qi < queue.len() {
        let p = queue[qi];
        qi += 1;
        for u in g.neighbors(p).to_vec() {
            if s.contains(u) {
                continue;
            }
            s.attach(p, u);
            if !inst.floating.contains(u) {
                queue.push(u);
            }
        }
    }
    if s.vertex_count() != n {
        let unreached = VertexSet::full(n).minus(s.members()).first().unwrap();
        return Err(WitnessError { unreached });
    }
    Ok(s)
}

/// One starting instance per vertex: the singleton tree rooted there with
/// the root marked.
pub fn initial_instances(g: &Graph, k: u32) -> Vec<Instance> {
    g.vertices().map(|r| Instance::initial(g, r, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn star(tips: u32) -> Graph {
        Graph::from_edges(tips + 1, &(1..=tips).map(|t| (0, t)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn initial_measure_is_2k_plus_quarter() {
        let g = star(4);
        let inst = Instance::initial(&g, 0, 3);
        assert_eq!(inst.measure(), Quarters(25)); // 8*3 + 1
        for inst in initial_instances(&g, 2) {
            assert_eq!(inst.measure(), Quarters(17)); // 8k + 1
            inst.validate(&g).unwrap();
        }
        assert_eq!(initial_instances(&g, 2).len(), 5);
        assert!(initial_instances(&Graph::new(0), 2).is_empty());
    }

    #[test]
    fn measure_examples() {
        // k=2, M empty, |L|+|F|=4, no branching vertex -> 0
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let mut inst = Instance::initial(&g, 0, 2);
        inst.marked.clear();
        inst = inst.attach_children(&g, 0, &VertexSet::singleton(6, 1));
        inst = inst.attach_children(&g, 1, &VertexSet::singleton(6, 2));
        inst.fixed.insert(2);
        inst.floating = VertexSet::from_iter(6, [3, 4, 5]);
        assert_eq!(inst.measure(), Quarters(0)); // 16 - 4*(1+3+0)

        // k=2, root with 4 children -> 2k - 3 = 1 unit = 4 quarters
        let g = star(4);
        let mut inst = Instance::initial(&g, 0, 2);
        inst.marked.clear();
        let inst = inst.attach_children(&g, 0, &VertexSet::from_iter(5, 1..=4));
        assert_eq!(inst.tree.child_surplus(), 3);
        assert_eq!(inst.measure(), Quarters(4));
    }

    #[test]
    fn child_surplus_small_cases() {
        let g = star(1);
        let t = RootedTree::singleton(2, 0);
        assert_eq!(t.child_surplus(), 0);
        assert_eq!(t.leaves().to_vec(), vec![0]);

        // path of 3 rooted at an end: surplus 0 = 1 - 2 + 1
        let g3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut t = RootedTree::singleton(3, 0);
        t.attach(0, 1);
        t.attach(1, 2);
        assert_eq!(t.child_surplus(), 0);
        assert_eq!(t.leaves().to_vec(), vec![2]);
        let _ = (g, g3);
    }

    #[test]
    fn attach_children_semantics() {
        let g = star(3);
        let inst = Instance::initial(&g, 0, 2);
        let child = inst.attach_children(&g, 0, &VertexSet::from_iter(4, [1, 2]));
        assert_eq!(child.tree.leaves().to_vec(), vec![1, 2]);
        // the input instance is unchanged
        assert_eq!(inst.tree.vertex_count(), 1);

        // |X| = 1 leaves the tree measure term unchanged
        let one = inst.attach_children(&g, 0, &VertexSet::singleton(4, 1));
        assert_eq!(one.tree.child_surplus(), 0);

        // |X| = 3 grows the tree term by 2
        let three = inst.attach_children(&g, 0, &VertexSet::from_iter(4, [1, 2, 3]));
        assert_eq!(three.tree.child_surplus(), 2);
    }

    #[test]
    fn complies_basic() {
        // triangle: t = single root, any spanning tree containing r complies
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = RootedTree::singleton(3, 0);
        let mut s = RootedTree::singleton(3, 0);
        s.attach(0, 1);
        s.attach(1, 2);
        assert!(complies(&g, &s, &t, &VertexSet::new(3)));

        // a vertex of lf with 2 neighbors in s fails condition (2)
        assert!(!complies(&g, &s, &t, &VertexSet::singleton(3, 1)));
        assert!(complies(&g, &s, &t, &VertexSet::singleton(3, 2)));

        // an internal t-vertex with an s-neighbor beyond its t-neighborhood
        // fails condition (3)
        let mut t2 = RootedTree::singleton(3, 0);
        t2.attach(0, 1);
        let mut s2 = RootedTree::singleton(3, 0);
        s2.attach(0, 1);
        s2.attach(0, 2);
        assert!(!complies(&g, &s2, &t2, &VertexSet::new(3)));
        let mut s3 = RootedTree::singleton(3, 0);
        s3.attach(0, 1);
        s3.attach(1, 2);
        assert!(complies(&g, &s3, &t2, &VertexSet::new(3)));
    }

    #[test]
    fn witness_trivial_cases() {
        // V = V_T already
        let g = star(4);
        let inst = Instance::initial(&g, 0, 2)
            .attach_children(&g, 0, &VertexSet::from_iter(5, 1..=4));
        let s = complete_witness(&g, &inst).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.unrooted_leaf_count(), 4);

        // star from the bare center
        let inst = Instance::initial(&g, 0, 2);
        let s = complete_witness(&g, &inst).unwrap();
        assert_eq!(s.unrooted_leaf_count(), 4);
        assert!(complies(&g, &s, &inst.tree, &inst.fixed.union(&inst.floating)));
    }

    #[test]
    fn witness_leaf_bound_on_grown_tree() {
        // tree 0 -> {1, 2} with 1 fixed and 4 floating: completion must
        // route 3 through the open leaf 2, keep the floating vertex a
        // leaf, and end with at least max(|leaves(T)|, |L u F|) leaves
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (3, 4)]).unwrap();
        let mut inst = Instance::initial(&g, 0, 3)
            .attach_children(&g, 0, &VertexSet::from_iter(5, [1, 2]));
        inst.marked.clear();
        inst.fixed.insert(1);
        inst.floating.insert(4);
        inst.validate(&g).unwrap();
        let s = complete_witness(&g, &inst).unwrap();
        let committed = inst.fixed.union(&inst.floating);
        assert!(complies(&g, &s, &inst.tree, &committed));
        let bound = inst.tree.leaves().count().max(committed.count());
        assert!(s.unrooted_leaf_count() >= bound);
        assert_eq!(s.unrooted_leaf_count(), 2);
    }

    #[test]
    fn witness_respects_floating() {
        // path 0-1-2-3; root 0, floating 2: must attach 2 as a leaf, so 3
        // becomes unreachable and completion fails
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut inst = Instance::initial(&g, 0, 2);
        inst.floating.insert(2);
        let err = complete_witness(&g, &inst).unwrap_err();
        assert_eq!(err.unreached, 3);
    }

    #[test]
    fn rooted_tree_leaf_identity_exhaustive() {
        // For every rooted tree: child_surplus = |leaves| - 1. (Each
        // vertex with i children contributes i to the child total |V|-1
        // and i-1 to the surplus unless it is a leaf, which subtracts 1.)
        // Enumerated over all labeled trees (Pruefer sequences) on up to
        // 7 vertices, all roots. Consequence: surplus >= k forces
        // |leaves| > k, which is what lets the accept rule fire whenever
        // the measure reaches zero.
        for n in 2u32..=7 {
            let mut seqs = vec![Vec::new()];
            for _ in 0..n.saturating_sub(2) {
                seqs = seqs
                    .into_iter()
                    .flat_map(|s: Vec<u32>| {
                        (0..n).map(move |v| {
                            let mut s2 = s.clone();
                            s2.push(v);
                            s2
                        })
                    })
                    .collect();
            }
            for seq in &seqs {
                let edges = pruefer_to_edges(n, seq);
                let g = Graph::from_edges(n, &edges).unwrap();
                for root in 0..n {
                    let t = tree_from_graph(&g, root);
                    assert_eq!(
                        t.child_surplus(),
                        t.leaves().count() as i64 - 1,
                        "identity failed for n={n} seq={seq:?} root={root}"
                    );
                }
            }
        }
        // single vertex: zero surplus, one leaf
        assert_eq!(RootedTree::singleton(1, 0).child_surplus(), 0);
    }

    fn pruefer_to_edges(n: u32, seq: &[u32]) -> Vec<(u32, u32)> {
        let mut degree = vec![1u32; n as usize];
        for &v in seq {
            degree[v as usize] += 1;
        }
        let mut edges = Vec::new();
        let mut seq = seq.to_vec();
        for i in 0..seq.len() {
            let leaf = (0..n).find(|&v| degree[v as usize] == 1 && !seq[i..].contains(&v)).unwrap();
            edges.push((leaf, seq[i]));
            degree[leaf as usize] -= 1;
            degree[seq[i] as usize] -= 1;
            let _ = &mut seq;
        }
        let rest: Vec<u32> = (0..n).filter(|&v| degree[v as usize] == 1).collect();
        assert_eq!(rest.len(), 2);
        edges.push((rest[0], rest[1]));
        edges
    }

    fn tree_from_graph(g: &Graph, root: u32) -> RootedTree {
        let mut t = RootedTree::singleton(g.vertex_count(), root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v).iter() {
                if !t.contains(w) {
                    t.attach(v, w);
                    stack.push(w);
                }
            }
        }
        t
    }
}
