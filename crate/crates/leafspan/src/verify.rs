//! Dependency-claim verification. For every open leaf v (with a parent):
//! it has at most one sibling; a sibling is neither marked nor has two or
//! more children; and, against the snapshot taken when the parent was
//! made internal, the sibling was reachable from some other attachable
//! leaf of that ancestor tree. The remaining part of the claim (no
//! solution once the parent is forced to be a leaf) asserts the
//! nonexistence of a solution and is validated indirectly by the oracle
//! equivalence tests.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::instance::Instance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClaimViolation {
    #[error("open leaf {v} has {count} siblings")]
    TooManySiblings { v: u32, count: u32 },
    #[error("open leaf {v} has a marked sibling {s}")]
    SiblingMarked { v: u32, s: u32 },
    #[error("open leaf {v} has a sibling {s} with {children} children")]
    SiblingBranching { v: u32, s: u32, children: usize },
    #[error("open leaf {v} has no recorded snapshot for its parent's internalization")]
    MissingSnapshot { v: u32 },
    #[error("sibling {s} of open leaf {v} was reachable only through their parent at internalization time")]
    SnapshotPathEmpty { v: u32, s: u32 },
}

/// Check the machine-checkable dependency-claim items on one instance.
/// Returns the number of open leaves examined.
pub fn check_dependency_claim(g: &Graph, inst: &Instance) -> Result<u64, ClaimViolation> {
    let snapshots = inst
        .snapshots
        .as_ref()
        .expect("dependency-claim checking requires verification mode");
    let open = inst.open_leaves().minus(&inst.floating);
    let mut checked = 0;
    for v in open.iter() {
        if inst.tree.parent(v).is_none() {
            continue;
        }
        checked += 1;
        let sibs = inst.tree.siblings(v);
        if sibs.count() > 1 {
            return Err(ClaimViolation::TooManySiblings { v, count: sibs.count() });
        }
        let Some(s) = sibs.first() else {
            continue;
        };
        if inst.marked.contains(s) {
            return Err(ClaimViolation::SiblingMarked { v, s });
        }
        let s_children = inst.tree.children(s).len();
        if s_children >= 2 {
            return Err(ClaimViolation::SiblingBranching { v, s, children: s_children });
        }
        let Some(snap) = snapshots.get(&v) else {
            return Err(ClaimViolation::MissingSnapshot { v });
        };
        let sources = snap
            .tree_leaves
            .minus(&snap.fixed)
            .minus(&snap.floating)
            .without(snap.parent);
        let allowed = VertexSet::full(g.vertex_count())
            .minus(&snap.tree_members)
            .minus(&snap.fixed)
            .minus(&snap.floating);
        if !g.paths_nonempty(&sources, s, &allowed) {
            return Err(ClaimViolation::SnapshotPathEmpty { v, s });
        }
    }
    Ok(checked)
}
