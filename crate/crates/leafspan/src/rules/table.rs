//! Static metadata for the 39 rules: kind, a stable anchor slug, a
//! one-line condition summary, and the declared worst-case branching
//! vector (in quarter units, composed vectors already flattened via
//! `BranchingVector::compose`). The vector analysis re-verifies every
//! root from this table; the search engine asserts realized drops
//! against the per-child formulas instead, since composed components
//! fold in reductions that fire on later nodes.

use super::RuleKind;
use crate::vectors::BranchingVector;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RuleInfo {
    pub id: u8,
    pub kind: RuleKind,
    /// Stable identifier used in reports and golden tests.
    pub anchor: &'static str,
    pub condition: &'static str,
    /// Declared worst-case branching vector in quarter units, flattened;
    /// None for terminal and reduction rules.
    pub worst_vector_quarters: Option<Vec<i64>>,
    /// Guaranteed minimum measure drop of a reduction, in quarters.
    pub min_reduction_drop_quarters: Option<i64>,
}

fn flat(qs: &[i64]) -> Option<Vec<i64>> {
    Some(qs.to_vec())
}

/// Worst-case vectors that the source accounting states in composed form,
/// built here through the same composition operator the analysis exposes.
fn composed(outer: &[i64], at: usize, inner: &[i64]) -> BranchingVector {
    let o = BranchingVector::from_quarters(outer.to_vec()).unwrap();
    let i = BranchingVector::from_quarters(inner.to_vec()).unwrap();
    o.compose(at, &i)
}

pub fn rule_table() -> Vec<RuleInfo> {
    use RuleKind::*;
    let info = |id, kind, anchor, condition, wv: Option<Vec<i64>>, red: Option<i64>| RuleInfo {
        id,
        kind,
        anchor,
        condition,
        worst_vector_quarters: wv,
        min_reduction_drop_quarters: red,
    };

    // Composed worst cases:
    // rule 16: (5, 5+(8,3))            -> (5, 13, 8)
    // rule 17: (5, 5+(8,4))            -> (5, 13, 9)
    // rule 18: (5, 5+(8,3))            -> (5, 13, 8)
    // rule 30: (6+(6,10,10), 3+(5,5))  -> (12, 16, 16, 8, 8)
    // rule 38: (16, 8+(4,8), 8+(4,8), 8) -> (16, 12, 16, 12, 16, 8)
    let r16 = composed(&[5, 5], 1, &[8, 3]).quarters().to_vec();
    let r17 = composed(&[5, 5], 1, &[8, 4]).quarters().to_vec();
    let r18 = composed(&[5, 5], 1, &[8, 3]).quarters().to_vec();
    let r30 = {
        let t = composed(&[6, 5], 1, &[5, 5]); // (6, 10, 10)
        let outer = BranchingVector::from_quarters(vec![6, 3]).unwrap();
        outer.compose(0, &t).compose(3, &BranchingVector::from_quarters(vec![5, 5]).unwrap())
    }
    .quarters()
    .to_vec();
    let r38 = {
        let outer = BranchingVector::from_quarters(vec![16, 8, 8, 8]).unwrap();
        outer
            .compose(1, &BranchingVector::from_quarters(vec![4, 8]).unwrap())
            .compose(3, &BranchingVector::from_quarters(vec![4, 8]).unwrap())
    }
    .quarters()
    .to_vec();

    vec![
        info(1, Terminal, "reject-unreachable", "some outside vertex unreachable from attachable leaves", None, None),
        info(2, Terminal, "accept-enough-leaves", "k <= max(|leaves|, |fixed u floating|)", None, None),
        info(3, Terminal, "reject-spanning", "tree spans every vertex", None, None),
        info(4, Reduction, "floating-leaf-fixes", "a floating vertex is a tree leaf", None, Some(0)),
        info(5, Reduction, "no-outside-neighbors", "undetermined vertex with no neighbor outside the tree", None, Some(4)),
        info(6, Reduction, "covered-by-undecided", "outside neighborhood covered by an undecided leaf's neighborhood", None, Some(4)),
        info(7, Reduction, "floats-covered", "undecided leaf whose outside neighbors all float and touch another open vertex", None, Some(4)),
        info(8, Reduction, "forced-internal", "outside vertex reachable only through one undecided leaf", None, Some(0)),
        info(9, Reduction, "chain-of-two", "single outside neighbor that itself has a single outside neighbor", None, Some(4)),
        info(10, Branching, "both-neighbors-float", "undecided leaf with two outside neighbors, both floating", flat(&[4, 11]), None),
        info(11, Branching, "marked-three-plus", "marked leaf with >= 3 outside neighbors", flat(&[5, 6]), None),
        info(12, Branching, "marked-two", "marked leaf with 2 outside neighbors", flat(&[5, 5]), None),
        info(13, Branching, "marked-chain-three-plus", "marked leaf, single outside neighbor with >= 3 outside neighbors", flat(&[5, 6]), None),
        info(14, Branching, "marked-chain-two-reachable", "marked chain, both grandchildren reachable around it", flat(&[5, 5]), None),
        info(15, Branching, "marked-chain-reducible", "marked chain whose grandchildren reduce immediately", flat(&[5, 5]), None),
        info(16, Branching, "marked-chain-wide-tail", "marked chain, reachable grandchild with >= 2 onward neighbors", Some(r16), None),
        info(17, Branching, "marked-chain-long-tail", "marked chain, single onward neighbor with reachable or large frontier", Some(r17), None),
        info(18, Branching, "marked-chain-tail-rest", "remaining marked chain", Some(r18), None),
        info(19, Branching, "lone-three-plus", "lone open leaf with >= 3 outside neighbors", flat(&[4, 8]), None),
        info(20, Branching, "lone-two", "lone open leaf with 2 outside neighbors", flat(&[8, 4]), None),
        info(21, Branching, "lone-chain-three-plus", "lone open leaf, single outside neighbor with >= 3 outside neighbors", flat(&[8, 5]), None),
        info(22, Branching, "lone-chain-reachable", "lone chain, all grandchildren reachable around it", flat(&[8, 4]), None),
        info(23, Reduction, "lone-chain-forced", "lone chain with a grandchild reachable only through it", None, Some(2)),
        info(24, Branching, "sib1-three-plus", "open leaf with >= 3 outside neighbors, sibling has one", flat(&[4, 7]), None),
        info(25, Branching, "sib1-two", "open leaf with 2 outside neighbors, sibling has one", flat(&[8, 3]), None),
        info(26, Branching, "sib1-chain-three-plus", "chain with >= 3 grandchildren, sibling has one outside neighbor", flat(&[8, 4]), None),
        info(27, Branching, "sib1-chain-reachable", "chain with reachable grandchildren, sibling has one outside neighbor", flat(&[8, 3]), None),
        info(28, Reduction, "sib1-chain-forced", "remaining chain with a one-neighbor sibling", None, Some(1)),
        info(29, Branching, "private-vertex-three-plus", "pair privately reaches a vertex, v has >= 3 outside neighbors", flat(&[6, 4]), None),
        info(30, Branching, "private-vertex-two", "pair privately reaches a vertex, both sides have 2", Some(r30), None),
        info(31, Branching, "common-nonfloating", "siblings share a non-floating outside neighbor", flat(&[8, 3]), None),
        info(32, Branching, "three-plus-two-floating", "v has >= 3 outside neighbors, >= 2 floating", flat(&[4, 6]), None),
        info(33, Branching, "three-plus-rest", "remaining v with >= 3 outside neighbors", flat(&[20, 8, 8, 8]), None),
        info(34, Branching, "shared-float-wide", "shared floating neighbor, large onward reach", flat(&[16, 8, 8, 9]), None),
        info(35, Branching, "shared-float-blocked", "shared floating neighbor, a blocked onward vertex", flat(&[8, 8, 8]), None),
        info(36, Branching, "shared-float-narrow", "shared floating neighbor, onward reach too small", flat(&[16, 8, 8]), None),
        info(37, Branching, "disjoint-few-floating", "disjoint outside pairs, at most one floating among them", flat(&[20, 8, 8, 8]), None),
        info(38, Branching, "disjoint-split-reachable", "disjoint pairs, one floating each, detours exist", Some(r38), None),
        info(39, Branching, "disjoint-split-rest", "remaining disjoint pairs with one floating each", flat(&[8, 8, 8]), None),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let t = rule_table();
        assert_eq!(t.len(), 39);
        for (i, r) in t.iter().enumerate() {
            assert_eq!(r.id as usize, i + 1);
            match r.kind {
                RuleKind::Branching => {
                    assert!(r.worst_vector_quarters.is_some(), "rule {} lacks a vector", r.id);
                    assert!(r.min_reduction_drop_quarters.is_none());
                }
                RuleKind::Reduction => {
                    assert!(r.worst_vector_quarters.is_none());
                    assert!(r.min_reduction_drop_quarters.is_some());
                }
                RuleKind::Terminal => {
                    assert!(r.worst_vector_quarters.is_none());
                    assert!(r.min_reduction_drop_quarters.is_none());
                }
            }
        }
        let branching = t.iter().filter(|r| r.kind == RuleKind::Branching).count();
        assert_eq!(branching, 28);
    }

    #[test]
    fn composed_vectors_flatten_as_stated() {
        let t = rule_table();
        let q = |id: u8| {
            let mut v = t[id as usize - 1].worst_vector_quarters.clone().unwrap();
            v.sort_unstable();
            v
        };
        assert_eq!(q(16), vec![5, 8, 13]); // 1.25, 2, 3.25
        assert_eq!(q(17), vec![5, 9, 13]); // 1.25, 2.25, 3.25
        assert_eq!(q(18), vec![5, 8, 13]);
        assert_eq!(q(30), vec![8, 8, 12, 16, 16]); // 2, 2, 3, 4, 4
        assert_eq!(q(38), vec![8, 12, 12, 16, 16, 16]); // 2, 3, 3, 4, 4, 4
    }
}
