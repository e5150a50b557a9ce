//! Rules 4-7 and 9: single-child reductions that commit a vertex's role
//! without branching.

use super::{Child, ChildBuilder, Ctx, RuleAction};

fn reduce(child: Child) -> RuleAction {
    RuleAction::Reduce(Box::new(child))
}

fn in_m(cx: &Ctx, v: u32) -> i64 {
    i64::from(cx.inst.marked.contains(v))
}

/// Rule 4: a floating vertex that sits in the tree as a leaf becomes a
/// fixed leaf.
pub(super) fn find_r4(cx: &Ctx) -> Option<u32> {
    cx.leaves.intersect(&cx.inst.floating).first()
}

pub(super) fn apply_r4(cx: &Ctx) -> Option<RuleAction> {
    let v = find_r4(cx)?;
    let drop = in_m(cx, v);
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v);
    Some(reduce(Child {
        instance: b.finish(cx.g),
        formula_drop: drop,
        min_drop: 0,
    }))
}

/// Rule 5: an undetermined vertex with no neighbor outside the tree can
/// never be internal; it becomes a floating leaf.
pub(super) fn find_r5(cx: &Ctx) -> Option<u32> {
    cx.pool.iter().find(|&v| cx.out(v).is_empty())
}

pub(super) fn apply_r5(cx: &Ctx) -> Option<RuleAction> {
    let v = find_r5(cx)?;
    float_reduction(cx, v)
}

/// Rule 6: v's outside neighborhood is covered by the neighborhood of an
/// undecided leaf u, so a solution using v internally can reroute through
/// u; v becomes a floating leaf.
pub(super) fn find_r6(cx: &Ctx) -> Option<(u32, u32)> {
    for v in cx.pool.iter() {
        let o = cx.out(v);
        for u in cx.undecided.iter() {
            if u != v && o.is_subset_of(cx.g.neighbors(u)) {
                return Some((v, u));
            }
        }
    }
    None
}

pub(super) fn apply_r6(cx: &Ctx) -> Option<RuleAction> {
    let (v, _) = find_r6(cx)?;
    float_reduction(cx, v)
}

/// Rule 7: all outside neighbors of the undecided leaf u are floating
/// leaves also adjacent to v, so u's children could be rerouted to v; u
/// becomes a floating leaf.
pub(super) fn find_r7(cx: &Ctx) -> Option<(u32, u32)> {
    for v in cx.pool.iter() {
        for u in cx.undecided.iter() {
            if u == v {
                continue;
            }
            let o = cx.out(u);
            if o.is_subset_of(cx.g.neighbors(v)) && o.is_subset_of(&cx.inst.floating) {
                return Some((v, u));
            }
        }
    }
    None
}

pub(super) fn apply_r7(cx: &Ctx) -> Option<RuleAction> {
    let (_, u) = find_r7(cx)?;
    float_reduction(cx, u)
}

fn float_reduction(cx: &Ctx, v: u32) -> Option<RuleAction> {
    let drop = 4 + in_m(cx, v);
    let mut b = ChildBuilder::new(cx.inst);
    b.unmark(v).float_one(v);
    Some(reduce(Child {
        instance: b.finish(cx.g),
        formula_drop: drop,
        min_drop: 4,
    }))
}

/// Rule 9: v's only outside neighbor u itself has only one neighbor
/// outside the tree; a solution with v internal can hand u's subtree to
/// another vertex, so fixing v as a leaf is safe.
pub(super) fn find_r9(cx: &Ctx) -> Option<u32> {
    cx.undecided.iter().find(|&v| {
        cx.out(v)
            .single()
            .is_some_and(|u| cx.out(u).count() == 1)
    })
}

pub(super) fn apply_r9(cx: &Ctx) -> Option<RuleAction> {
    let v = find_r9(cx)?;
    let drop = 4 + in_m(cx, v);
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v);
    Some(reduce(Child {
        instance: b.finish(cx.g),
        formula_drop: drop,
        min_drop: 4,
    }))
}
