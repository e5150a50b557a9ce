//! Rules 19-23: open leaves without an open sibling. By this point M is
//! empty, so the dependency claim lets the leaf branch float the
//! vertex's outside neighborhood.

use super::{Child, ChildBuilder, Ctx, RuleAction};
use crate::bitset::VertexSet;

pub(super) fn condition_holds(cx: &Ctx, id: u8) -> bool {
    match id {
        19 => find_sized(cx, |c| c >= 3).is_some(),
        20 => find_sized(cx, |c| c == 2).is_some(),
        21 => find_r21(cx).is_some(),
        22 => find_r22(cx).is_some(),
        23 => find_r23(cx).is_some(),
        _ => unreachable!(),
    }
}

pub(super) fn apply(cx: &Ctx, id: u8) -> Option<RuleAction> {
    match id {
        19 => apply_r19(cx),
        20 => apply_r20(cx),
        21 => apply_r21(cx),
        22 => apply_r22(cx),
        23 => apply_r23(cx),
        _ => unreachable!(),
    }
}

/// Open leaves whose siblings are all resolved.
fn lone_open<'c>(cx: &'c Ctx) -> impl Iterator<Item = u32> + 'c {
    cx.open.iter().filter(|&v| cx.open_siblings(v).is_empty())
}

fn find_sized(cx: &Ctx, size_ok: impl Fn(u32) -> bool) -> Option<(u32, VertexSet)> {
    for v in lone_open(cx) {
        let x = cx.out(v);
        if size_ok(x.count()) {
            return Some((v, x));
        }
    }
    None
}

/// v becomes a fixed leaf and its whole outside neighborhood floats.
fn leaf_branch_floating_out(cx: &Ctx, v: u32, x: &VertexSet) -> Child {
    let fresh = x.minus(&cx.inst.floating).count() as i64;
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v).float_all(x);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 4 + 4 * fresh,
        min_drop: 4,
    }
}

/// Rule 19: |out(v)| >= 3; internal branch marks the non-floating
/// children. The two branch drops trade off against |X \ F| (all
/// floating gives (1, 2), all fresh gives (1+|X|, 3/4|X| - 1)); the
/// per-child floors below hold across the whole range.
fn apply_r19(cx: &Ctx) -> Option<RuleAction> {
    let (v, x) = find_sized(cx, |c| c >= 3)?;
    let fresh = x.minus(&cx.inst.floating);
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark_all(&fresh);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - fresh.count() as i64,
        min_drop: 5,
    };
    Some(RuleAction::Branch(vec![
        leaf_branch_floating_out(cx, v, &x),
        second,
    ]))
}

/// Rule 20: |out(v)| = 2; the children stay open in the internal branch.
fn apply_r20(cx: &Ctx) -> Option<RuleAction> {
    let (v, x) = find_sized(cx, |c| c == 2)?;
    let mut first = leaf_branch_floating_out(cx, v, &x);
    first.min_drop = 8; // rule 10 would have fired were both already floating
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4,
        min_drop: 4,
    };
    Some(RuleAction::Branch(vec![first, second]))
}

/// v with a single outside neighbor u; yields (v, u, out(u)).
fn chain<'c>(cx: &'c Ctx) -> impl Iterator<Item = (u32, u32, VertexSet)> + 'c {
    lone_open(cx).filter_map(|v| {
        let u = cx.out(v).single()?;
        Some((v, u, cx.out(u)))
    })
}

/// Leaf branch for the chain rules: fixing v makes u unreachable as an
/// internal vertex, so u floats. Earlier rules guarantee u is not
/// already floating, giving the full drop of 2.
fn chain_leaf_branch(cx: &Ctx, v: u32, u: u32) -> Child {
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v).float_one(u);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 4 + 4 * i64::from(!cx.inst.floating.contains(u)),
        min_drop: 8,
    }
}

fn find_r21(cx: &Ctx) -> Option<(u32, u32, VertexSet)> {
    chain(cx).find(|(_, _, x)| x.count() >= 3)
}

/// Rule 21: u has >= 3 outside neighbors; if v goes internal so does u,
/// with all of X marked.
fn apply_r21(cx: &Ctx) -> Option<RuleAction> {
    let (v, u, x) = find_r21(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u).attach(cx.g, u, &x).mark_all(&x);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - x.count() as i64,
        min_drop: 5,
    };
    Some(RuleAction::Branch(vec![chain_leaf_branch(cx, v, u), second]))
}

fn find_r22(cx: &Ctx) -> Option<(u32, u32, VertexSet)> {
    chain(cx).find(|&(_, u, ref x)| {
        let allowed = cx.allowed.without(u);
        x.iter()
            .all(|xx| cx.g.paths_nonempty(&cx.sources, xx, &allowed))
    })
}

/// Rule 22: every grandchild is reachable around u, so X can stay open
/// in the internal branch.
fn apply_r22(cx: &Ctx) -> Option<RuleAction> {
    let (v, u, x) = find_r22(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u).attach(cx.g, u, &x);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4,
        min_drop: 4,
    };
    Some(RuleAction::Branch(vec![chain_leaf_branch(cx, v, u), second]))
}

fn find_r23(cx: &Ctx) -> Option<(u32, u32, VertexSet)> {
    chain(cx).next()
}

/// Rule 23: some grandchild is reachable only through u, so v and u are
/// both internal in any solution; a reduction, not a branch. The measure
/// drops by exactly 1/2.
fn apply_r23(cx: &Ctx) -> Option<RuleAction> {
    let (v, u, x) = find_r23(cx)?;
    debug_assert_eq!(x.count(), 2, "rules 21/22 should have fired otherwise");
    let mut b = ChildBuilder::new(cx.inst);
    b.attach_one(cx.g, v, u).attach(cx.g, u, &x).mark_all(&x);
    Some(RuleAction::Reduce(Box::new(Child {
        instance: b.finish(cx.g),
        formula_drop: 4 - x.count() as i64,
        min_drop: 2,
    })))
}
