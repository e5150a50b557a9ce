//! Rules 24-28: open leaves whose open sibling has exactly one outside
//! neighbor. Mirrors of rules 19-23 except that the sibling is marked in
//! every branch that makes v internal, preserving the dependency claim.

use super::{Child, ChildBuilder, Ctx, RuleAction};
use crate::bitset::VertexSet;

pub(super) fn condition_holds(cx: &Ctx, id: u8) -> bool {
    match id {
        24 => find_sized(cx, |c| c >= 3).is_some(),
        25 => find_sized(cx, |c| c == 2).is_some(),
        26 => find_r26(cx).is_some(),
        27 => find_r27(cx).is_some(),
        28 => find_r28(cx).is_some(),
        _ => unreachable!(),
    }
}

pub(super) fn apply(cx: &Ctx, id: u8) -> Option<RuleAction> {
    match id {
        24 => apply_r24(cx),
        25 => apply_r25(cx),
        26 => apply_r26(cx),
        27 => apply_r27(cx),
        28 => apply_r28(cx),
        _ => unreachable!(),
    }
}

/// Pairs (v, s) with s an open sibling of v having exactly one outside
/// neighbor, in (v, s) id order.
fn pairs<'c>(cx: &'c Ctx) -> impl Iterator<Item = (u32, u32)> + 'c {
    cx.open.iter().flat_map(move |v| {
        cx.open_siblings(v)
            .iter()
            .filter(move |&s| cx.out(s).count() == 1)
            .map(move |s| (v, s))
            .collect::<Vec<_>>()
    })
}

fn find_sized(cx: &Ctx, size_ok: impl Fn(u32) -> bool) -> Option<(u32, u32, VertexSet)> {
    for (v, s) in pairs(cx) {
        let x = cx.out(v);
        if size_ok(x.count()) {
            return Some((v, s, x));
        }
    }
    None
}

fn leaf_branch_floating_out(cx: &Ctx, v: u32, x: &VertexSet, min_drop: i64) -> Child {
    let fresh = x.minus(&cx.inst.floating).count() as i64;
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v).float_all(x);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 4 + 4 * fresh,
        min_drop,
    }
}

/// Rule 24: |out(v)| >= 3. As in rule 19 the drops trade off against
/// |X \ F|; the floor covers the all-fresh end.
fn apply_r24(cx: &Ctx) -> Option<RuleAction> {
    let (v, s, x) = find_sized(cx, |c| c >= 3)?;
    let fresh = x.minus(&cx.inst.floating);
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark_all(&fresh).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - fresh.count() as i64 - 1,
        min_drop: 4,
    };
    Some(RuleAction::Branch(vec![
        leaf_branch_floating_out(cx, v, &x, 4),
        second,
    ]))
}

/// Rule 25: |out(v)| = 2.
fn apply_r25(cx: &Ctx) -> Option<RuleAction> {
    let (v, s, x) = find_sized(cx, |c| c == 2)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 3,
        min_drop: 3,
    };
    Some(RuleAction::Branch(vec![
        leaf_branch_floating_out(cx, v, &x, 8),
        second,
    ]))
}

fn chain<'c>(cx: &'c Ctx) -> impl Iterator<Item = (u32, u32, u32, VertexSet)> + 'c {
    pairs(cx).filter_map(|(v, s)| {
        let u = cx.out(v).single()?;
        Some((v, s, u, cx.out(u)))
    })
}

fn chain_leaf_branch(cx: &Ctx, v: u32, u: u32) -> Child {
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v).float_one(u);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 4 + 4 * i64::from(!cx.inst.floating.contains(u)),
        min_drop: 8,
    }
}

fn find_r26(cx: &Ctx) -> Option<(u32, u32, u32, VertexSet)> {
    chain(cx).find(|(_, _, _, x)| x.count() >= 3)
}

fn apply_r26(cx: &Ctx) -> Option<RuleAction> {
    let (v, s, u, x) = find_r26(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u)
        .attach(cx.g, u, &x)
        .mark_all(&x)
        .mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - x.count() as i64 - 1,
        min_drop: 4,
    };
    Some(RuleAction::Branch(vec![chain_leaf_branch(cx, v, u), second]))
}

fn find_r27(cx: &Ctx) -> Option<(u32, u32, u32, VertexSet)> {
    chain(cx).find(|&(_, _, u, ref x)| {
        let allowed = cx.allowed.without(u);
        x.iter()
            .all(|xx| cx.g.paths_nonempty(&cx.sources, xx, &allowed))
    })
}

fn apply_r27(cx: &Ctx) -> Option<RuleAction> {
    let (v, s, u, x) = find_r27(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u).attach(cx.g, u, &x).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 3,
        min_drop: 3,
    };
    Some(RuleAction::Branch(vec![chain_leaf_branch(cx, v, u), second]))
}

fn find_r28(cx: &Ctx) -> Option<(u32, u32, u32, VertexSet)> {
    chain(cx).next()
}

/// Rule 28: reduction making v and u internal, with X and s marked; the
/// measure drops by at least 1/4.
fn apply_r28(cx: &Ctx) -> Option<RuleAction> {
    let (v, s, u, x) = find_r28(cx)?;
    debug_assert_eq!(x.count(), 2, "rules 26/27 should have fired otherwise");
    let mut b = ChildBuilder::new(cx.inst);
    b.attach_one(cx.g, v, u)
        .attach(cx.g, u, &x)
        .mark_all(&x)
        .mark(s);
    Some(RuleAction::Reduce(Box::new(Child {
        instance: b.finish(cx.g),
        formula_drop: 4 - x.count() as i64 - 1,
        min_drop: 1,
    })))
}
