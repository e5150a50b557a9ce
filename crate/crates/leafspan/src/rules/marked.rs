//! Rules 10-18: resolving marked vertices (rule 10 also covers open
//! leaves whose two outside neighbors are both floating).

use super::{Child, ChildBuilder, Ctx, RuleAction};
use crate::bitset::VertexSet;
use crate::instance::Instance;

pub(super) fn condition_holds(cx: &Ctx, id: u8) -> bool {
    match id {
        10 => find_r10(cx).is_some(),
        11 => find_sized(cx, |c| c >= 3).is_some(),
        12 => find_sized(cx, |c| c == 2).is_some(),
        13 => find_r13(cx).is_some(),
        14 => find_r14(cx).is_some(),
        15 => find_r15(cx).is_some(),
        16 => find_r16(cx).is_some(),
        17 => find_r17(cx).is_some(),
        18 => find_r18(cx).is_some(),
        _ => unreachable!(),
    }
}

pub(super) fn apply(cx: &Ctx, id: u8) -> Option<RuleAction> {
    match id {
        10 => apply_r10(cx),
        11 => apply_r11(cx),
        12 => apply_r12(cx),
        13 => apply_r13(cx),
        14 => apply_r14(cx),
        15 => apply_r15(cx),
        16 => apply_r16(cx),
        17 => apply_r17(cx),
        18 => apply_r18(cx),
        _ => unreachable!(),
    }
}

/// First branch shared by rules 11-18: fix the marked vertex as a leaf.
/// It leaves M and enters L, so the measure drops by exactly 1 1/4.
fn leaf_branch(cx: &Ctx, v: u32) -> Child {
    debug_assert!(cx.inst.marked.contains(v));
    let mut b = ChildBuilder::new(cx.inst);
    b.fix(v);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 5,
        min_drop: 5,
    }
}

// --- Rule 10 -------------------------------------------------------------

struct M10 {
    v: u32,
    x: VertexSet,
    z: VertexSet,
}

/// Rule 10: an undecided leaf whose two outside neighbors are both
/// floating. If v goes internal, every undetermined neighbor of those
/// floating vertices must float too (otherwise the leaf branch, already
/// rejected, would have a solution).
fn find_r10(cx: &Ctx) -> Option<M10> {
    for v in cx.undecided.iter() {
        let x = cx.out(v);
        if x.count() == 2 && x.is_subset_of(&cx.inst.floating) {
            let mut nx = VertexSet::new(cx.n);
            for xv in x.iter() {
                nx.union_with(cx.g.neighbors(xv));
            }
            nx.minus_with(&x);
            let z = nx
                .minus(&cx.internal)
                .minus(&cx.inst.fixed)
                .minus(&cx.inst.floating)
                .without(v);
            return Some(M10 { v, x, z });
        }
    }
    None
}

fn apply_r10(cx: &Ctx) -> Option<RuleAction> {
    let M10 { v, x, z } = find_r10(cx)?;
    let was_marked = i64::from(cx.inst.marked.contains(v));

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(v);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 4 + was_marked,
        min_drop: 4,
    };

    let sib_open = cx.open_siblings(v);
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x)
        .unmark(v)
        .mark_all(&sib_open)
        .float_all(&z);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 + 4 * z.count() as i64 + was_marked - sib_open.count() as i64,
        min_drop: 11,
    };

    Some(RuleAction::Branch(vec![first, second]))
}

// --- Rules 11 and 12 -----------------------------------------------------

fn find_sized(cx: &Ctx, size_ok: impl Fn(u32) -> bool) -> Option<(u32, VertexSet)> {
    for v in cx.inst.marked.iter() {
        let x = cx.out(v);
        if size_ok(x.count()) {
            return Some((v, x));
        }
    }
    None
}

/// Rule 11: a marked vertex with >= 3 outside neighbors: leaf, or
/// internal with its non-floating children marked.
fn apply_r11(cx: &Ctx) -> Option<RuleAction> {
    let (v, x) = find_sized(cx, |c| c >= 3)?;
    let fresh = x.minus(&cx.inst.floating);
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).unmark(v).mark_all(&fresh);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 1 + 4 * (x.count() as i64 - 1) - fresh.count() as i64,
        min_drop: 6,
    };
    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second]))
}

/// Rule 12: a marked vertex with exactly 2 outside neighbors: leaf, or
/// internal with its children left open (the dependency claim covers
/// them because the leaf branch was examined first).
fn apply_r12(cx: &Ctx) -> Option<RuleAction> {
    let (v, x) = find_sized(cx, |c| c == 2)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).unmark(v);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 5,
        min_drop: 5,
    };
    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second]))
}

// --- Rules 13-18: marked vertex with a single outside neighbor ----------

/// v in M with exactly one outside neighbor u; yields (v, u, out(u)).
fn chain_candidates<'c>(cx: &'c Ctx) -> impl Iterator<Item = (u32, u32, VertexSet)> + 'c {
    cx.inst.marked.iter().filter_map(|v| {
        let u = cx.out(v).single()?;
        Some((v, u, cx.out(u)))
    })
}

fn find_r13(cx: &Ctx) -> Option<(u32, u32, VertexSet)> {
    chain_candidates(cx).find(|(_, _, x)| x.count() >= 3)
}

/// Rule 13: if v goes internal its single child u cannot stay a leaf, so
/// u goes internal too with all of X marked.
fn apply_r13(cx: &Ctx) -> Option<RuleAction> {
    let (v, u, x) = find_r13(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u)
        .attach(cx.g, u, &x)
        .unmark(v)
        .mark_all(&x);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 1 + 4 * (x.count() as i64 - 1) - x.count() as i64,
        min_drop: 6,
    };
    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second]))
}

fn find_r14(cx: &Ctx) -> Option<(u32, u32, VertexSet)> {
    chain_candidates(cx).find(|&(v, u, ref x)| {
        x.count() == 2 && {
            let src = cx.sources.without(v);
            let allowed = cx.allowed.without(u);
            x.iter().all(|xx| cx.g.paths_nonempty(&src, xx, &allowed))
        }
    })
}

/// Rule 14: as rule 13 with |X| = 2; both grandchildren stay open, which
/// is sound because each remains reachable without going through v or u.
fn apply_r14(cx: &Ctx) -> Option<RuleAction> {
    let (v, u, x) = find_r14(cx)?;
    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u).attach(cx.g, u, &x).unmark(v);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 5,
        min_drop: 5,
    };
    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second]))
}

// --- Rule 15 -------------------------------------------------------------

struct M15 {
    v: u32,
    u: u32,
    x: VertexSet,
}

/// Rule 15 fires when, inside the hypothetical second branch, rules 4-9
/// can resolve first one grandchild and then the other. The probe
/// instances are speculative and discarded; the actual action emits the
/// plain second branch and lets the search apply those reductions next.
fn find_r15(cx: &Ctx) -> Option<M15> {
    for (v, u, x) in chain_candidates(cx) {
        if x.count() != 2 {
            continue;
        }
        let probe_base = build_r15_second(cx, v, u, &x);
        let xs = x.to_vec();
        let orders = [(xs[0], xs[1]), (xs[1], xs[0])];
        let works = orders.iter().any(|&(first, second)| {
            apply_simplify_pinned(cx.g, &probe_base, first)
                .is_some_and(|after| apply_simplify_pinned(cx.g, &after, second).is_some())
        });
        if works {
            return Some(M15 { v, u, x });
        }
    }
    None
}

fn build_r15_second(cx: &Ctx, v: u32, u: u32, x: &VertexSet) -> Instance {
    let mut b = ChildBuilder::new(cx.inst);
    b.attach_one(cx.g, v, u)
        .attach(cx.g, u, x)
        .unmark(v)
        .mark_all(x);
    b.finish(cx.g)
}

/// Does one of rules 4-9 apply with its subject vertex pinned to
/// `target`? Returns the reduced instance if so.
fn apply_simplify_pinned(g: &crate::graph::Graph, inst: &Instance, target: u32) -> Option<Instance> {
    let cx = Ctx::new(g, inst);
    // rule 4
    if cx.leaves.contains(target) && inst.floating.contains(target) {
        let mut b = ChildBuilder::new(inst);
        b.fix(target);
        return Some(b.finish(g));
    }
    // rule 5
    if cx.pool.contains(target) && cx.out(target).is_empty() {
        let mut b = ChildBuilder::new(inst);
        b.unmark(target).float_one(target);
        return Some(b.finish(g));
    }
    // rule 6
    if cx.pool.contains(target) {
        let o = cx.out(target);
        if cx
            .undecided
            .iter()
            .any(|u| u != target && o.is_subset_of(g.neighbors(u)))
        {
            let mut b = ChildBuilder::new(inst);
            b.unmark(target).float_one(target);
            return Some(b.finish(g));
        }
    }
    // rule 7 with v = target: some undecided leaf u with all outside
    // neighbors floating and adjacent to target gets floated.
    if cx.pool.contains(target) {
        let pick = cx.undecided.iter().find(|&u| {
            u != target && {
                let o = cx.out(u);
                o.is_subset_of(g.neighbors(target)) && o.is_subset_of(&inst.floating)
            }
        });
        if let Some(u) = pick {
            let mut b = ChildBuilder::new(inst);
            b.unmark(u).float_one(u);
            return Some(b.finish(g));
        }
    }
    // rule 8
    if cx.undecided.contains(target) {
        let src = cx.sources.without(target);
        if cx.unreachable_outside(&src, &cx.allowed).is_some() {
            let x = cx.out(target);
            if !x.is_empty() {
                let mut b = ChildBuilder::new(inst);
                b.attach(g, target, &x).unmark(target);
                if x.count() >= 2 {
                    let sib_open = cx.open_siblings(target);
                    b.mark_all(&sib_open).mark_all(&x);
                }
                return Some(b.finish(g));
            }
        }
    }
    // rule 9
    if cx.undecided.contains(target)
        && cx
            .out(target)
            .single()
            .is_some_and(|u| cx.out(u).count() == 1)
    {
        let mut b = ChildBuilder::new(inst);
        b.fix(target);
        return Some(b.finish(g));
    }
    None
}

fn apply_r15(cx: &Ctx) -> Option<RuleAction> {
    let M15 { v, u, x } = find_r15(cx)?;
    let second = Child {
        instance: build_r15_second(cx, v, u, &x),
        formula_drop: 3,
        min_drop: 3,
    };
    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second]))
}

// --- Rules 16-18: the reachable grandchild ------------------------------

struct Tail {
    v: u32,
    u: u32,
    x_set: VertexSet,
    /// The unique grandchild still reachable when v and u are avoided.
    x: u32,
}

/// Shared prefix of rules 16-18: v in M, out(v) = {u}, |out(u)| = 2, and
/// exactly one vertex of out(u) reachable from the attachable leaves
/// through paths avoiding u (two reachable would have fired rule 14,
/// none an earlier rule).
fn tails<'c>(cx: &'c Ctx) -> impl Iterator<Item = Tail> + 'c {
    chain_candidates(cx).filter_map(move |(v, u, x_set)| {
        if x_set.count() != 2 {
            return None;
        }
        let allowed = cx.allowed.without(u);
        let cand: Vec<u32> = x_set
            .iter()
            .filter(|&xx| cx.g.paths_nonempty(&cx.sources, xx, &allowed))
            .collect();
        if cand.len() == 1 {
            Some(Tail {
                v,
                u,
                x_set,
                x: cand[0],
            })
        } else {
            None
        }
    })
}

fn find_r16(cx: &Ctx) -> Option<(Tail, VertexSet, VertexSet)> {
    tails(cx).find_map(|t| {
        let y = cx.g.neighbors(t.x).minus(&cx.vt).without(t.u);
        if y.count() < 2 {
            return None;
        }
        let y_ext = cx.g.neighbors(t.x).minus(&cx.internal).without(t.u);
        Some((t, y, y_ext))
    })
}

/// Rule 16: three-way branch on v and then the reachable grandchild x.
/// When x is fixed as a leaf, everything x could hang from must float.
fn apply_r16(cx: &Ctx) -> Option<RuleAction> {
    let (Tail { v, u, x_set, x }, y, y_ext) = find_r16(cx)?;

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u)
        .attach(cx.g, u, &x_set)
        .mark_all(&x_set)
        .unmark(v)
        .fix(x)
        .float_all(&y_ext);
    let f_gain = y_ext.minus(&cx.inst.floating).minus(&cx.inst.fixed).count() as i64;
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 8 + 4 * f_gain - 4 * i64::from(cx.inst.floating.contains(x)),
        min_drop: 8,
    };

    let mut b3 = ChildBuilder::new(cx.inst);
    b3.attach_one(cx.g, v, u)
        .attach(cx.g, u, &x_set)
        .attach(cx.g, x, &y)
        .mark_all(&x_set)
        .mark_all(&y)
        .unmark(v)
        .unmark(x);
    b3.unmark_all(&cx.inst.floating);
    let m_new = x_set.union(&y).without(x).minus(&cx.inst.floating).count() as i64;
    let third = Child {
        instance: b3.finish(cx.g),
        formula_drop: 1 - m_new + 4 * y.count() as i64,
        min_drop: 6,
    };

    Some(RuleAction::Branch(vec![leaf_branch(cx, v), second, third]))
}

fn find_r17(cx: &Ctx) -> Option<(Tail, u32, VertexSet)> {
    tails(cx).find_map(|t| {
        let y = cx.g.neighbors(t.x).minus(&cx.vt).without(t.u).single()?;
        let z = cx.g.neighbors(y).minus(&cx.vt).without(t.x);
        let all_reachable = {
            let allowed = cx.allowed.without(t.u).without(t.x).without(y);
            z.iter().all(|zz| cx.g.paths_nonempty(&cx.sources, zz, &allowed))
        };
        if z.count() >= 3 || all_reachable {
            Some((t, y, z))
        } else {
            None
        }
    })
}

/// Rule 17: the chain continues through a single grandchild y; branching
/// as rule 16 but making y internal alongside x in the third branch.
fn apply_r17(cx: &Ctx) -> Option<RuleAction> {
    let (tail, y, z) = find_r17(cx)?;
    debug_assert!(z.count() >= 2, "rule 15 should have fired for |Z| < 2");
    let z_marked = if z.count() >= 3 {
        z.minus(&cx.inst.floating)
    } else {
        VertexSet::new(cx.n)
    };
    Some(RuleAction::Branch(chain_branches(cx, &tail, y, &z, &z_marked)))
}

fn find_r18(cx: &Ctx) -> Option<(Tail, u32, VertexSet)> {
    tails(cx).find_map(|t| {
        let y = cx.g.neighbors(t.x).minus(&cx.vt).without(t.u).single()?;
        let z = cx.g.neighbors(y).minus(&cx.vt).without(t.x);
        Some((t, y, z))
    })
}

/// Rule 18: remaining chain case; all of Z is marked in the third branch
/// (floating members included, whose cleanup by rule 4 banks the
/// remaining quarter).
fn apply_r18(cx: &Ctx) -> Option<RuleAction> {
    let (tail, y, z) = find_r18(cx)?;
    debug_assert_eq!(z.count(), 2, "rule 17 should have fired otherwise");
    Some(RuleAction::Branch(chain_branches(cx, &tail, y, &z, &z)))
}

/// Branches shared by rules 17 and 18; they differ only in which part of
/// Z is marked in the third branch.
fn chain_branches(cx: &Ctx, tail: &Tail, y: u32, z: &VertexSet, z_marked: &VertexSet) -> Vec<Child> {
    let &Tail { v, u, ref x_set, x } = tail;

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach_one(cx.g, v, u)
        .attach(cx.g, u, x_set)
        .mark_all(x_set)
        .unmark(v)
        .fix(x)
        .float_one(y);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 8 + 4 * i64::from(!cx.inst.floating.contains(y))
            - 4 * i64::from(cx.inst.floating.contains(x)),
        min_drop: 4,
    };

    let mut b3 = ChildBuilder::new(cx.inst);
    b3.attach_one(cx.g, v, u)
        .attach(cx.g, u, x_set)
        .attach_one(cx.g, x, y)
        .attach(cx.g, y, z)
        .mark_all(x_set)
        .mark_all(z_marked)
        .unmark(v)
        .unmark(x);
    let m_new = x_set.without(x).union(z_marked).count() as i64;
    let third = Child {
        instance: b3.finish(cx.g),
        formula_drop: 1 - m_new + 4 * z.count() as i64,
        min_drop: 6,
    };

    vec![leaf_branch(cx, v), second, third]
}
