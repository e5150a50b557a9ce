//! Rules 29-39: pairs of open sibling leaves, each with at least two
//! outside neighbors. These are the rules whose branch omissions lean
//! hardest on the dependency claim.

use super::{Child, ChildBuilder, Ctx, RuleAction};
use crate::bitset::VertexSet;

pub(super) fn condition_holds(cx: &Ctx, id: u8) -> bool {
    match id {
        29 => find_r29(cx).is_some(),
        30 => find_r30(cx).is_some(),
        31 => find_r31(cx).is_some(),
        32 => find_r32(cx).is_some(),
        33 => find_r33(cx).is_some(),
        34 => find_shared(cx, false).is_some(),
        35 => find_shared(cx, true).is_some(),
        36 => find_r36(cx).is_some(),
        37 => find_r37(cx).is_some(),
        38 => find_split(cx, true).is_some(),
        39 => find_split(cx, false).is_some(),
        _ => unreachable!(),
    }
}

pub(super) fn apply(cx: &Ctx, id: u8) -> Option<RuleAction> {
    match id {
        29 => apply_r29(cx),
        30 => apply_r30(cx),
        31 => apply_r31(cx),
        32 => apply_r32(cx),
        33 => apply_r33(cx),
        34 => apply_r34(cx),
        35 => apply_r35(cx),
        36 => apply_r36(cx),
        37 => apply_r37(cx),
        38 => apply_r38(cx),
        39 => apply_r39(cx),
        _ => unreachable!(),
    }
}

/// Ordered pairs (v, s) of open siblings, v ascending then s.
fn sib_pairs<'c>(cx: &'c Ctx) -> impl Iterator<Item = (u32, u32)> + 'c {
    cx.open.iter().flat_map(move |v| {
        cx.open_siblings(v)
            .iter()
            .map(move |s| (v, s))
            .collect::<Vec<_>>()
    })
}

// --- Rules 29 and 30: a vertex reachable only from the pair -------------

fn private_vertex(cx: &Ctx, v: u32, s: u32) -> bool {
    let src = cx.sources.without(v).without(s);
    cx.unreachable_outside(&src, &cx.allowed).is_some()
}

fn find_r29(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, s)| cx.out(v).count() >= 3 && private_vertex(cx, v, s))
}

/// Rule 29: some outside vertex is reachable only via v or s, so if v is
/// a leaf then s must be internal; both branches resolve the pair.
fn apply_r29(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r29(cx)?;
    let x = cx.out(v);
    let y = cx.out(s);

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.attach(cx.g, s, &y).fix(v).mark_all(&y);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 3 * y.count() as i64,
        min_drop: 6,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark_all(&x).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - x.count() as i64 - 1,
        min_drop: 4,
    };

    Some(RuleAction::Branch(vec![first, second]))
}

fn find_r30(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, s)| private_vertex(cx, v, s))
}

/// Rule 30: as rule 29 with |out(v)| = 2; the children of v stay open in
/// the second branch.
fn apply_r30(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r30(cx)?;
    let x = cx.out(v);
    let y = cx.out(s);
    debug_assert_eq!(x.count(), 2, "rule 29 should have fired otherwise");
    debug_assert_eq!(y.count(), 2, "rule 29 should have fired on (s, v) otherwise");

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.attach(cx.g, s, &y).fix(v).mark_all(&y);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 3 * y.count() as i64,
        min_drop: 6,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 3,
        min_drop: 3,
    };

    Some(RuleAction::Branch(vec![first, second]))
}

// --- Rule 31: a common outside neighbor not in F -------------------------

fn find_r31(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, s)| {
        cx.out(v)
            .intersect(&cx.out(s))
            .minus(&cx.inst.floating)
            .first()
            .is_some()
    })
}

/// Rule 31: v and s share a non-floating outside neighbor; if v is a
/// leaf the pair could reattach there, contradicting the dependency
/// claim, so s goes internal in the leaf branch.
fn apply_r31(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r31(cx)?;
    let x = cx.out(v);
    let y = cx.out(s);
    let x_marked = tilde(cx, &x);
    let y_marked = tilde(cx, &y);

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.attach(cx.g, s, &y).fix(v).mark_all(&y_marked);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 4 + 4 * (y.count() as i64 - 1) - y_marked.count() as i64,
        min_drop: 8,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark_all(&x_marked).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - x_marked.count() as i64 - 1,
        min_drop: 3,
    };

    Some(RuleAction::Branch(vec![first, second]))
}

/// X \ F when |X| >= 3, empty otherwise: vertices that must be marked
/// when their parent gains three or more children.
fn tilde(cx: &Ctx, x: &VertexSet) -> VertexSet {
    if x.count() >= 3 {
        x.minus(&cx.inst.floating)
    } else {
        VertexSet::new(cx.n)
    }
}

// --- Rules 32 and 33: v with >= 3 outside neighbors ----------------------

fn find_r32(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, _)| {
        let x = cx.out(v);
        x.count() >= 3 && x.intersect(&cx.inst.floating).count() >= 2
    })
}

/// Rule 32: at least two of v's outside neighbors already float, so the
/// leaf branch banks nothing extra but the internal branch is cheap.
fn apply_r32(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r32(cx)?;
    let x = cx.out(v);
    let fresh = x.minus(&cx.inst.floating);

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(v);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 4,
        min_drop: 4,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).mark_all(&fresh).mark(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 * (x.count() as i64 - 1) - fresh.count() as i64 - 1,
        min_drop: 6,
    };

    Some(RuleAction::Branch(vec![first, second]))
}

fn find_r33(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, _)| cx.out(v).count() >= 3)
}

/// Rule 33: all four role assignments for (v, s). In the double-internal
/// branch the common neighbors hang off s, making both subtree sizes
/// predictable.
fn apply_r33(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r33(cx)?;
    let x = cx.out(v);
    let y = cx.out(s);
    let z = x.minus(&y);
    let x_marked = x.minus(&cx.inst.floating);
    let y_marked = tilde(cx, &y);
    let z_marked = tilde(cx, &z);
    debug_assert!(z.count() >= 2);

    let mut b1 = ChildBuilder::new(cx.inst);
    let xy = x.union(&y);
    b1.fix(v).fix(s).float_all(&xy);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 8 + 4 * xy.minus(&cx.inst.floating).count() as i64,
        min_drop: 20,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).fix(s).mark_all(&x_marked);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 4 + 4 * (x.count() as i64 - 1) - x_marked.count() as i64,
        min_drop: 8,
    };

    let mut b3 = ChildBuilder::new(cx.inst);
    b3.attach(cx.g, s, &y).fix(v).mark_all(&y_marked);
    let third = Child {
        instance: b3.finish(cx.g),
        formula_drop: 4 + 4 * (y.count() as i64 - 1) - y_marked.count() as i64,
        min_drop: 8,
    };

    let mut b4 = ChildBuilder::new(cx.inst);
    b4.attach(cx.g, v, &z)
        .attach(cx.g, s, &y)
        .mark_all(&z_marked)
        .mark_all(&y_marked);
    let fourth = Child {
        instance: b4.finish(cx.g),
        formula_drop: 4 * (xy.count() as i64 - 2) - z_marked.count() as i64 - y_marked.count() as i64,
        min_drop: 8,
    };

    Some(RuleAction::Branch(vec![first, second, third, fourth]))
}

// --- Rules 34-36: two outside neighbors each, sharing a floating one ----

struct Shared {
    v: u32,
    s: u32,
    /// The shared floating neighbor.
    u: u32,
    /// v's other outside neighbor.
    a: u32,
    /// s's other outside neighbor.
    b: u32,
    x: VertexSet,
    y: VertexSet,
    z: VertexSet,
}

fn shared_neighbor_config(cx: &Ctx, v: u32, s: u32) -> Option<(u32, u32, u32)> {
    let vo = cx.out(v);
    let so = cx.out(s);
    if vo.count() != 2 || so.count() != 2 {
        return None;
    }
    let common = vo.intersect(&so);
    let u = common.intersect(&cx.inst.floating).first()?;
    let a = vo.without(u).single()?;
    let b = so.without(u).single()?;
    if a == b {
        return None;
    }
    Some((u, a, b))
}

fn reach_sets_34(cx: &Ctx, v: u32, s: u32, u: u32, a: u32, b: u32) -> (VertexSet, VertexSet, VertexSet) {
    let x = cx
        .g
        .neighbors(a)
        .minus(&cx.vt)
        .without(v)
        .without(u)
        .without(b);
    let y = cx
        .g
        .neighbors(b)
        .minus(&cx.vt)
        .without(s)
        .without(u)
        .without(a);
    let z = y.minus(&x);
    (x, y, z)
}

/// First sibling pair in the shared-neighbor configuration whose
/// Z-reachability matches the requested variant (rule 35 wants a blocked
/// vertex in Z, rule 34 wants none).
fn find_shared(cx: &Ctx, want_blocked: bool) -> Option<Shared> {
    for (v, s) in sib_pairs(cx) {
        let Some((u, a, b)) = shared_neighbor_config(cx, v, s) else {
            continue;
        };
        let (x, y, z) = reach_sets_34(cx, v, s, u, a, b);
        if x.union(&y).count() < 4 || x.count() < 2 || z.is_empty() {
            continue;
        }
        let src = cx
            .sources
            .without(v)
            .without(s)
            .union(&x.minus(&cx.inst.floating));
        let allowed = cx.allowed.without(b);
        let blocked = z.iter().any(|w| !cx.g.paths_nonempty(&src, w, &allowed));
        if blocked == want_blocked {
            return Some(Shared {
                v,
                s,
                u,
                a,
                b,
                x,
                y,
                z,
            });
        }
    }
    None
}

/// Branch fixing s and making v internal over {a, u} (and its mirror).
fn one_internal_branch(cx: &Ctx, internal: u32, leaf: u32, c1: u32, c2: u32) -> Child {
    let mut b = ChildBuilder::new(cx.inst);
    let children = VertexSet::from_iter(cx.n, [c1, c2]);
    b.attach(cx.g, internal, &children).fix(leaf);
    Child {
        instance: b.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    }
}

/// Fourth branch of rules 34/35: v and s internal forces a and b
/// internal too; a takes X, b takes Z = Y \ X.
fn double_internal_branch(cx: &Ctx, m: &Shared, marks: &VertexSet, min_drop: i64) -> Child {
    let mut b4 = ChildBuilder::new(cx.inst);
    b4.attach(cx.g, m.v, &VertexSet::from_iter(cx.n, [m.a, m.u]))
        .attach_one(cx.g, m.s, m.b)
        .attach(cx.g, m.a, &m.x)
        .attach(cx.g, m.b, &m.z)
        .mark_all(marks);
    Child {
        instance: b4.finish(cx.g),
        formula_drop: 4 + 4 * (m.x.count() as i64 - 1) + 4 * (m.z.count() as i64 - 1)
            - marks.count() as i64,
        min_drop,
    }
}

/// Rule 34: try all four role assignments; in the all-internal branch the
/// non-floating members of X and (when Z is large) Z are marked.
fn apply_r34(cx: &Ctx) -> Option<RuleAction> {
    let m = find_shared(cx, false)?;

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(m.v).fix(m.s).float_one(m.a).float_one(m.b);
    debug_assert!(!cx.inst.floating.contains(m.a) && !cx.inst.floating.contains(m.b));
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 16,
        min_drop: 16,
    };

    let z_marked = tilde(cx, &m.z);
    let marks = m.x.minus(&cx.inst.floating).union(&z_marked);
    let fourth = double_internal_branch(cx, &m, &marks, 9);

    Some(RuleAction::Branch(vec![
        first,
        one_internal_branch(cx, m.v, m.s, m.a, m.u),
        one_internal_branch(cx, m.s, m.v, m.u, m.b),
        fourth,
    ]))
}

/// Rule 35: as rule 34, but some w in Z rules out the both-leaves
/// branch, and all of (X u Y) \ F is marked in the last branch.
fn apply_r35(cx: &Ctx) -> Option<RuleAction> {
    let m = find_shared(cx, true)?;
    let marks = m.x.union(&m.y).minus(&cx.inst.floating);
    let third = double_internal_branch(cx, &m, &marks, 8);
    Some(RuleAction::Branch(vec![
        one_internal_branch(cx, m.v, m.s, m.a, m.u),
        one_internal_branch(cx, m.s, m.v, m.u, m.b),
        third,
    ]))
}

struct Small {
    v: u32,
    s: u32,
    u: u32,
    a: u32,
    b: u32,
}

fn find_r36(cx: &Ctx) -> Option<Small> {
    for (v, s) in sib_pairs(cx) {
        let Some((u, a, b)) = shared_neighbor_config(cx, v, s) else {
            continue;
        };
        let (x, y, _) = reach_sets_34(cx, v, s, u, a, b);
        if x.union(&y).count() <= 3 || x.count() <= 1 || y.is_subset_of(&x) {
            return Some(Small { v, s, u, a, b });
        }
    }
    None
}

/// Rule 36: the reach sets are too small for a and b to both be
/// branching internal vertices, so the all-internal branch is dropped.
fn apply_r36(cx: &Ctx) -> Option<RuleAction> {
    let m = find_r36(cx)?;

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(m.v).fix(m.s).float_one(m.a).float_one(m.b);
    debug_assert!(!cx.inst.floating.contains(m.a) && !cx.inst.floating.contains(m.b));
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 16,
        min_drop: 16,
    };

    Some(RuleAction::Branch(vec![
        first,
        one_internal_branch(cx, m.v, m.s, m.a, m.u),
        one_internal_branch(cx, m.s, m.v, m.u, m.b),
    ]))
}

// --- Rules 37-39: disjoint outside neighborhoods -------------------------

fn find_r37(cx: &Ctx) -> Option<(u32, u32)> {
    sib_pairs(cx).find(|&(v, s)| {
        let x = cx.out(v);
        let y = cx.out(s);
        x.count() == 2
            && y.count() == 2
            && x.is_disjoint_from(&y)
            && x.union(&y).intersect(&cx.inst.floating).count() <= 1
            && !private_vertex(cx, v, s)
    })
}

/// Rule 37: all four role assignments; fixing both v and s floats all
/// four outside neighbors.
fn apply_r37(cx: &Ctx) -> Option<RuleAction> {
    let (v, s) = find_r37(cx)?;
    let x = cx.out(v);
    let y = cx.out(s);
    let xy = x.union(&y);

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(v).fix(s).float_all(&xy);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 8 + 4 * xy.minus(&cx.inst.floating).count() as i64,
        min_drop: 20,
    };

    let mut b2 = ChildBuilder::new(cx.inst);
    b2.attach(cx.g, v, &x).fix(s);
    let second = Child {
        instance: b2.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    };

    let mut b3 = ChildBuilder::new(cx.inst);
    b3.attach(cx.g, s, &y).fix(v);
    let third = Child {
        instance: b3.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    };

    let mut b4 = ChildBuilder::new(cx.inst);
    b4.attach(cx.g, v, &x).attach(cx.g, s, &y);
    let fourth = Child {
        instance: b4.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    };

    Some(RuleAction::Branch(vec![first, second, third, fourth]))
}

struct Split {
    v: u32,
    s: u32,
    /// v's floating outside neighbor and its other one.
    a: u32,
    b: u32,
    /// s's floating outside neighbor and its other one.
    c: u32,
    d: u32,
}

/// Remaining configuration: disjoint outside pairs with exactly one
/// floating member on each side. Rule 38 wants every outside vertex to
/// stay reachable with b (resp. d) avoided; rule 39 takes the rest.
fn find_split(cx: &Ctx, want_full: bool) -> Option<Split> {
    for (v, s) in sib_pairs(cx) {
        let x = cx.out(v);
        let y = cx.out(s);
        if x.count() != 2 || y.count() != 2 || !x.is_disjoint_from(&y) {
            continue;
        }
        let xf = x.intersect(&cx.inst.floating);
        let yf = y.intersect(&cx.inst.floating);
        let (Some(a), Some(c)) = (xf.single(), yf.single()) else {
            continue;
        };
        let b = x.without(a).single().unwrap();
        let d = y.without(c).single().unwrap();
        let src = cx.sources.without(v).without(s);
        let full = {
            let ok_avoiding = |w: u32| {
                let cxall = cx.allowed.without(w);
                let closure = cx.g.reach_closure(&src, &cxall);
                cx.outside_tree
                    .iter()
                    .all(|t| cx.g.neighbors(t).intersects(&closure))
            };
            ok_avoiding(b) && ok_avoiding(d)
        };
        if full == want_full {
            return Some(Split { v, s, a, b, c, d });
        }
    }
    None
}

/// One-internal branch for rules 38/39: v takes both its neighbors as
/// children, s is fixed, and v's floating neighbor a becomes a fixed
/// leaf of the tree.
fn split_internal_branch(cx: &Ctx, v: u32, s: u32, a: u32, b: u32) -> Child {
    let mut bb = ChildBuilder::new(cx.inst);
    bb.attach(cx.g, v, &VertexSet::from_iter(cx.n, [a, b]))
        .fix(s)
        .fix(a);
    Child {
        instance: bb.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    }
}

fn split_double_branch(cx: &Ctx, m: &Split) -> Child {
    let mut bb = ChildBuilder::new(cx.inst);
    bb.attach(cx.g, m.v, &VertexSet::from_iter(cx.n, [m.a, m.b]))
        .attach(cx.g, m.s, &VertexSet::from_iter(cx.n, [m.c, m.d]));
    Child {
        instance: bb.finish(cx.g),
        formula_drop: 8,
        min_drop: 8,
    }
}

/// Rule 38: every outside vertex stays reachable with b (resp. d)
/// avoided, so the both-leaves branch is sound; four branches total.
fn apply_r38(cx: &Ctx) -> Option<RuleAction> {
    let m = find_split(cx, true)?;

    let mut b1 = ChildBuilder::new(cx.inst);
    b1.fix(m.v).fix(m.s).float_one(m.b).float_one(m.d);
    let first = Child {
        instance: b1.finish(cx.g),
        formula_drop: 16,
        min_drop: 16,
    };

    Some(RuleAction::Branch(vec![
        first,
        split_internal_branch(cx, m.v, m.s, m.a, m.b),
        split_internal_branch(cx, m.s, m.v, m.c, m.d),
        split_double_branch(cx, &m),
    ]))
}

/// Rule 39: the both-leaves branch of rule 38 would strand some vertex,
/// so only the three internal-role branches remain.
fn apply_r39(cx: &Ctx) -> Option<RuleAction> {
    let m = find_split(cx, false)?;
    Some(RuleAction::Branch(vec![
        split_internal_branch(cx, m.v, m.s, m.a, m.b),
        split_internal_branch(cx, m.s, m.v, m.c, m.d),
        split_double_branch(cx, &m),
    ]))
}
