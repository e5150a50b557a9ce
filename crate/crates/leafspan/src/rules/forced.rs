//! Rule 8: some vertex outside the tree is reachable only through the
//! undecided leaf v, so v must be internal in any solution; its outside
//! neighbors all become its children.

use super::{Child, ChildBuilder, Ctx, RuleAction};
use crate::bitset::VertexSet;

pub(super) struct Match8 {
    pub v: u32,
    pub x: VertexSet,
}

pub(super) fn find_r8(cx: &Ctx) -> Option<Match8> {
    for v in cx.undecided.iter() {
        let src = cx.sources.without(v);
        if cx.unreachable_outside(&src, &cx.allowed).is_some() {
            let x = cx.out(v);
            debug_assert!(!x.is_empty(), "rule 1 should have fired before rule 8");
            return Some(Match8 { v, x });
        }
    }
    None
}

pub(super) fn apply_r8(cx: &Ctx) -> Option<RuleAction> {
    let Match8 { v, x } = find_r8(cx)?;
    let was_marked = i64::from(cx.inst.marked.contains(v));
    let mut b = ChildBuilder::new(cx.inst);
    b.attach(cx.g, v, &x).unmark(v);
    let (formula_drop, min_drop) = if x.count() == 1 {
        (was_marked, 0)
    } else {
        // v joins children_{|X|}; its open sibling (if any) and all of X
        // are marked so the dependency claim keeps holding.
        let sib_open = cx.open_siblings(v);
        b.mark_all(&sib_open).mark_all(&x);
        (
            4 * (x.count() as i64 - 1) + was_marked - sib_open.count() as i64 - x.count() as i64,
            1,
        )
    };
    Some(RuleAction::Reduce(Box::new(Child {
        instance: b.finish(cx.g),
        formula_drop,
        min_drop,
    })))
}
