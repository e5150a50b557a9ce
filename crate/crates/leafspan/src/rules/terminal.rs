//! Rules 1-3: instances decidable on the spot.

use super::{Ctx, RuleAction};

/// Rule 1: some vertex outside the tree cannot be reached from any
/// attachable leaf through undetermined vertices. No extension can ever
/// pick it up, so reject.
pub(super) fn find_r1(cx: &Ctx) -> Option<u32> {
    cx.unreachable_outside(&cx.sources, &cx.allowed)
}

pub(super) fn apply_r1(cx: &Ctx) -> Option<RuleAction> {
    find_r1(cx).map(|_| RuleAction::Reject)
}

/// Rule 2: the tree already has k leaves, or k vertices are committed to
/// be leaves. Rule 1 not firing means the tree extends to a spanning tree
/// that keeps every committed leaf a leaf, so accept.
pub(super) fn find_r2(cx: &Ctx) -> bool {
    let committed = cx.inst.fixed.count() as i64 + cx.inst.floating.count() as i64;
    (cx.inst.k as i64) <= (cx.leaves.count() as i64).max(committed)
}

pub(super) fn apply_r2(cx: &Ctx) -> Option<RuleAction> {
    find_r2(cx).then_some(RuleAction::Accept)
}

/// Rule 3: the tree is spanning but (rule 2 failed) has too few leaves.
pub(super) fn find_r3(cx: &Ctx) -> bool {
    cx.vt.count() == cx.n
}

pub(super) fn apply_r3(cx: &Ctx) -> Option<RuleAction> {
    find_r3(cx).then_some(RuleAction::Reject)
}
