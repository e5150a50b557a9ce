//! The ordered 39-rule system: first-match selection, per-rule condition
//! tests, instance transformations, and declared measure deltas.
//!
//! Rules 1-3 are terminal, rules 4-7 and 9 are simple reductions, rule 8
//! forces a vertex internal, rules 10-18 resolve marked vertices, rules
//! 19-23 handle open leaves without an open sibling, rules 24-28 mirror
//! them when the sibling has one outside neighbor, and rules 29-39 resolve
//! sibling pairs. Conditions are transcribed literally; ties inside a rule
//! are broken by smallest vertex id (then smallest partner id) so traces
//! are reproducible.

mod forced;
mod lone;
mod marked;
mod marked_sibling;
mod pairs;
mod simplify;
pub mod table;
mod terminal;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::instance::{DependencySnapshot, Instance};
use std::sync::Arc;

pub type RuleId = u8;

pub const RULE_COUNT: u8 = 39;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum RuleKind {
    Terminal,
    Reduction,
    Branching,
}

/// A single successor instance together with the drop the firing rule's
/// own formula predicts for it (in quarter units) and the smallest drop
/// the rule guarantees. The search asserts `measure(parent) -
/// measure(child) == formula_drop >= min_drop` on every explored child.
#[derive(Debug)]
pub struct Child {
    pub instance: Instance,
    pub formula_drop: i64,
    pub min_drop: i64,
}

#[derive(Debug)]
pub enum RuleAction {
    Accept,
    Reject,
    Reduce(Box<Child>),
    /// Ordered exactly as the rule lists its recursive calls; the search
    /// explores them in order and stops at the first accept. Later
    /// children are only sound to explore after earlier ones rejected.
    Branch(Vec<Child>),
}

#[derive(Debug)]
pub struct RuleOutcome {
    pub rule: RuleId,
    pub action: RuleAction,
}

/// Quantities every rule condition reads, computed once per node.
pub(crate) struct Ctx<'a> {
    pub g: &'a Graph,
    pub inst: &'a Instance,
    pub n: u32,
    pub vt: VertexSet,
    pub leaves: VertexSet,
    pub internal: VertexSet,
    /// N = leaves \ (L u M)
    pub open: VertexSet,
    /// M u N = leaves \ L
    pub undecided: VertexSet,
    /// Leaves a solution may attach through: (M u N) \ F. Floating
    /// vertices sitting in the tree are committed leaves, so they are
    /// excluded even before rule 4 converts them to fixed.
    pub sources: VertexSet,
    /// V \ V_T
    pub outside_tree: VertexSet,
    /// V \ (V_T u F)
    pub allowed: VertexSet,
    /// V \ (internal(T) u L u F): vertices whose role is open.
    pub pool: VertexSet,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a Graph, inst: &'a Instance) -> Self {
        let n = g.vertex_count();
        let vt = inst.tree.members().clone();
        let leaves = inst.tree.leaves().clone();
        let internal = vt.minus(&leaves);
        let open = leaves.minus(&inst.fixed).minus(&inst.marked);
        let undecided = leaves.minus(&inst.fixed);
        let sources = undecided.minus(&inst.floating);
        let outside_tree = VertexSet::full(n).minus(&vt);
        let allowed = outside_tree.minus(&inst.floating);
        let pool = VertexSet::full(n)
            .minus(&internal)
            .minus(&inst.fixed)
            .minus(&inst.floating);
        Ctx {
            g,
            inst,
            n,
            vt,
            leaves,
            internal,
            open,
            undecided,
            sources,
            outside_tree,
            allowed,
            pool,
        }
    }

    /// Neighbors of v outside the tree.
    pub fn out(&self, v: u32) -> VertexSet {
        self.g.neighbors(v).minus(&self.vt)
    }

    /// Open-leaf siblings of v: siblings(v) n N.
    pub fn open_siblings(&self, v: u32) -> VertexSet {
        self.inst.tree.siblings(v).intersect(&self.open)
    }

    /// Is every vertex outside the tree reachable from `sources` through
    /// `allowed`? Returns the first unreachable one otherwise.
    pub fn unreachable_outside(&self, sources: &VertexSet, allowed: &VertexSet) -> Option<u32> {
        let closure = self.g.reach_closure(sources, allowed);
        self.outside_tree
            .iter()
            .find(|&u| !self.g.neighbors(u).intersects(&closure))
    }
}

/// Copy-on-write construction of a successor instance. Attachments and
/// set updates mirror the firing rule's text; `finish` records dependency
/// snapshots (in verification mode) and validates the instance invariants
/// in debug builds.
pub(crate) struct ChildBuilder {
    inst: Instance,
    attached_parents: Vec<u32>,
}

impl ChildBuilder {
    pub fn new(parent: &Instance) -> Self {
        ChildBuilder {
            inst: parent.clone(),
            attached_parents: Vec::new(),
        }
    }

    pub fn attach(&mut self, g: &Graph, p: u32, xs: &VertexSet) -> &mut Self {
        debug_assert!(!xs.is_empty());
        debug_assert!(!self.inst.fixed.contains(p), "cannot attach below a fixed leaf");
        if !self.attached_parents.contains(&p) {
            self.attached_parents.push(p);
        }
        for x in xs.iter() {
            debug_assert!(g.has_edge(p, x), "attachment edge {p}-{x} missing");
            self.inst.tree.attach(p, x);
        }
        self
    }

    pub fn attach_one(&mut self, g: &Graph, p: u32, x: u32) -> &mut Self {
        let cap = self.inst.tree.members().capacity();
        self.attach(g, p, &VertexSet::singleton(cap, x))
    }

    /// L += v; M -= v; F -= v.
    pub fn fix(&mut self, v: u32) -> &mut Self {
        self.inst.fixed.insert(v);
        self.inst.marked.remove(v);
        self.inst.floating.remove(v);
        self
    }

    pub fn unmark(&mut self, v: u32) -> &mut Self {
        self.inst.marked.remove(v);
        self
    }

    pub fn unmark_all(&mut self, vs: &VertexSet) -> &mut Self {
        self.inst.marked.minus_with(vs);
        self
    }

    pub fn mark(&mut self, v: u32) -> &mut Self {
        self.inst.marked.insert(v);
        self
    }

    pub fn mark_all(&mut self, vs: &VertexSet) -> &mut Self {
        self.inst.marked.union_with(vs);
        self
    }

    /// F += vs \ L. Determined leaves never re-enter F; the rules only
    /// feed computed neighbor sets through here.
    pub fn float_all(&mut self, vs: &VertexSet) -> &mut Self {
        self.inst.floating.union_with(&vs.minus(&self.inst.fixed));
        self
    }

    pub fn float_one(&mut self, v: u32) -> &mut Self {
        if !self.inst.fixed.contains(v) {
            self.inst.floating.insert(v);
        }
        self
    }

    pub fn finish(mut self, g: &Graph) -> Instance {
        if self.inst.snapshots.is_some() {
            self.capture_snapshots();
        }
        if cfg!(debug_assertions) || self.inst.snapshots.is_some() {
            if let Err(e) = self.inst.validate(g) {
                panic!("rule produced an invalid instance: {e}");
            }
        }
        self.inst
    }

    /// For every vertex made internal by this rule, record the state the
    /// dependency claim refers to: the new tree with that parent's
    /// descendants removed, plus the new fixed/floating sets. Each child
    /// that lands in N gets a handle to its parent's snapshot.
    fn capture_snapshots(&mut self) {
        let tree = self.inst.tree.clone();
        let snaps = self.inst.snapshots.as_mut().unwrap();
        for &p in &self.attached_parents {
            let desc = tree.descendants(p);
            let members = tree.members().minus(&desc);
            let tree_leaves = tree.leaves().intersect(&members).with(p);
            let snap = Arc::new(DependencySnapshot {
                parent: p,
                tree_members: members,
                tree_leaves,
                fixed: self.inst.fixed.clone(),
                floating: self.inst.floating.clone(),
            });
            for &c in tree.children(p) {
                if !self.inst.fixed.contains(c) && !self.inst.marked.contains(c) {
                    snaps.insert(c, snap.clone());
                }
            }
        }
    }
}

/// Least rule id in 1..=39 whose condition holds. Exhaustiveness is
/// guaranteed by construction (rule 3 covers V = V_T, rules 1/2 and the
/// branching ladder cover the rest); running out of rules is a bug.
pub fn select_rule(g: &Graph, inst: &Instance) -> RuleId {
    let cx = Ctx::new(g, inst);
    for id in 1..=RULE_COUNT {
        if condition_holds(&cx, id) {
            if cfg!(debug_assertions) || inst.snapshots.is_some() {
                check_ladder(&cx, id);
            }
            return id;
        }
    }
    panic!("rule exhaustiveness violated: no rule applicable");
}

/// Apply rule `id`, which must be the selected rule for `inst`.
pub fn apply_rule(g: &Graph, inst: &Instance, id: RuleId) -> RuleOutcome {
    let cx = Ctx::new(g, inst);
    let action = match id {
        1 => terminal::apply_r1(&cx),
        2 => terminal::apply_r2(&cx),
        3 => terminal::apply_r3(&cx),
        4 => simplify::apply_r4(&cx),
        5 => simplify::apply_r5(&cx),
        6 => simplify::apply_r6(&cx),
        7 => simplify::apply_r7(&cx),
        8 => forced::apply_r8(&cx),
        9 => simplify::apply_r9(&cx),
        10..=18 => marked::apply(&cx, id),
        19..=23 => lone::apply(&cx, id),
        24..=28 => marked_sibling::apply(&cx, id),
        29..=39 => pairs::apply(&cx, id),
        _ => panic!("rule id {id} out of range"),
    };
    let action = action.unwrap_or_else(|| panic!("rule {id} applied but its condition does not hold"));
    RuleOutcome { rule: id, action }
}

fn condition_holds(cx: &Ctx, id: RuleId) -> bool {
    match id {
        1 => terminal::find_r1(cx).is_some(),
        2 => terminal::find_r2(cx),
        3 => terminal::find_r3(cx),
        4 => simplify::find_r4(cx).is_some(),
        5 => simplify::find_r5(cx).is_some(),
        6 => simplify::find_r6(cx).is_some(),
        7 => simplify::find_r7(cx).is_some(),
        8 => forced::find_r8(cx).is_some(),
        9 => simplify::find_r9(cx).is_some(),
        10..=18 => marked::condition_holds(cx, id),
        19..=23 => lone::condition_holds(cx, id),
        24..=28 => marked_sibling::condition_holds(cx, id),
        29..=39 => pairs::condition_holds(cx, id),
        _ => panic!("rule id {id} out of range"),
    }
}

/// Interstitial claims the rule order guarantees. Violations mean a rule
/// condition or action was transcribed wrong.
fn check_ladder(cx: &Ctx, chosen: RuleId) {
    if chosen > 4 {
        assert!(
            cx.leaves.is_disjoint_from(&cx.inst.floating),
            "ladder: floating tree leaf survived past rule 4"
        );
    }
    if chosen > 18 {
        assert!(cx.inst.marked.is_empty(), "ladder: marked vertex survived past rule 18");
    }
    if chosen > 23 {
        for v in cx.open.iter() {
            assert_eq!(
                cx.open_siblings(v).count(),
                1,
                "ladder: open leaf {v} lacks exactly one open sibling past rule 23"
            );
        }
    }
    if chosen > 28 {
        for v in cx.open.iter() {
            let o = cx.out(v);
            assert!(o.count() >= 2, "ladder: open leaf {v} has < 2 outside neighbors past rule 28");
            if o.count() == 2 {
                assert!(
                    !o.is_subset_of(&cx.inst.floating),
                    "ladder: open leaf {v} has both outside neighbors floating past rule 28"
                );
            }
        }
    }
    if chosen > 30 {
        for v in cx.open.iter() {
            for s in cx.open_siblings(v).iter() {
                let src = cx.sources.without(v).without(s);
                assert!(
                    cx.unreachable_outside(&src, &cx.allowed).is_none(),
                    "ladder: vertex privately reachable from pair ({v},{s}) past rule 30"
                );
            }
        }
    }
    if chosen > 31 {
        for v in cx.open.iter() {
            for s in cx.open_siblings(v).iter() {
                assert!(
                    cx.out(v).intersect(&cx.out(s)).is_subset_of(&cx.inst.floating),
                    "ladder: non-floating common outside neighbor of ({v},{s}) past rule 31"
                );
            }
        }
    }
    if chosen > 33 {
        for v in cx.open.iter() {
            assert_eq!(cx.out(v).count(), 2, "ladder: open leaf {v} without exactly 2 outside neighbors past rule 33");
        }
    }
}
