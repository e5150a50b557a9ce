//! The top-level decision procedure: run the bounded search tree from
//! every root, collect statistics, optionally extract a witness.

use crate::graph::Graph;
use crate::instance::{complete_witness, complies, initial_instances, Instance};
use crate::rules::{apply_rule, select_rule, Child, RuleAction, RULE_COUNT};
use crate::verify::check_dependency_claim;
use serde::Serialize;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    /// Firing count per rule id (index 0 unused).
    pub per_rule_firings: Vec<u64>,
    pub max_depth: u32,
    pub initial_measure_quarters: i64,
    pub elapsed: Duration,
    /// Children whose measure drop was checked against the rule formula.
    pub delta_checks: u64,
    /// Open leaves examined by the dependency-claim verifier.
    pub claim_checks: u64,
}

impl SearchStats {
    fn new(k: u32) -> Self {
        SearchStats {
            nodes_visited: 0,
            per_rule_firings: vec![0; RULE_COUNT as usize + 1],
            max_depth: 0,
            initial_measure_quarters: 8 * k as i64 + 1,
            elapsed: Duration::ZERO,
            delta_checks: 0,
            claim_checks: 0,
        }
    }

    fn merge(&mut self, other: &SearchStats) {
        self.nodes_visited += other.nodes_visited;
        for (a, b) in self.per_rule_firings.iter_mut().zip(&other.per_rule_firings) {
            *a += b;
        }
        self.max_depth = self.max_depth.max(other.max_depth);
        self.delta_checks += other.delta_checks;
        self.claim_checks += other.claim_checks;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Decision {
    Yes,
    No,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub edges: Vec<(u32, u32)>,
    /// Degree-1 vertices of the spanning tree.
    pub leaf_count: u32,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub decision: Decision,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Extract a spanning tree witnessing a yes answer.
    pub witness: bool,
    /// Check the dependency claim and the per-rule measure deltas at
    /// every node (roughly 2-4x slower).
    pub verify: bool,
    /// Solve the per-root instances on separate threads, first accept
    /// wins. Exploration inside one root stays sequential.
    pub parallel_roots: bool,
}

struct NodeCtx<'a> {
    g: &'a Graph,
    stats: &'a mut SearchStats,
    verify: bool,
    depth_limit: u32,
    cancel: Option<&'a AtomicBool>,
}

/// Decide whether the graph has a spanning tree with at least k leaves
/// (degree-1 vertices). Rooted-search conventions diverge from the
/// unrooted count only below k = 3, so tiny cases are answered directly.
pub fn solve(g: &Graph, k: u32, opts: &SolveOptions) -> Verdict {
    let start = Instant::now();
    let mut stats = SearchStats::new(k);
    let n = g.vertex_count();

    let done = |decision: Decision, witness: Option<Witness>, stats: &mut SearchStats| {
        stats.elapsed = start.elapsed();
        Verdict {
            decision,
            witness: witness.filter(|_| opts.witness),
            stats: stats.clone(),
        }
    };

    if n == 0 {
        let d = if k == 0 { Decision::Yes } else { Decision::No };
        return done(d, None, &mut stats);
    }
    if !g.is_connected() {
        return done(Decision::No, None, &mut stats);
    }
    if n == 1 {
        let d = if k <= 1 { Decision::Yes } else { Decision::No };
        let w = Witness { edges: vec![], leaf_count: 1 };
        return done(d, (k <= 1).then_some(w), &mut stats);
    }
    if k <= 2 {
        // Any spanning tree of a connected graph on >= 2 vertices has at
        // least two degree-1 vertices.
        let w = opts.witness.then(|| {
            let inst = Instance::initial(g, 0, k);
            let s = complete_witness(g, &inst).expect("connected graph must span");
            Witness { edges: s.edges(), leaf_count: s.unrooted_leaf_count() }
        });
        return done(Decision::Yes, w, &mut stats);
    }

    // Any tree with >= 3 leaves has an internal vertex; rooting there
    // makes the rooted and unrooted leaf sets coincide, so scanning all
    // roots decides the unrooted question for k >= 3.
    let roots = initial_instances(g, k);
    let depth_limit = 8 * k + 2 * n + 16;
    let accepting = if opts.parallel_roots {
        solve_roots_parallel(g, roots, &mut stats, opts, depth_limit)
    } else {
        let mut found = None;
        for inst in roots {
            let inst = if opts.verify { inst.with_verification() } else { inst };
            let mut cx = NodeCtx {
                g,
                stats: &mut stats,
                verify: opts.verify,
                depth_limit,
                cancel: None,
            };
            if let Some(acc) = run_node(&inst, 0, &mut cx) {
                found = Some(acc);
                break;
            }
        }
        found
    };

    match accepting {
        Some(acc) => {
            let w = opts.witness.then(|| extract_witness(g, &acc, k));
            done(Decision::Yes, w, &mut stats)
        }
        None => done(Decision::No, None, &mut stats),
    }
}

fn solve_roots_parallel(
    g: &Graph,
    roots: Vec<Instance>,
    stats: &mut SearchStats,
    opts: &SolveOptions,
    depth_limit: u32,
) -> Option<Instance> {
    let cancel = AtomicBool::new(false);
    let k = roots.first().map(|i| i.k).unwrap_or(0);
    let results: Vec<(Option<Instance>, SearchStats)> = std::thread::scope(|scope| {
        let handles: Vec<_> = roots
            .into_iter()
            .map(|inst| {
                let cancel = &cancel;
                scope.spawn(move || {
                    let inst = if opts.verify { inst.with_verification() } else { inst };
                    let mut local = SearchStats::new(k);
                    let mut cx = NodeCtx {
                        g,
                        stats: &mut local,
                        verify: opts.verify,
                        depth_limit,
                        cancel: Some(cancel),
                    };
                    let acc = run_node(&inst, 0, &mut cx);
                    if acc.is_some() {
                        cancel.store(true, Ordering::Relaxed);
                    }
                    (acc, local)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut accepting = None;
    for (acc, local) in results {
        stats.merge(&local);
        if accepting.is_none() {
            accepting = acc;
        }
    }
    accepting
}

fn extract_witness(g: &Graph, accepting: &Instance, k: u32) -> Witness {
    let s = complete_witness(g, accepting).expect("accepting node must extend to a spanning tree");
    let commitments = accepting.fixed.union(&accepting.floating);
    debug_assert!(complies(g, &s, &accepting.tree, &commitments));
    let leaf_count = s.unrooted_leaf_count();
    assert!(leaf_count >= k, "witness has {leaf_count} leaves, needed {k}");
    Witness { edges: s.edges(), leaf_count }
}

/// One node of the bounded search tree. Applies the first applicable
/// rule; explores branch children in order with accept short-circuit.
/// Returns the accepting instance, if any.
fn run_node(inst: &Instance, depth: u32, cx: &mut NodeCtx) -> Option<Instance> {
    if cx.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
        return None;
    }
    cx.stats.nodes_visited += 1;
    cx.stats.max_depth = cx.stats.max_depth.max(depth);
    assert!(
        depth <= cx.depth_limit,
        "search depth {depth} exceeds progress bound {}",
        cx.depth_limit
    );
    if cx.verify {
        match check_dependency_claim(cx.g, inst) {
            Ok(c) => cx.stats.claim_checks += c,
            Err(e) => panic!("dependency claim violated at depth {depth}: {e}"),
        }
    }

    let id = select_rule(cx.g, inst);
    cx.stats.per_rule_firings[id as usize] += 1;
    let outcome = apply_rule(cx.g, inst, id);
    debug_assert_eq!(outcome.rule, id);
    match outcome.action {
        RuleAction::Accept => Some(inst.clone()),
        RuleAction::Reject => None,
        RuleAction::Reduce(child) => {
            check_drop(inst, &child, id, cx);
            run_node(&child.instance, depth + 1, cx)
        }
        RuleAction::Branch(children) => {
            debug_assert!(children.len() >= 2, "rule {id} branched with < 2 children");
            for child in &children {
                check_drop(inst, child, id, cx);
                if let Some(acc) = run_node(&child.instance, depth + 1, cx) {
                    return Some(acc);
                }
            }
            None
        }
    }
}

fn check_drop(parent: &Instance, child: &Child, rule: u8, cx: &mut NodeCtx) {
    if !cx.verify && !cfg!(debug_assertions) {
        return;
    }
    let actual = (parent.measure() - child.instance.measure()).0;
    assert_eq!(
        actual, child.formula_drop,
        "rule {rule}: measured drop {actual}q differs from its formula {}q",
        child.formula_drop
    );
    assert!(
        actual >= child.min_drop,
        "rule {rule}: drop {actual}q below declared minimum {}q",
        child.min_drop
    );
    cx.stats.delta_checks += 1;
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MaxLeafError {
    #[error("graph has no spanning tree (disconnected)")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
}

/// Largest k for which the graph has a spanning tree with >= k leaves,
/// by ascending decision queries (the problem is monotone in k).
pub fn find_max_leaf(g: &Graph, opts: &SolveOptions) -> Result<u32, MaxLeafError> {
    if g.vertex_count() == 0 {
        return Err(MaxLeafError::Empty);
    }
    if !g.is_connected() {
        return Err(MaxLeafError::Disconnected);
    }
    if g.vertex_count() == 1 {
        return Ok(1);
    }
    let mut best = 2;
    for k in 3..=g.vertex_count() {
        if solve(g, k, opts).is_yes() {
            best = k;
        } else {
            break;
        }
    }
    Ok(best)
}
