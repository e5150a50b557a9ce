//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line. Tolerances are pinned here, in code.

mod common;

use common::*;
use leafspan::oracle::{max_leaf_bruteforce, min_cds_bruteforce, witness_is_valid};
use leafspan::search::{find_max_leaf, solve, SolveOptions};
use leafspan::vectors::{klam, verify_all_rules, ROOT_MARGIN, ROOT_TOL};

fn plain() -> SolveOptions {
    SolveOptions { witness: false, verify: false, parallel_roots: false }
}

fn verifying() -> SolveOptions {
    SolveOptions { witness: false, verify: true, parallel_roots: false }
}

/// Criterion 1: solver = oracle on every connected graph with <= 7
/// vertices (exhaustive up to isomorphism) for every k in 1..=n. Zero
/// tolerance.
#[test]
fn criterion_1_oracle_equivalence_exhaustive() {
    let corpus = exhaustive_corpus();
    let mut graphs = 0u64;
    let mut queries = 0u64;
    for g in corpus {
        let truth = max_leaf_bruteforce(g).expect("corpus graph oracle-sized").max_leaves;
        for k in 1..=g.vertex_count() {
            let got = solve(g, k, &plain()).is_yes();
            assert_eq!(
                got,
                truth >= k,
                "solver disagrees with oracle on n={} m={} k={k} (oracle max {truth})",
                g.vertex_count(),
                g.edge_count()
            );
            queries += 1;
        }
        graphs += 1;
    }
    assert_eq!(graphs, 996, "exhaustive corpus should hold 996 classes");
    println!("[criterion 1] PASS oracle equivalence on {graphs} graphs, {queries} decisions");
}

/// Criterion 2: solver = oracle on 500 seeded random connected graphs,
/// n in 8..=10, p in {0.2, 0.4, 0.7}, all k. Zero tolerance.
#[test]
fn criterion_2_oracle_equivalence_randomized() {
    let corpus = random_corpus(0x5eed, 500);
    let mut queries = 0u64;
    for (i, g) in corpus.iter().enumerate() {
        let truth = max_leaf_bruteforce(g).expect("random graph oracle-sized").max_leaves;
        for k in 1..=g.vertex_count() {
            let got = solve(g, k, &plain()).is_yes();
            assert_eq!(
                got,
                truth >= k,
                "solver disagrees with oracle on random graph {i} (n={} m={}) at k={k}",
                g.vertex_count(),
                g.edge_count()
            );
            queries += 1;
        }
    }
    println!("[criterion 2] PASS oracle equivalence on 500 random graphs, {queries} decisions");
}

/// Criterion 3: every branching rule's declared worst-case vector
/// (composed ones included) has root < 1.785497 with margin > 1e-6 at
/// solver tolerance 1e-9.
#[test]
fn criterion_3_root_reverification() {
    let report = verify_all_rules(ROOT_TOL);
    assert_eq!(report.rows.len(), 28, "all branching rules must be covered");
    for row in &report.rows {
        assert!(
            row.pass,
            "rule {} root {:.9} violates bound {} (margin {:.3e} <= {ROOT_MARGIN})",
            row.rule, row.root, report.bound, row.margin
        );
    }
    let tightest = report
        .rows
        .iter()
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .unwrap();
    println!(
        "[criterion 3] PASS 28 roots below {}; tightest rule {} at {:.9} (margin {:.2e})",
        report.bound, tightest.rule, tightest.root, tightest.margin
    );
}

/// Criterion 4: klam values of the historical running-time bases.
/// Exact integers.
#[test]
fn criterion_4_klam_reproduction() {
    let table: [(f64, u32); 8] = [
        (3.188, 39),
        (3.46, 37),
        (3.72, 35),
        (4.0, 33),
        (6.75, 24),
        (8.12, 22),
        (9.49, 20),
        (14.23, 17),
    ];
    let mut failures = Vec::new();
    for (base, expected) in table {
        let got = klam(base).unwrap();
        let ok = got == expected;
        println!(
            "[criterion 4] {} klam({base}) = {got}, expected {expected}",
            if ok { "pass" } else { "FAIL" }
        );
        if !ok {
            failures.push((base, expected, got));
        }
    }
    if !failures.is_empty() {
        // Known defect in the source table: 8.12^22 = 1.0238e20 >= 1e20,
        // so the strict definition gives 21 while the table prints 22
        // (the table's entry was computed from the cited algorithm's
        // unrounded base, which is below 8.1114 = 1e20^(1/22)).
        panic!("[criterion 4] FAIL {failures:?}");
    }
    println!("[criterion 4] PASS all 8 table values");
}

/// Criterion 5: on at least 10^4 explored children from the corpus, the
/// realized quarter-measure drop equals each rule's formula and respects
/// its declared minimum (checked inside the search; any violation
/// panics). Exact integer arithmetic, zero tolerance.
#[test]
fn criterion_5_measure_accounting() {
    let mut checks = 0u64;
    let mut nodes = 0u64;
    for g in exhaustive_corpus() {
        for k in 3..=g.vertex_count() {
            let v = solve(g, k, &verifying());
            checks += v.stats.delta_checks;
            nodes += v.stats.nodes_visited;
        }
    }
    assert!(
        checks >= 10_000,
        "only {checks} delta checks ran; need at least 10^4"
    );
    println!("[criterion 5] PASS {checks} measure-delta checks over {nodes} nodes, zero violations");
}

/// Criterion 6: max_leaves = n - min_cds for every corpus graph with
/// 3 <= n <= 9. Zero tolerance.
#[test]
fn criterion_6_cds_duality() {
    let mut count = 0u64;
    let small = exhaustive_corpus().iter();
    let random = random_corpus(0xd0a1, 200);
    for g in small.chain(random.iter()) {
        let n = g.vertex_count();
        if !(3..=9).contains(&n) {
            continue;
        }
        let ml = max_leaf_bruteforce(g).unwrap();
        let cds = min_cds_bruteforce(g).unwrap();
        assert_eq!(
            ml.max_leaves,
            n - cds,
            "duality failed on n={n} m={}",
            g.edge_count()
        );
        assert!(witness_is_valid(g, &ml), "oracle witness invalid on n={n}");
        count += 1;
    }
    println!("[criterion 6] PASS leaf/dominating-set duality on {count} graphs");
}

/// Criterion 7 (soft): nodes_visited <= 10 * n * 1.785497^(2k + 0.25).
/// Violations are reported per instance for investigation, not failed.
#[test]
fn criterion_7_search_size_sanity() {
    let alpha: f64 = 1.785497;
    let mut worst_ratio = 0.0f64;
    let mut violations = 0u64;
    let mut runs = 0u64;
    let random = random_corpus(0x7ab1e, 100);
    for g in exhaustive_corpus().iter().chain(random.iter()) {
        let n = g.vertex_count();
        for k in 3..=n {
            let v = solve(g, k, &plain());
            let bound = 10.0 * n as f64 * alpha.powf(2.0 * k as f64 + 0.25);
            let ratio = v.stats.nodes_visited as f64 / bound;
            if ratio > worst_ratio {
                worst_ratio = ratio;
            }
            if v.stats.nodes_visited as f64 > bound {
                violations += 1;
                println!(
                    "[criterion 7] SOFT VIOLATION n={n} m={} k={k}: {} nodes > bound {bound:.0}",
                    g.edge_count(),
                    v.stats.nodes_visited
                );
            }
            runs += 1;
        }
    }
    println!(
        "[criterion 7] {} {runs} runs within 10*n*{alpha}^(2k+1/4); worst ratio {worst_ratio:.4}",
        if violations == 0 { "PASS" } else { "SOFT-FAIL" }
    );
}

/// Criterion 8: the dependency-claim verifier holds at every node over
/// the whole corpus (violations panic inside the search). The
/// no-solution item of the claim is validated indirectly by criteria
/// 1 and 2.
#[test]
fn criterion_8_dependency_claim() {
    let mut claim_checks = 0u64;
    let mut nodes = 0u64;
    let random = random_corpus(0xc1a13, 150);
    for g in exhaustive_corpus().iter().chain(random.iter()) {
        for k in 3..=g.vertex_count() {
            let v = solve(g, k, &verifying());
            claim_checks += v.stats.claim_checks;
            nodes += v.stats.nodes_visited;
        }
    }
    assert!(claim_checks > 0);
    println!(
        "[criterion 8] PASS dependency claim verified on {claim_checks} open leaves across {nodes} nodes"
    );
}

/// Criterion 9: named-graph regressions. The Petersen value is the
/// frozen result of the oracle's first run.
#[test]
fn criterion_9_named_graphs() {
    let opts = plain();
    assert_eq!(find_max_leaf(&path(7), &opts), Ok(2));
    assert_eq!(find_max_leaf(&cycle(6), &opts), Ok(2));
    assert_eq!(find_max_leaf(&cycle(9), &opts), Ok(2));
    for n in 3..=8 {
        assert_eq!(find_max_leaf(&complete(n), &opts), Ok(n - 1));
    }
    for t in 2..=8 {
        assert_eq!(find_max_leaf(&star(t), &opts), Ok(t));
    }
    let p = petersen();
    assert_eq!(max_leaf_bruteforce(&p).unwrap().max_leaves, 6);
    assert_eq!(find_max_leaf(&p, &opts), Ok(6));
    assert!(solve(&p, 6, &opts).is_yes());
    assert!(!solve(&p, 7, &opts).is_yes());
    println!("[criterion 9] PASS named-graph regressions (path 2, cycle 2, K_n n-1, K_1t t, Petersen 6)");
}
