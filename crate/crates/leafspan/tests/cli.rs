//! Command-line integration: exit codes, stats document schema, and the
//! oracle/solver agreement on file inputs.

use leafspan::cli::run_cli;
use std::path::PathBuf;

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("leafspan-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> i32 {
    run_cli(std::iter::once("leafspan").chain(args.iter().copied()))
}

const PETERSEN: &str = "p edge 10 15
e 1 2
e 2 3
e 3 4
e 4 5
e 5 1
e 1 6
e 2 7
e 3 8
e 4 9
e 5 10
e 6 8
e 7 9
e 8 10
e 9 6
e 10 7
";

const C5: &str = "a b\nb c\nc d\nd e\ne a\n";

#[test]
fn solve_exit_codes() {
    let petersen = write_temp("petersen.col", PETERSEN);
    let c5 = write_temp("c5.txt", C5);
    assert_eq!(run(&["solve", "--input", petersen.to_str().unwrap(), "--k", "6"]), 0);
    assert_eq!(run(&["solve", "--input", petersen.to_str().unwrap(), "--k", "7"]), 1);
    assert_eq!(run(&["solve", "--input", c5.to_str().unwrap(), "--k", "3"]), 1);
    assert_eq!(run(&["solve", "--input", c5.to_str().unwrap(), "--k", "2"]), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["solve", "--k", "3"]), 2); // missing --input
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["solve", "--input", "/nonexistent/graph", "--k", "2"]), 2);
    let bad = write_temp("bad.col", "p edge 3 1\ne 1 9\n");
    assert_eq!(run(&["solve", "--input", bad.to_str().unwrap(), "--k", "2"]), 2);
}

#[test]
fn stats_document_schema() {
    let petersen = write_temp("petersen2.col", PETERSEN);
    let stats = petersen.with_file_name("stats.json");
    let code = run(&[
        "solve",
        "--input",
        petersen.to_str().unwrap(),
        "--k",
        "6",
        "--witness",
        "--verify",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(doc["decision"], "yes");
    assert_eq!(doc["k"], 6);
    assert_eq!(doc["n"], 10);
    assert_eq!(doc["m"], 15);
    assert!(doc["nodes_visited"].as_u64().unwrap() > 0);
    assert!(doc["per_rule_firings"].is_object());
    assert!(doc["max_depth"].as_u64().is_some());
    assert_eq!(doc["initial_measure_quarters"], 49);
    assert!(doc["elapsed_ms"].as_f64().is_some());
    assert!(doc["witness_leaf_count"].as_u64().unwrap() >= 6);
}

#[test]
fn maxleaf_and_oracle_agree() {
    let petersen = write_temp("petersen3.col", PETERSEN);
    assert_eq!(run(&["maxleaf", "--input", petersen.to_str().unwrap()]), 0);
    assert_eq!(run(&["oracle", "--input", petersen.to_str().unwrap()]), 0);
    assert_eq!(run(&["oracle", "--input", petersen.to_str().unwrap(), "--k", "6"]), 0);
    assert_eq!(run(&["oracle", "--input", petersen.to_str().unwrap(), "--k", "7"]), 1);

    // solve and oracle agree on every oracle-sized input
    let c5 = write_temp("c5b.txt", C5);
    for k in ["2", "3", "4"] {
        let s = run(&["solve", "--input", c5.to_str().unwrap(), "--k", k]);
        let o = run(&["oracle", "--input", c5.to_str().unwrap(), "--k", k]);
        assert_eq!(s, o, "solver and oracle exit codes differ at k={k}");
    }
}

#[test]
fn maxleaf_disconnected_reports_no_spanning_tree() {
    let disc = write_temp("disc.col", "p edge 4 2\ne 1 2\ne 3 4\n");
    assert_eq!(run(&["maxleaf", "--input", disc.to_str().unwrap()]), 1);
}

#[test]
fn oracle_guard_refuses_large_graphs() {
    let mut text = String::from("p edge 13 12\n");
    for i in 1..13 {
        text.push_str(&format!("e {} {}\n", i, i + 1));
    }
    let big = write_temp("big.col", &text);
    assert_eq!(run(&["oracle", "--input", big.to_str().unwrap()]), 2);
    // the solver itself has no such guard
    assert_eq!(run(&["solve", "--input", big.to_str().unwrap(), "--k", "2"]), 0);
}

#[test]
fn analyze_passes_and_writes_json() {
    let dir = std::env::temp_dir().join("leafspan-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("report.json");
    assert_eq!(run(&["analyze", "--json", json.to_str().unwrap()]), 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 28);
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn rules_emits_table() {
    assert_eq!(run(&["rules"]), 0);
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["solve", "--help"]), 0);
}
