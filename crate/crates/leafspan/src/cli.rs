//! Command-line surface: solve / maxleaf / oracle / analyze / rules.
//! Exit codes: 0 = yes or value computed, 1 = no, 2 = usage or input
//! error.

use crate::io::{parse_graph, GraphDocument};
use crate::oracle;
use crate::search::{self, SolveOptions};
use crate::vectors::{self, ROOT_TOL};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "leafspan", version, about = "Exact solver for the k-leaf spanning tree problem")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArg {
    /// Graph file: DIMACS edge format or a whitespace edge list.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the graph has a spanning tree with at least k leaves.
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Requested number of leaves.
        #[arg(long)]
        k: u32,
        /// Print a witness spanning tree on yes answers.
        #[arg(long)]
        witness: bool,
        /// Check the dependency claim and measure deltas at every node.
        #[arg(long)]
        verify: bool,
        /// Write a JSON stats document here.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Solve the per-root searches on separate threads.
        #[arg(long)]
        all_roots_parallel: bool,
    },
    /// Compute the maximum leaf count over all spanning trees.
    Maxleaf {
        #[command(flatten)]
        input: InputArg,
    },
    /// Brute-force reference answer (small graphs only).
    Oracle {
        #[command(flatten)]
        input: InputArg,
        /// With k: answer the decision question; without: print the maximum.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Re-verify every branching rule's root and print the klam table.
    Analyze {
        /// Also write the report as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit the rule table as JSON.
    Rules,
}

#[derive(Serialize)]
struct StatsDoc {
    decision: &'static str,
    k: u32,
    n: u32,
    m: u32,
    nodes_visited: u64,
    per_rule_firings: BTreeMap<u8, u64>,
    max_depth: u32,
    initial_measure_quarters: i64,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_leaf_count: Option<u32>,
}

pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Solve { input, k, witness, verify, stats, all_roots_parallel } => {
            cmd_solve(&input.input, k, witness, verify, stats.as_deref(), all_roots_parallel)
        }
        Cmd::Maxleaf { input } => cmd_maxleaf(&input.input),
        Cmd::Oracle { input, k } => cmd_oracle(&input.input, k),
        Cmd::Analyze { json } => cmd_analyze(json.as_deref()),
        Cmd::Rules => {
            println!(
                "{}",
                serde_json::to_string_pretty(&crate::rules::table::rule_table()).unwrap()
            );
            0
        }
    }
}

fn load(path: &Path) -> Result<GraphDocument, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_solve(
    path: &Path,
    k: u32,
    witness: bool,
    verify: bool,
    stats_path: Option<&Path>,
    parallel: bool,
) -> i32 {
    let doc = match load(path) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let opts = SolveOptions { witness, verify, parallel_roots: parallel };
    let verdict = search::solve(&doc.graph, k, &opts);
    let yes = verdict.is_yes();
    println!("{}", if yes { "yes" } else { "no" });
    if let Some(w) = &verdict.witness {
        println!("witness with {} leaves:", w.leaf_count);
        for &(u, v) in &w.edges {
            println!("  {} {}", doc.label(u), doc.label(v));
        }
    }
    if let Some(p) = stats_path {
        let s = &verdict.stats;
        let doc = StatsDoc {
            decision: if yes { "yes" } else { "no" },
            k,
            n: doc.graph.vertex_count(),
            m: doc.graph.edge_count(),
            nodes_visited: s.nodes_visited,
            per_rule_firings: s
                .per_rule_firings
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &c)| c > 0)
                .map(|(id, &c)| (id as u8, c))
                .collect(),
            max_depth: s.max_depth,
            initial_measure_quarters: s.initial_measure_quarters,
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
            witness_leaf_count: verdict.witness.as_ref().map(|w| w.leaf_count),
        };
        if let Err(e) = std::fs::write(p, serde_json::to_string_pretty(&doc).unwrap()) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return 2;
        }
    }
    if yes {
        0
    } else {
        1
    }
}

fn cmd_maxleaf(path: &Path) -> i32 {
    let doc = match load(path) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match search::find_max_leaf(&doc.graph, &SolveOptions::default()) {
        Ok(best) => {
            println!("{best}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

fn cmd_oracle(path: &Path, k: Option<u32>) -> i32 {
    let doc = match load(path) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let result = match oracle::max_leaf_bruteforce(&doc.graph) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match k {
        Some(k) => {
            let yes = result.max_leaves >= k;
            println!("{}", if yes { "yes" } else { "no" });
            if yes {
                0
            } else {
                1
            }
        }
        None => {
            println!("{}", result.max_leaves);
            0
        }
    }
}

fn cmd_analyze(json: Option<&Path>) -> i32 {
    let report = vectors::verify_all_rules(ROOT_TOL);
    print!("{report}");
    println!();
    println!("klam values:");
    for base in [14.23, 9.49, 8.12, 6.75, 4.0, 3.72, 3.46, 3.19, 3.188] {
        match vectors::klam(base) {
            Ok(k) => println!("  {base:>6}^k < 1e20 up to k = {k}"),
            Err(e) => println!("  {base:>6}: {e}"),
        }
    }
    let klam_39 = vectors::klam(3.188) == Ok(39);
    println!();
    println!(
        "search bounded by 3.188^k: klam value {}",
        if klam_39 { "39" } else { "NOT 39 (check)" }
    );
    if let Some(p) = json {
        if let Err(e) = std::fs::write(p, serde_json::to_string_pretty(&report).unwrap()) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return 2;
        }
    }
    if report.all_pass && klam_39 {
        0
    } else {
        1
    }
}
