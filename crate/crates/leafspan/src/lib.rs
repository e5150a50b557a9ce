//! Exact solver for the k-leaf spanning tree problem.
//!
//! The decision procedure is a bounded search tree over intermediate
//! instances (a rooted subtree plus fixed/marked/floating leaf
//! commitments), driven by an ordered list of 39 rules whose branching
//! vectors all have roots below 3.188^0.5 under a quarter-unit measure.
//! A brute-force oracle over spanning trees and connected dominating
//! sets provides independent ground truth on small graphs, and the
//! vector-analysis module re-verifies the running-time accounting.

pub mod bitset;
pub mod cli;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rules;
pub mod search;
pub mod vectors;
pub mod verify;

pub use graph::Graph;
pub use instance::{Instance, Quarters, RootedTree};
pub use search::{find_max_leaf, solve, Decision, SolveOptions, Verdict};
