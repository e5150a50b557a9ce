//! Branching-vector arithmetic: composition, unique-positive-root
//! computation by bisection, klam values, and the re-verification report
//! for every branching rule's declared worst case.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum VectorError {
    #[error("branching vector components must be positive quarters, got {0}")]
    NonPositiveComponent(i64),
    #[error("branching vector may not be empty")]
    Empty,
    #[error("a branching vector needs at least two components to have a root")]
    NotBranching,
    #[error("compose index {0} out of range for a vector of length {1}")]
    BadIndex(usize, usize),
    #[error("klam base must be a finite number greater than 1, got {0}")]
    BadBase(f64),
    #[error("klam boundary too close to decide in float arithmetic for base {0}")]
    AmbiguousBoundary(f64),
}

/// Per-branch measure decreases in quarter units. Kept as exact integers
/// end to end; reals appear only inside root evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingVector {
    quarters: Vec<i64>,
}

impl BranchingVector {
    pub fn from_quarters(quarters: Vec<i64>) -> Result<Self, VectorError> {
        if quarters.is_empty() {
            return Err(VectorError::Empty);
        }
        if let Some(&bad) = quarters.iter().find(|&&q| q <= 0) {
            return Err(VectorError::NonPositiveComponent(bad));
        }
        Ok(BranchingVector { quarters })
    }

    pub fn quarters(&self) -> &[i64] {
        &self.quarters
    }

    pub fn len(&self) -> usize {
        self.quarters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quarters.is_empty()
    }

    /// Replace component b at `index` by {b + c : c in inner}, expanding
    /// (a, b+(c,d)) to (a, b+c, b+d).
    pub fn compose(&self, index: usize, inner: &BranchingVector) -> BranchingVector {
        assert!(
            index < self.quarters.len(),
            "{}",
            VectorError::BadIndex(index, self.quarters.len())
        );
        let b = self.quarters[index];
        let mut out = Vec::with_capacity(self.quarters.len() + inner.len() - 1);
        out.extend_from_slice(&self.quarters[..index]);
        out.extend(inner.quarters.iter().map(|c| b + c));
        out.extend_from_slice(&self.quarters[index + 1..]);
        BranchingVector { quarters: out }
    }

    /// The unique alpha > 1 with sum_i alpha^(-b_i) = 1, bracketed to
    /// width <= tol by bisection. The left side is strictly decreasing in
    /// alpha, so the bracket is guaranteed.
    pub fn root(&self, tol: f64) -> Result<f64, VectorError> {
        assert!(tol > 0.0);
        if self.quarters.len() < 2 {
            return Err(VectorError::NotBranching);
        }
        let f = |alpha: f64| -> f64 {
            self.quarters
                .iter()
                .map(|&q| alpha.powf(-(q as f64) / 4.0))
                .sum::<f64>()
                - 1.0
        };
        let mut lo = 1.0;
        let mut hi = 2.0;
        while f(hi) > 0.0 {
            hi *= 2.0;
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Largest k with base^k < 10^20. Computed from logarithms, then verified
/// by interval-arithmetic exponentiation; boundaries closer than float
/// error can certify are reported instead of guessed.
pub fn klam(base: f64) -> Result<u32, VectorError> {
    if !base.is_finite() || base <= 1.0 {
        return Err(VectorError::BadBase(base));
    }
    const LIMIT: f64 = 1e20;
    let guess = (LIMIT.ln() / base.ln()).floor();
    let guess = guess.max(0.0) as u32;
    // The log estimate can be off by one in either direction.
    for k in [guess.saturating_sub(1), guess, guess + 1, guess + 2] {
        let below = pow_interval(base, k);
        let above = pow_interval(base, k + 1);
        if below.1 < LIMIT && above.0 >= LIMIT {
            return Ok(k);
        }
        if below.0 < LIMIT && below.1 >= LIMIT {
            return Err(VectorError::AmbiguousBoundary(base));
        }
    }
    Err(VectorError::AmbiguousBoundary(base))
}

/// base^k as a directed-rounding interval via binary exponentiation.
/// Exact products (detected with a fused multiply-add) do not widen, so
/// powers of exactly representable bases stay point intervals.
fn pow_interval(base: f64, k: u32) -> (f64, f64) {
    fn mul_down(a: f64, b: f64) -> f64 {
        let p = a * b;
        if a.mul_add(b, -p) < 0.0 {
            p.next_down()
        } else {
            p
        }
    }
    fn mul_up(a: f64, b: f64) -> f64 {
        let p = a * b;
        if a.mul_add(b, -p) > 0.0 {
            p.next_up()
        } else {
            p
        }
    }
    let mut result = (1.0f64, 1.0f64);
    let mut sq = (base, base);
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = (mul_down(result.0, sq.0), mul_up(result.1, sq.1));
        }
        sq = (mul_down(sq.0, sq.0), mul_up(sq.1, sq.1));
        e >>= 1;
    }
    result
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRow {
    pub rule: u8,
    pub anchor: &'static str,
    pub vector_quarters: Vec<i64>,
    pub root: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    /// Every root must stay below this with positive margin.
    pub bound: f64,
    pub required_margin: f64,
    pub rows: Vec<RootRow>,
    pub all_pass: bool,
}

pub const ROOT_BOUND: f64 = 1.785497; // 3.188^0.5, rounded down
pub const ROOT_MARGIN: f64 = 1e-6;
pub const ROOT_TOL: f64 = 1e-9;

/// Recompute the root of every branching rule's declared worst-case
/// vector and compare against the global bound.
pub fn verify_all_rules(tol: f64) -> RootReport {
    let mut rows = Vec::new();
    for info in crate::rules::table::rule_table() {
        let Some(q) = info.worst_vector_quarters else {
            continue;
        };
        let v = BranchingVector::from_quarters(q.clone()).expect("table vector invalid");
        let root = v.root(tol).expect("table vector not branching");
        let margin = ROOT_BOUND - root;
        rows.push(RootRow {
            rule: info.id,
            anchor: info.anchor,
            vector_quarters: q,
            root,
            margin,
            pass: margin > ROOT_MARGIN,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    RootReport {
        bound: ROOT_BOUND,
        required_margin: ROOT_MARGIN,
        rows,
        all_pass,
    }
}

impl std::fmt::Display for RootReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:>4}  {:<26} {:<20} {:>10}  {:>11}  ok", "rule", "anchor", "vector", "root", "margin")?;
        for r in &self.rows {
            let vec_str = r
                .vector_quarters
                .iter()
                .map(|q| format!("{}", *q as f64 / 4.0))
                .collect::<Vec<_>>()
                .join(",");
            writeln!(
                f,
                "{:>4}  {:<26} {:<20} {:>10.6}  {:>11.2e}  {}",
                r.rule,
                r.anchor,
                format!("({vec_str})"),
                r.root,
                r.margin,
                if r.pass { "pass" } else { "FAIL" }
            )?;
        }
        writeln!(
            f,
            "bound {:.6}: {}",
            self.bound,
            if self.all_pass { "all roots below bound" } else { "SOME ROOT OUT OF BOUNDS" }
        )
    }
}
