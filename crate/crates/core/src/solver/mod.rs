//! Star-discrepancy subset selection: choose `m` of the `n` points of a set
//! so that the chosen subset has the smallest possible star discrepancy.
//!
//! [`bb_subset`] solves the problem exactly by branch-and-bound;
//! [`brute_force_subset`] enumerates every subset and serves as an oracle;
//! [`greedy_subset`] and [`random_subset_search`] are heuristics.
//!
//! All solvers accept any point set. Internally they work on the
//! normalized order (sorted by first coordinate, ties by the following
//! coordinates); reported indices refer to the set as passed in.

mod bb;
mod bounds;
mod heuristics;
mod tensor;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;

pub use bb::{bb_subset, bb_subset_observed, BbOptions, InitialBound, SearchState};
pub use bounds::{lb1, lb2};
pub use heuristics::{
    brute_force_subset, brute_force_subset_capped, greedy_subset, random_subset_search,
    swap_descent_subset, Budget, DEFAULT_BRUTE_FORCE_CAP,
};
pub use tensor::{precompute_suffix_counts, CountTensor, DEFAULT_TENSOR_CAP_BYTES};

/// How much a reported subset value is worth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Proven minimal.
    Optimal,
    /// An exact search stopped early; the incumbent is returned.
    BestFound,
    /// Produced by a heuristic.
    Heuristic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::BestFound => "best_found",
            Status::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Search nodes visited (subsets evaluated for the heuristics).
    pub nodes: u64,
    /// Subtrees cut by the lower bound.
    pub prunes: u64,
    pub wall: Duration,
}

/// A chosen subset and its exact star discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetSelection {
    /// Sorted indices into the point set given to the solver.
    pub chosen: Vec<usize>,
    pub m: usize,
    pub value: f64,
    pub status: Status,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Bb,
    Greedy,
    Random,
    Brute,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Bb => "bb",
            SolverKind::Greedy => "greedy",
            SolverKind::Random => "random",
            SolverKind::Brute => "brute",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bb" => Ok(SolverKind::Bb),
            "greedy" => Ok(SolverKind::Greedy),
            "random" => Ok(SolverKind::Random),
            "brute" => Ok(SolverKind::Brute),
            _ => Err(Error::InvalidArgument(format!("unknown solver `{s}`"))),
        }
    }
}

/// One solver run as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverRecord {
    pub instance: String,
    pub generator: Option<String>,
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub solver: SolverKind,
    pub value: f64,
    pub chosen_indices: Vec<usize>,
    pub status: Status,
    pub nodes: u64,
    pub prunes: u64,
    pub wall_ms: f64,
    pub seed: Option<u64>,
}

impl SolverRecord {
    pub fn new(
        instance: impl Into<String>,
        points: &PointSet,
        solver: SolverKind,
        selection: &SubsetSelection,
    ) -> Self {
        SolverRecord {
            instance: instance.into(),
            generator: None,
            d: points.dim(),
            n: points.len(),
            m: selection.m,
            solver,
            value: selection.value,
            chosen_indices: selection.chosen.clone(),
            status: selection.status,
            nodes: selection.stats.nodes,
            prunes: selection.stats.prunes,
            wall_ms: selection.stats.wall.as_secs_f64() * 1e3,
            seed: None,
        }
    }
}

/// Checks `m <= n`.
pub(crate) fn check_cardinality(points: &PointSet, m: usize) -> Result<()> {
    if m > points.len() {
        return Err(Error::InvalidArgument(format!(
            "subset size m = {m} exceeds n = {}",
            points.len()
        )));
    }
    Ok(())
}

/// Maps sorted normalized indices back to input indices, sorted.
pub(crate) fn to_input_order(chosen: &[usize], order: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = chosen.iter().map(|&i| order[i]).collect();
    v.sort_unstable();
    v
}
