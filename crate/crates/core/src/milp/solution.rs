//! Reading and checking solutions produced by an external MILP solver.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::star_discrepancy_of_subset;

use super::MilpModel;

/// Largest allowed gap between the solver objective and the recomputed
/// discrepancy.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverStatus {
    Optimal,
    Feasible,
    Unknown,
}

impl FromStr for SolverStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "optimal" => Ok(SolverStatus::Optimal),
            "feasible" | "time_limit" | "timelimit" => Ok(SolverStatus::Feasible),
            "unknown" => Ok(SolverStatus::Unknown),
            _ => Err(Error::InvalidArgument(format!(
                "unknown solver status `{s}`"
            ))),
        }
    }
}

impl fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverStatus::Optimal => "optimal",
            SolverStatus::Feasible => "feasible",
            SolverStatus::Unknown => "unknown",
        })
    }
}

/// A solver's answer: its objective and variable values.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpSolution {
    pub objective: f64,
    pub status: SolverStatus,
    /// Variable values by name (`z`, `x1`, ...).
    pub values: BTreeMap<String, f64>,
}

impl MilpSolution {
    /// Zero-based indices of the points with `x > 0.5`.
    pub fn selected(&self, n: usize) -> Vec<usize> {
        (0..n)
            .filter(|i| {
                self.values
                    .get(&format!("x{}", i + 1))
                    .is_some_and(|&v| v > 0.5)
            })
            .collect()
    }
}

/// Parses a solution file: one `<name> <value>` pair per line, an
/// `objective <value>` line and an optional `status <word>` line. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_solution(text: &str) -> Result<MilpSolution> {
    let mut objective = None;
    let mut status = SolverStatus::Unknown;
    let mut values = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: k + 1, msg };
        let mut it = line.split_whitespace();
        let (name, value) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(err(format!("expected `<name> <value>`, got `{line}`"))),
        };
        match name.to_ascii_lowercase().as_str() {
            "status" => status = value.parse().map_err(|e: Error| err(e.to_string()))?,
            "objective" | "obj" => {
                objective = Some(
                    value
                        .parse::<f64>()
                        .map_err(|_| err(format!("bad objective `{value}`")))?,
                )
            }
            _ => {
                let v = value
                    .parse::<f64>()
                    .map_err(|_| err(format!("bad value `{value}` for `{name}`")))?;
                values.insert(name.to_string(), v);
            }
        }
    }
    let objective = objective.ok_or(Error::Parse {
        line: 0,
        msg: "missing objective line".into(),
    })?;
    Ok(MilpSolution {
        objective,
        status,
        values,
    })
}

/// Outcome of checking a solution against the point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Zero-based selected indices.
    pub chosen: Vec<usize>,
    /// Star discrepancy of the selected subset, recomputed.
    pub discrepancy: f64,
    pub objective: f64,
    pub abs_diff: f64,
    pub pass: bool,
    /// `objective / relaxation` when the relaxation value is known and
    /// positive.
    pub gap_ratio: Option<f64>,
}

/// Recomputes the discrepancy of the selection in `solution` and compares
/// it with the reported objective. Fails on a selection of the wrong size.
pub fn verify_solution(
    model: &MilpModel,
    solution: &MilpSolution,
    relaxation: Option<f64>,
) -> Result<VerifyReport> {
    let chosen = solution.selected(model.n);
    if chosen.len() != model.m {
        return Err(Error::Cardinality {
            expected: model.m,
            found: chosen.len(),
        });
    }
    let discrepancy = star_discrepancy_of_subset(&model.points, &chosen)?;
    let abs_diff = (discrepancy - solution.objective).abs();
    Ok(VerifyReport {
        chosen,
        discrepancy,
        objective: solution.objective,
        abs_diff,
        pass: abs_diff <= VERIFY_TOLERANCE,
        gap_ratio: relaxation
            .filter(|&r| r > 0.0)
            .map(|r| solution.objective / r),
    })
}
