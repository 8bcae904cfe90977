//! Mixed-integer model of subset selection, LP-file export and checking of
//! solutions produced by an external solver.
//!
//! With binaries `x_i` (point `i` selected) and a continuous `z`:
//!
//! ```text
//! minimize z
//!   z + (1/m) sum_{l in Δ(γ)} x_l >= h(γ)    for every corner γ of the closed grid
//!   z - (1/m) sum_{l in Δ̄(γ)} x_l >= -h(γ)   for every corner γ of the open grid
//!   sum_i x_i = m
//! ```
//!
//! where `Δ(γ)` holds the points strictly below `γ`, `Δ̄(γ)` the points
//! weakly below it and `h(γ)` is the volume of `[0, γ]`. The grids are those
//! of the whole set; for any selection the largest row violation equals the
//! star discrepancy of the selected subset, so the optimum is the smallest
//! achievable discrepancy.

mod lp;
mod solution;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::grid::{advance, RankedGrid};
use crate::geometry::{closed_deviation, open_deviation, volume, Point, PointSet};

pub use lp::{read_lp, write_lp, write_lp_relaxation, LpProblem, LpRow};
pub use solution::{
    parse_solution, verify_solution, MilpSolution, SolverStatus, VerifyReport, VERIFY_TOLERANCE,
};

/// Largest dimension [`build_model`] accepts.
pub const MAX_MODEL_DIM: usize = 3;

/// Largest number of rows [`build_model`] will generate.
pub const MAX_MODEL_ROWS: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// `z + (1/m) sum_Δ x >= h`.
    Open,
    /// `z - (1/m) sum_Δ̄ x >= -h`.
    Closed,
    /// `sum x = m`.
    Cardinality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kind: RowKind,
    /// Point indices with a nonzero coefficient, ascending.
    pub support: Vec<usize>,
    /// One-based grid index tuple of the corner (see [`grid_corner`]);
    /// empty for the cardinality row.
    pub corner: Vec<usize>,
    /// Volume of the corner's box; zero for the cardinality row.
    pub h: f64,
}

impl Row {
    /// Coefficient of every `x` in the row.
    pub fn coefficient(&self, m: usize) -> f64 {
        match self.kind {
            RowKind::Open => 1.0 / m as f64,
            RowKind::Closed => -1.0 / m as f64,
            RowKind::Cardinality => 1.0,
        }
    }

    /// Coefficient of `z`.
    pub fn z_coefficient(&self) -> f64 {
        match self.kind {
            RowKind::Cardinality => 0.0,
            _ => 1.0,
        }
    }

    pub fn rhs(&self, m: usize) -> f64 {
        match self.kind {
            RowKind::Open => self.h,
            RowKind::Closed => -self.h,
            RowKind::Cardinality => m as f64,
        }
    }
}

/// The model for one point set and target size. Variable `x_{i+1}` in the
/// LP file belongs to point `i` of `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpModel {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub points: PointSet,
    /// Open rows, then closed rows, then the cardinality row.
    pub rows: Vec<Row>,
}

impl MilpModel {
    /// `n + 1` variables: `z` and one binary per point.
    pub fn variable_count(&self) -> usize {
        self.n + 1
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.len()
    }

    /// Smallest `z` satisfying every row for the 0/1 selection `x` (which
    /// must pick `m` points). Row values are evaluated as
    /// `h - |Δ ∩ x| / m` and `|Δ̄ ∩ x| / m - h`, the same arithmetic as the
    /// discrepancy evaluators.
    pub fn min_feasible_z(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let picked = x.iter().filter(|&&b| b).count();
        if picked != self.m {
            return Err(Error::Cardinality {
                expected: self.m,
                found: picked,
            });
        }
        let mut z = 0.0f64;
        for row in &self.rows {
            let count = row.support.iter().filter(|&&i| x[i]).count();
            let v = match row.kind {
                RowKind::Open => open_deviation(row.h, count, self.m),
                RowKind::Closed => closed_deviation(row.h, count, self.m),
                RowKind::Cardinality => continue,
            };
            z = z.max(v);
        }
        Ok(z)
    }
}

/// Per-axis coordinate values sorted ascending with repeats, then `1.0`.
fn axis_positions(points: &PointSet) -> Vec<Vec<f64>> {
    (0..points.dim())
        .map(|j| {
            let mut v: Vec<f64> = points.iter().map(|p| p[j]).collect();
            v.sort_by(f64::total_cmp);
            v.push(1.0);
            v
        })
        .collect()
}

/// The grid corner with one-based index tuple `index`: on axis `j`, index
/// `i <= n` is the `i`-th smallest coordinate and `n + 1` is `1.0`.
/// Returns the corner and its volume.
pub fn grid_corner(points: &PointSet, index: &[usize]) -> Result<(Point, f64)> {
    points.check_dim(index.len())?;
    let n = points.len();
    if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > n + 1) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: n + 1,
        });
    }
    let axes = axis_positions(points);
    let q: Vec<f64> = index
        .iter()
        .enumerate()
        .map(|(j, &i)| axes[j][i - 1])
        .collect();
    let h = volume(&q);
    Ok((Point::new(q)?, h))
}

/// Indices of the points strictly below `corner` (`Δ`) and weakly below it
/// (`Δ̄`).
pub fn index_sets(points: &PointSet, corner: &[f64]) -> Result<(Vec<usize>, Vec<usize>)> {
    points.check_dim(corner.len())?;
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if p.iter().zip(corner).all(|(a, b)| a <= b) {
            weak.push(i);
            if p.iter().zip(corner).all(|(a, b)| a < b) {
                strict.push(i);
            }
        }
    }
    Ok((strict, weak))
}

/// Builds the model. Corners with equal coordinates collapse into one row,
/// so a set with pairwise distinct coordinates below `1.0` yields
/// `(n+1)^d + n^d + 1` rows.
pub fn build_model(points: &PointSet, m: usize) -> Result<MilpModel> {
    let (n, d) = (points.len(), points.dim());
    if d > MAX_MODEL_DIM {
        return Err(Error::CapExceeded {
            what: "MILP model dimension",
            needed: d as u128,
            cap: MAX_MODEL_DIM as u128,
        });
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "subset size m = {m} must lie in 1..={n}"
        )));
    }
    let grid = RankedGrid::new(points);
    let open_corners: u128 = grid.open_len.iter().map(|&l| l as u128).product();
    let total = grid.corner_count() + open_corners + 1;
    if total > MAX_MODEL_ROWS {
        return Err(Error::CapExceeded {
            what: "MILP model rows",
            needed: total,
            cap: MAX_MODEL_ROWS,
        });
    }
    // One-based grid index of each distinct value: its first position in
    // the sorted coordinates with repeats.
    let positions = axis_positions(points);
    let first_index: Vec<Vec<usize>> = grid
        .axes
        .iter()
        .zip(&positions)
        .map(|(axis, pos)| {
            axis.iter()
                .map(|&v| pos.partition_point(|&x| x < v) + 1)
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(total as usize);
    for (kind, lens) in [
        (RowKind::Open, grid.closed_lens()),
        (RowKind::Closed, grid.open_len.clone()),
    ] {
        let mut idx = vec![0usize; d];
        loop {
            let q: Vec<f64> = (0..d).map(|j| grid.axes[j][idx[j]]).collect();
            let support: Vec<usize> = (0..n)
                .filter(|&i| {
                    let r = grid.rank(i);
                    match kind {
                        RowKind::Open => (0..d).all(|j| r[j] < idx[j]),
                        _ => (0..d).all(|j| r[j] <= idx[j]),
                    }
                })
                .collect();
            rows.push(Row {
                kind,
                support,
                corner: (0..d).map(|j| first_index[j][idx[j]]).collect(),
                h: volume(&q),
            });
            if !advance(&mut idx, &lens) {
                break;
            }
        }
    }
    rows.push(Row {
        kind: RowKind::Cardinality,
        support: (0..n).collect(),
        corner: Vec::new(),
        h: 0.0,
    });
    Ok(MilpModel {
        n,
        m,
        d,
        points: points.clone(),
        rows,
    })
}
