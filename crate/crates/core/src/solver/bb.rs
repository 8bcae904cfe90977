use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::geometry::grid::RankedGrid;
use crate::geometry::{star_discrepancy_of_subset, PointSet};

use super::bounds::BoundEngine;
use super::heuristics::{greedy_normalized, swap_descent_normalized};
use super::tensor::{precompute_on_grid, DEFAULT_TENSOR_CAP_BYTES};
use super::{check_cardinality, to_input_order, SearchStats, Status, SubsetSelection};

/// Where the search takes its first upper bound from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialBound {
    /// Value and subset of [`greedy_subset`](super::greedy_subset).
    Greedy,
    /// Value and subset of [`swap_descent_subset`](super::swap_descent_subset).
    GreedySwap,
    /// `ub = 1` with no incumbent.
    Trivial,
    /// A caller-supplied value with no incumbent. If no subset reaches it,
    /// the search fails.
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BbOptions {
    pub time_limit: Option<Duration>,
    pub initial_ub: InitialBound,
    /// Stop after this many nodes.
    pub node_cap: Option<u64>,
    pub tensor_cap_bytes: u64,
}

impl Default for BbOptions {
    fn default() -> Self {
        BbOptions {
            time_limit: None,
            initial_ub: InitialBound::Greedy,
            node_cap: None,
            tensor_cap_bytes: DEFAULT_TENSOR_CAP_BYTES,
        }
    }
}

/// The search as seen at one node. Indices refer to the normalized order;
/// the undecided points are `next..n`.
#[derive(Debug, Clone, Copy)]
pub struct SearchState<'s> {
    pub accepted: &'s [usize],
    pub rejected: &'s [usize],
    pub next: usize,
    pub lb1: f64,
    pub lb2: f64,
    pub ub: f64,
    pub incumbent: Option<&'s [usize]>,
}

/// Exact subset selection by depth-first branch-and-bound.
pub fn bb_subset(points: &PointSet, m: usize, options: &BbOptions) -> Result<SubsetSelection> {
    bb_subset_observed(points, m, options, |_| {})
}

/// [`bb_subset`] calling `observer` at every visited node, before the node
/// is evaluated or pruned.
pub fn bb_subset_observed<F>(
    points: &PointSet,
    m: usize,
    options: &BbOptions,
    observer: F,
) -> Result<SubsetSelection>
where
    F: FnMut(&SearchState<'_>),
{
    check_cardinality(points, m)?;
    let start = Instant::now();
    let n = points.len();
    if m == 0 || m == n {
        let chosen: Vec<usize> = (0..m).collect();
        let value = star_discrepancy_of_subset(points, &chosen)?;
        return Ok(SubsetSelection {
            chosen,
            m,
            value,
            status: Status::Optimal,
            stats: SearchStats {
                wall: start.elapsed(),
                ..SearchStats::default()
            },
        });
    }
    let (sorted, order) = points.normalize_order();
    let grid = RankedGrid::new(&sorted);
    let tensor = precompute_on_grid(&sorted, &grid, options.tensor_cap_bytes)?;

    let (ub, incumbent) = match options.initial_ub {
        InitialBound::Greedy => {
            let (chosen, value, _) = greedy_normalized(&sorted, m)?;
            (value, Some(chosen))
        }
        InitialBound::GreedySwap => {
            let (chosen, value, _) = greedy_normalized(&sorted, m)?;
            let (chosen, value, _) = swap_descent_normalized(&sorted, chosen, value)?;
            (value, Some(chosen))
        }
        InitialBound::Trivial => (1.0, None),
        InitialBound::Value(v) => (v, None),
    };
    let mut engine = BoundEngine::new(&grid, &tensor, m);
    let (lb1, lb2) = engine.scratch(0);
    let mut search = Search {
        points: &sorted,
        m,
        n,
        engine,
        rejected: Vec::new(),
        ub,
        incumbent,
        stats: SearchStats::default(),
        deadline: options.time_limit.map(|t| start + t),
        node_cap: options.node_cap,
        stopped: false,
        observer,
    };
    search.visit(0, lb1, lb2)?;

    let status = if search.stopped {
        Status::BestFound
    } else {
        Status::Optimal
    };
    let mut stats = search.stats;
    let chosen = match search.incumbent {
        Some(c) => c,
        None if search.stopped => {
            let (c, v, _) = greedy_normalized(&sorted, m)?;
            search.ub = v;
            c
        }
        None => {
            return Err(Error::InvalidArgument(format!(
                "no subset reaches the initial upper bound {}",
                search.ub
            )))
        }
    };
    stats.wall = start.elapsed();
    Ok(SubsetSelection {
        chosen: to_input_order(&chosen, &order),
        m,
        value: search.ub,
        status,
        stats,
    })
}

struct Search<'a, F> {
    points: &'a PointSet,
    m: usize,
    n: usize,
    engine: BoundEngine<'a>,
    rejected: Vec<usize>,
    ub: f64,
    incumbent: Option<Vec<usize>>,
    stats: SearchStats,
    deadline: Option<Instant>,
    node_cap: Option<u64>,
    stopped: bool,
    observer: F,
}

impl<F: FnMut(&SearchState<'_>)> Search<'_, F> {
    fn out_of_budget(&mut self) -> bool {
        if let Some(cap) = self.node_cap {
            if self.stats.nodes > cap {
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.stats.nodes.is_multiple_of(256) && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    fn visit(&mut self, next: usize, lb1: f64, lb2: f64) -> Result<()> {
        self.stats.nodes += 1;
        (self.observer)(&SearchState {
            accepted: self.engine.accepted(),
            rejected: &self.rejected,
            next,
            lb1,
            lb2,
            ub: self.ub,
            incumbent: self.incumbent.as_deref(),
        });
        let chosen = self.engine.accepted().len();
        if chosen == self.m {
            let mut subset = self.engine.accepted().to_vec();
            subset.sort_unstable();
            let value = star_discrepancy_of_subset(self.points, &subset)?;
            if value < self.ub || (self.incumbent.is_none() && value <= self.ub) {
                self.ub = value;
                self.incumbent = Some(subset);
            }
            return Ok(());
        }
        if next == self.n || chosen + (self.n - next) < self.m {
            return Ok(());
        }
        if lb1.max(lb2) > self.ub {
            self.stats.prunes += 1;
            return Ok(());
        }
        if self.out_of_budget() {
            self.stopped = true;
            return Ok(());
        }
        debug_assert_eq!(
            chosen + self.rejected.len(),
            next,
            "undecided points form a suffix"
        );

        self.engine.push(next);
        let (g1, g2) = self.engine.accept_gain(next + 1);
        self.visit(next + 1, lb1.max(g1), lb2.max(g2))?;
        self.engine.pop();
        if self.stopped {
            return Ok(());
        }

        let g1 = self.engine.reject_gain(next, next + 1);
        self.rejected.push(next);
        self.visit(next + 1, lb1.max(g1), lb2)?;
        self.rejected.pop();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{brute_force_subset, lb1, lb2};

    #[test]
    fn one_dimensional_optima() {
        let p =
            PointSet::from_points(1, [[1.0 / 6.0], [0.25], [0.5], [0.75], [5.0 / 6.0]]).unwrap();
        let s = bb_subset(&p, 2, &BbOptions::default()).unwrap();
        assert_eq!(s.chosen, vec![1, 3]);
        assert_eq!(s.value, 0.25);
        assert_eq!(s.status, Status::Optimal);
        let s = bb_subset(&p, 3, &BbOptions::default()).unwrap();
        assert_eq!(s.chosen, vec![0, 2, 4]);
        assert!((s.value - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_sizes() {
        let p = PointSet::from_points(2, [[0.2, 0.3], [0.6, 0.9]]).unwrap();
        let s = bb_subset(&p, 0, &BbOptions::default()).unwrap();
        assert_eq!((s.value, s.chosen.len()), (1.0, 0));
        let s = bb_subset(&p, 2, &BbOptions::default()).unwrap();
        assert_eq!(s.chosen, vec![0, 1]);
        assert!(bb_subset(&p, 3, &BbOptions::default()).is_err());
    }

    #[test]
    fn agrees_with_brute_force_and_scratch_bounds() {
        let raw = PointSet::from_points(
            2,
            [
                [0.31, 0.82],
                [0.12, 0.21],
                [0.93, 0.52],
                [0.55, 0.14],
                [0.71, 0.95],
                [0.24, 0.63],
                [0.44, 0.41],
                [0.86, 0.33],
            ],
        )
        .unwrap();
        let (p, _) = raw.normalize_order();
        for m in 2..7 {
            let options = BbOptions {
                initial_ub: InitialBound::Trivial,
                ..BbOptions::default()
            };
            let s = bb_subset_observed(&p, m, &options, |st| {
                let acc = p.subset(st.accepted);
                let und = p.subset(&(st.next..p.len()).collect::<Vec<_>>());
                assert_eq!(st.lb1, lb1(&acc, &und, m));
                assert_eq!(st.lb2, lb2(&acc, m));
            })
            .unwrap();
            let b = brute_force_subset(&p, m).unwrap();
            assert_eq!(s.value, b.value, "m = {m}");
        }
    }

    #[test]
    fn node_cap_yields_best_found() {
        let raw = PointSet::from_points(
            2,
            (0..12).map(|i| [((i * 7) % 12) as f64 / 12.0 + 0.01, i as f64 / 12.0 + 0.02]),
        )
        .unwrap();
        let options = BbOptions {
            node_cap: Some(3),
            initial_ub: InitialBound::Trivial,
            ..BbOptions::default()
        };
        let s = bb_subset(&raw, 6, &options).unwrap();
        assert_eq!(s.status, Status::BestFound);
        assert_eq!(s.chosen.len(), 6);
    }
}
