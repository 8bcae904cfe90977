//! The two combinatorial lower bounds of the branch-and-bound.
//!
//! For accepted points `P_A`, undecided points `P_N` and target size `m`:
//!
//! * `LB1 = max over q in closed grid of P_A of
//!   λ(q) - min(m, D(q, P_A) + D(q, P_N)) / m`
//! * `LB2 = max over q in open grid of P_A of D̄(q, P_A) / m - λ(q)`
//!
//! both clamped below at zero. The free functions evaluate them from
//! scratch; [`BoundEngine`] maintains them incrementally along a depth-first
//! search over a normalized set whose undecided points form a suffix.

use crate::geometry::grid::{advance, prefix_sums, RankedGrid};
use crate::geometry::PointSet;
use crate::geometry::{closed_count, closed_deviation, grid, open_count, open_deviation, volume};

use super::tensor::CountTensor;

#[inline]
fn eta(vol: f64, count: usize, m: usize) -> f64 {
    open_deviation(vol, count.min(m), m)
}

/// LB1 evaluated directly from the accepted and undecided sets.
pub fn lb1(accepted: &PointSet, undecided: &PointSet, m: usize) -> f64 {
    assert!(m > 0, "bounds need m >= 1");
    let axes = grid(accepted, true);
    let lens: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let mut idx = vec![0usize; axes.len()];
    let mut q = vec![0.0; axes.len()];
    let mut best = 0.0f64;
    loop {
        for (j, a) in axes.iter().enumerate() {
            q[j] = a.values[idx[j]];
        }
        let c = open_count(&q, accepted).expect("dims agree")
            + open_count(&q, undecided).expect("dims agree");
        best = best.max(eta(volume(&q), c, m));
        if !advance(&mut idx, &lens) {
            return best;
        }
    }
}

/// LB2 evaluated directly from the accepted set; zero when it is empty.
pub fn lb2(accepted: &PointSet, m: usize) -> f64 {
    assert!(m > 0, "bounds need m >= 1");
    if accepted.is_empty() {
        return 0.0;
    }
    let axes = grid(accepted, false);
    let lens: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let mut idx = vec![0usize; axes.len()];
    let mut q = vec![0.0; axes.len()];
    let mut best = 0.0f64;
    loop {
        for (j, a) in axes.iter().enumerate() {
            q[j] = a.values[idx[j]];
        }
        let c = closed_count(&q, accepted).expect("dims agree");
        best = best.max(closed_deviation(volume(&q), c, m));
        if !advance(&mut idx, &lens) {
            return best;
        }
    }
}

/// What a slab enumeration evaluates at each corner.
#[derive(Clone, Copy)]
enum SlabTerm {
    /// η with undecided suffix starting at `next`.
    Eta { next: usize },
    /// `D̄(q, P_A) / m - λ(q)`.
    Closed,
}

/// Incremental LB1/LB2 over a normalized point set.
pub(crate) struct BoundEngine<'a> {
    grid: &'a RankedGrid,
    tensor: &'a CountTensor,
    m: usize,
    dim: usize,
    accepted: Vec<usize>,
    /// Sorted ranks of the accepted points, per axis, with repeats.
    axis_ranks: Vec<Vec<usize>>,
    lists: Vec<Vec<usize>>,
    table: Vec<u32>,
    lens: Vec<usize>,
    lo: Vec<usize>,
    idx: Vec<usize>,
    corner: Vec<usize>,
    q: Vec<f64>,
}

impl<'a> BoundEngine<'a> {
    pub fn new(grid: &'a RankedGrid, tensor: &'a CountTensor, m: usize) -> Self {
        assert!(m > 0, "bounds need m >= 1");
        let dim = grid.dim;
        BoundEngine {
            grid,
            tensor,
            m,
            dim,
            accepted: Vec::new(),
            axis_ranks: vec![Vec::new(); dim],
            lists: vec![Vec::new(); dim],
            table: Vec::new(),
            lens: vec![0; dim],
            lo: vec![0; dim],
            idx: vec![0; dim],
            corner: vec![0; dim],
            q: vec![0.0; dim],
        }
    }

    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    pub fn push(&mut self, i: usize) {
        self.accepted.push(i);
        for (j, ranks) in self.axis_ranks.iter_mut().enumerate() {
            let r = self.grid.rank(i)[j];
            let at = ranks.partition_point(|&x| x <= r);
            ranks.insert(at, r);
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        let i = self.accepted.pop()?;
        for (j, ranks) in self.axis_ranks.iter_mut().enumerate() {
            let r = self.grid.rank(i)[j];
            let at = ranks.partition_point(|&x| x < r);
            ranks.remove(at);
        }
        Some(i)
    }

    /// Both bounds from scratch for the current accepted set and the
    /// undecided suffix starting at `next`.
    pub fn scratch(&mut self, next: usize) -> (f64, f64) {
        let b1 = self.full_max(true, SlabTerm::Eta { next });
        let b2 = if self.accepted.is_empty() {
            0.0
        } else {
            self.full_max(false, SlabTerm::Closed)
        };
        (b1.max(0.0), b2.max(0.0))
    }

    /// Contribution of the corners created by the point just pushed, which
    /// was the first undecided point; `next` starts the remaining suffix.
    /// Corners already present keep their LB1 and LB2 terms.
    pub fn accept_gain(&mut self, next: usize) -> (f64, f64) {
        let p = *self.accepted.last().expect("a point was pushed");
        let mut g1 = f64::NEG_INFINITY;
        let mut g2 = f64::NEG_INFINITY;
        for axis in 0..self.dim {
            let r = self.grid.rank(p)[axis];
            g1 = g1.max(self.slab(axis, r, true, None, SlabTerm::Eta { next }));
            g2 = g2.max(self.slab(axis, r, false, None, SlabTerm::Closed));
        }
        (g1, g2)
    }

    /// LB1 contribution of rejecting point `p`, the first undecided point,
    /// leaving the suffix from `next`. Only closed-grid corners strictly
    /// above `p` change; in sorted order their first coordinate can only be
    /// one of the accepted values above `p`, which means `1.0`.
    pub fn reject_gain(&mut self, p: usize, next: usize) -> f64 {
        let grid = self.grid;
        let r0 = grid.rank(p)[0];
        let mut g = f64::NEG_INFINITY;
        let top = grid.axes[0].len() - 1;
        let mut first_axis: Vec<usize> = self.axis_ranks[0].clone();
        first_axis.dedup();
        if first_axis.last() != Some(&top) {
            first_axis.push(top);
        }
        for v in first_axis.into_iter().filter(|&v| v > r0) {
            g = g.max(self.slab(0, v, true, Some(p), SlabTerm::Eta { next }));
        }
        g
    }

    /// Distinct accepted ranks per axis, completed by the top rank when
    /// `closed`.
    fn fill_lists(&mut self, closed: bool) {
        for j in 0..self.dim {
            let list = &mut self.lists[j];
            list.clear();
            list.extend_from_slice(&self.axis_ranks[j]);
            list.dedup();
            let top = self.grid.axes[j].len() - 1;
            if closed && list.last() != Some(&top) {
                list.push(top);
            }
        }
    }

    fn value(&mut self, term: SlabTerm, count: usize) -> f64 {
        for j in 0..self.dim {
            self.q[j] = self.grid.axes[j][self.corner[j]];
        }
        let vol = volume(&self.q);
        match term {
            SlabTerm::Eta { next } => {
                let flat = self.tensor.flat(&self.corner);
                eta(vol, count + self.tensor.open(next, flat), self.m)
            }
            SlabTerm::Closed => closed_deviation(vol, count, self.m),
        }
    }

    /// Maximum of `term` over the corners of the accepted grid whose rank on
    /// `axis` is `r` (and, given `above`, whose other ranks exceed that
    /// point's). Accepted-set counts come from a prefix-summed histogram of
    /// the other axes.
    fn slab(
        &mut self,
        axis: usize,
        r: usize,
        closed_grid: bool,
        above: Option<usize>,
        term: SlabTerm,
    ) -> f64 {
        let strict = matches!(term, SlabTerm::Eta { .. });
        self.fill_lists(closed_grid);
        let mut size = 1usize;
        for j in 0..self.dim {
            if j == axis {
                self.lens[j] = 1;
                self.lo[j] = 0;
                continue;
            }
            self.lens[j] = self.lists[j].len();
            self.lo[j] = match above {
                Some(p) => {
                    let pr = self.grid.rank(p)[j];
                    self.lists[j].partition_point(|&x| x <= pr)
                }
                None => 0,
            };
            if self.lo[j] >= self.lens[j] {
                return f64::NEG_INFINITY;
            }
            size *= self.lens[j];
        }
        self.table.clear();
        self.table.resize(size, 0);
        for &a in &self.accepted {
            let ra = self.grid.rank(a);
            let inside = if strict { ra[axis] < r } else { ra[axis] <= r };
            if !inside {
                continue;
            }
            let mut flat = 0;
            for j in 0..self.dim {
                if j != axis {
                    let pos = self.lists[j]
                        .binary_search(&ra[j])
                        .expect("accepted ranks are on the grid");
                    flat = flat * self.lens[j] + pos;
                }
            }
            self.table[flat] += 1;
        }
        prefix_sums(&mut self.table, &self.lens);

        let mut best = f64::NEG_INFINITY;
        for j in 0..self.dim {
            self.idx[j] = self.lo[j];
        }
        loop {
            let mut flat = 0;
            let mut empty = false;
            for j in 0..self.dim {
                if j == axis {
                    self.corner[j] = r;
                    continue;
                }
                let c = self.idx[j];
                self.corner[j] = self.lists[j][c];
                if strict {
                    empty |= c == 0;
                    flat = flat * self.lens[j] + c.saturating_sub(1);
                } else {
                    flat = flat * self.lens[j] + c;
                }
            }
            let count = if empty { 0 } else { self.table[flat] as usize };
            best = best.max(self.value(term, count));
            if !advance_from(&mut self.idx, &self.lo, &self.lens) {
                return best;
            }
        }
    }

    /// Maximum of `term` over every corner of the accepted grid, counting
    /// accepted points directly.
    fn full_max(&mut self, closed_grid: bool, term: SlabTerm) -> f64 {
        let strict = matches!(term, SlabTerm::Eta { .. });
        self.fill_lists(closed_grid);
        for j in 0..self.dim {
            self.lens[j] = self.lists[j].len();
            self.idx[j] = 0;
        }
        let mut best = f64::NEG_INFINITY;
        loop {
            for j in 0..self.dim {
                self.corner[j] = self.lists[j][self.idx[j]];
            }
            let count = self
                .accepted
                .iter()
                .filter(|&&a| {
                    let ra = self.grid.rank(a);
                    (0..self.dim).all(|j| {
                        if strict {
                            ra[j] < self.corner[j]
                        } else {
                            ra[j] <= self.corner[j]
                        }
                    })
                })
                .count();
            best = best.max(self.value(term, count));
            if !advance(&mut self.idx, &self.lens) {
                return best;
            }
        }
    }
}

/// Row-major odometer over `lo[j]..lens[j]`.
fn advance_from(idx: &mut [usize], lo: &[usize], lens: &[usize]) -> bool {
    for j in (0..idx.len()).rev() {
        idx[j] += 1;
        if idx[j] < lens[j] {
            return true;
        }
        idx[j] = lo[j];
    }
    false
}
