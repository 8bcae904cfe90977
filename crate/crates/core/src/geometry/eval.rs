use std::fmt;

use serde::{Deserialize, Serialize};

use super::grid::{advance, prefix_sums, strides, RankedGrid};
use super::{Point, PointSet};
use crate::error::{Error, Result};

/// Largest closed grid the dense evaluator will allocate.
pub const GRID_CORNER_CAP: u128 = 1 << 26;

/// Lebesgue measure of the anchored box `[0, q]`.
#[inline]
pub fn volume(q: &[f64]) -> f64 {
    q.iter().fold(1.0, |acc, &c| acc * c)
}

#[inline]
pub(crate) fn open_deviation(vol: f64, count: usize, n: usize) -> f64 {
    vol - count as f64 / n as f64
}

#[inline]
pub(crate) fn closed_deviation(vol: f64, count: usize, n: usize) -> f64 {
    count as f64 / n as f64 - vol
}

/// Number of points strictly inside `[0, q)` in every coordinate.
pub fn open_count(q: &[f64], points: &PointSet) -> Result<usize> {
    points.check_dim(q.len())?;
    Ok(points
        .iter()
        .filter(|p| p.iter().zip(q).all(|(a, b)| a < b))
        .count())
}

/// Number of points inside the closed box `[0, q]`.
pub fn closed_count(q: &[f64], points: &PointSet) -> Result<usize> {
    points.check_dim(q.len())?;
    Ok(points
        .iter()
        .filter(|p| p.iter().zip(q).all(|(a, b)| a <= b))
        .count())
}

/// Signed deviations at a single test corner.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDiscrepancy {
    pub q: Point,
    /// `λ(q) - |P ∩ [0,q)| / n`
    pub delta: f64,
    /// `|P ∩ [0,q]| / n - λ(q)`
    pub delta_bar: f64,
}

impl LocalDiscrepancy {
    pub fn max(&self) -> f64 {
        self.delta.max(self.delta_bar)
    }
}

pub fn local_discrepancy(q: &Point, points: &PointSet) -> Result<LocalDiscrepancy> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = points.len();
    let vol = volume(q.coords());
    let open = open_count(q.coords(), points)?;
    let closed = closed_count(q.coords(), points)?;
    Ok(LocalDiscrepancy {
        q: q.clone(),
        delta: open_deviation(vol, open, n),
        delta_bar: closed_deviation(vol, closed, n),
    })
}

/// Which deviation attains the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// Volume exceeds the open-box fraction.
    Open,
    /// Closed-box fraction exceeds the volume.
    Closed,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Open => "open",
            WitnessKind::Closed => "closed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub witness: Point,
    pub witness_kind: WitnessKind,
}

/// Running maximum over corners visited in lexicographic order; the first
/// corner attaining the maximum is kept.
struct Best {
    value: f64,
    corner: Vec<usize>,
}

impl Best {
    fn new(dim: usize) -> Self {
        Best {
            value: f64::NEG_INFINITY,
            corner: vec![0; dim],
        }
    }

    #[inline]
    fn offer(&mut self, value: f64, corner: &[usize]) {
        if value > self.value {
            self.value = value;
            self.corner.copy_from_slice(corner);
        }
    }
}

fn finish(grid: &RankedGrid, open: Best, closed: Best) -> DiscrepancyResult {
    let (best, kind) = if closed.value > open.value {
        (closed, WitnessKind::Closed)
    } else {
        (open, WitnessKind::Open)
    };
    let coords = best
        .corner
        .iter()
        .enumerate()
        .map(|(j, &c)| grid.axes[j][c])
        .collect();
    DiscrepancyResult {
        value: best.value,
        witness: Point(coords),
        witness_kind: kind,
    }
}

/// Exact star discrepancy by enumerating every corner of the closed grid.
///
/// Counts come from a dense d-dimensional prefix-sum table, so the cost is
/// `O(n log n + d * prod_j |axis_j|)`. The witness is the lexicographically
/// smallest maximizing corner, open-box corners taking precedence on ties.
pub fn star_discrepancy_grid(points: &PointSet) -> Result<DiscrepancyResult> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = points.len();
    let dim = points.dim();
    let grid = RankedGrid::new(points);
    let corners = grid.corner_count();
    if corners > GRID_CORNER_CAP {
        return Err(Error::CapExceeded {
            what: "grid evaluation corners",
            needed: corners,
            cap: GRID_CORNER_CAP,
        });
    }
    let lens = grid.closed_lens();
    let st = strides(&lens);
    let mut table = vec![0u32; corners as usize];
    for i in 0..n {
        let f: usize = grid.rank(i).iter().zip(&st).map(|(r, s)| r * s).sum();
        table[f] += 1;
    }
    prefix_sums(&mut table, &lens);

    let diag: usize = st.iter().sum();
    let mut open = Best::new(dim);
    let mut closed = Best::new(dim);
    let mut idx = vec![0usize; dim];
    let mut q = vec![0.0; dim];
    let mut flat = 0usize;
    loop {
        for j in 0..dim {
            q[j] = grid.axes[j][idx[j]];
        }
        let vol = volume(&q);
        let below = if idx.iter().all(|&c| c > 0) {
            table[flat - diag] as usize
        } else {
            0
        };
        open.offer(open_deviation(vol, below, n), &idx);
        if idx.iter().zip(&grid.open_len).all(|(c, l)| c < l) {
            closed.offer(closed_deviation(vol, table[flat] as usize, n), &idx);
        }
        if !advance(&mut idx, &lens) {
            break;
        }
        flat += 1;
    }
    Ok(finish(&grid, open, closed))
}

/// Exact star discrepancy of a planar set by an x-sweep.
///
/// Points are bucketed by x rank; at each x threshold the running counts of
/// included points per y rank are scanned once for the open-box corners
/// (before the bucket is added) and once for the closed-box corners (after).
/// `O(n^2)` after sorting, `O(n)` memory, and bit-identical to
/// [`star_discrepancy_grid`] including the witness.
pub fn star_discrepancy_2d(points: &PointSet) -> Result<DiscrepancyResult> {
    if points.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: points.dim(),
        });
    }
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = points.len();
    let grid = RankedGrid::new(points);
    let (xs, ys) = (&grid.axes[0], &grid.axes[1]);
    let (open_x, open_y) = (grid.open_len[0], grid.open_len[1]);

    let mut bucket_start = vec![0usize; xs.len() + 1];
    for i in 0..n {
        bucket_start[grid.rank(i)[0] + 1] += 1;
    }
    for a in 0..xs.len() {
        bucket_start[a + 1] += bucket_start[a];
    }
    let mut fill = bucket_start.clone();
    let mut y_by_x = vec![0usize; n];
    for i in 0..n {
        let r = grid.rank(i);
        y_by_x[fill[r[0]]] = r[1];
        fill[r[0]] += 1;
    }

    let mut at_most = vec![0usize; ys.len()];
    let mut open = Best::new(2);
    let mut closed = Best::new(2);
    for a in 0..xs.len() {
        for b in 0..ys.len() {
            let below = if b == 0 { 0 } else { at_most[b - 1] };
            open.offer(open_deviation(volume(&[xs[a], ys[b]]), below, n), &[a, b]);
        }
        for &t in &y_by_x[bucket_start[a]..bucket_start[a + 1]] {
            for c in &mut at_most[t..] {
                *c += 1;
            }
        }
        if a < open_x {
            for b in 0..open_y {
                closed.offer(
                    closed_deviation(volume(&[xs[a], ys[b]]), at_most[b], n),
                    &[a, b],
                );
            }
        }
    }
    Ok(finish(&grid, open, closed))
}

/// Closed-form star discrepancy of a one-dimensional set:
/// `1/(2n) + max_i |p_(i) - (2i-1)/(2n)|` over the sorted values.
///
/// Independent of the grid machinery. The value comes from the formula, so
/// it can differ from the witness's recomputed deviation in the last ulp.
pub fn star_discrepancy_1d(points: &PointSet) -> Result<DiscrepancyResult> {
    if points.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: points.dim(),
        });
    }
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = points.len();
    let mut xs: Vec<f64> = points.flat().to_vec();
    xs.sort_by(f64::total_cmp);
    let two_n = (2 * n) as f64;
    let mut best = (f64::NEG_INFINITY, 0usize, 0.0f64);
    for (i, &x) in xs.iter().enumerate() {
        let offset = x - (2 * i + 1) as f64 / two_n;
        if offset.abs() > best.0 {
            best = (offset.abs(), i, offset);
        }
    }
    let (dev, i, offset) = best;
    Ok(DiscrepancyResult {
        value: 1.0 / two_n + dev,
        witness: Point(vec![xs[i]]),
        witness_kind: if offset >= 0.0 {
            WitnessKind::Open
        } else {
            WitnessKind::Closed
        },
    })
}

/// Exact star discrepancy: the planar sweep for `d = 2`, the grid
/// enumeration otherwise.
pub fn star_discrepancy(points: &PointSet) -> Result<DiscrepancyResult> {
    if points.dim() == 2 {
        star_discrepancy_2d(points)
    } else {
        star_discrepancy_grid(points)
    }
}

/// Star discrepancy of the subset `indices` of `points`; the empty subset
/// has discrepancy 1.
pub fn star_discrepancy_of_subset(points: &PointSet, indices: &[usize]) -> Result<f64> {
    if indices.is_empty() {
        return Ok(1.0);
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= points.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: points.len(),
        });
    }
    Ok(star_discrepancy(&points.subset(indices))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> PointSet {
        PointSet::from_points(2, [[0.1, 0.4], [0.2, 0.9], [0.7, 0.6], [0.8, 0.7]]).unwrap()
    }

    fn q(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn counts_on_example() {
        let p = example();
        assert_eq!(open_count(&[1.0, 1.0], &p).unwrap(), 4);
        assert_eq!(open_count(&[1.0, 0.4], &p).unwrap(), 0);
        assert_eq!(open_count(&[0.75, 0.65], &p).unwrap(), 2);
        assert_eq!(closed_count(&[1.0, 1.0], &p).unwrap(), 4);
        assert_eq!(closed_count(&[0.7, 0.6], &p).unwrap(), 2);
        assert_eq!(closed_count(&[0.05, 0.05], &p).unwrap(), 0);
        assert!(matches!(
            open_count(&[0.5], &p),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn local_values() {
        let p = example();
        let l = local_discrepancy(&q(&[1.0, 0.4]), &p).unwrap();
        assert_eq!(l.delta, 0.4);
        let l = local_discrepancy(&q(&[1.0, 1.0]), &p).unwrap();
        assert_eq!(l.delta_bar, 0.0);
        let single = PointSet::from_points(2, [[0.5, 0.5]]).unwrap();
        let l = local_discrepancy(&q(&[0.5, 0.5]), &single).unwrap();
        assert_eq!(l.delta_bar, 0.75);
        assert!(matches!(
            local_discrepancy(&q(&[0.5, 0.5]), &PointSet::empty(2)),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn example_values_and_witnesses() {
        let p = example();
        for eval in [star_discrepancy_grid, star_discrepancy_2d] {
            let r = eval(&p).unwrap();
            assert!((r.value - 0.40).abs() < 5e-3);
            assert_eq!(r.witness.coords(), &[1.0, 0.4]);
            assert_eq!(r.witness_kind, WitnessKind::Open);
        }
        let mut more = p.clone();
        more.push(&[0.9, 0.2]).unwrap();
        let r = star_discrepancy_grid(&more).unwrap();
        assert!((r.value - 0.43).abs() < 5e-3, "{}", r.value);
        assert_eq!(r.witness.coords(), &[0.7, 0.9]);
        let mut fewer = p.clone();
        fewer.push(&[0.3, 0.3]).unwrap();
        let r = star_discrepancy_2d(&fewer).unwrap();
        assert!((r.value - 0.33).abs() < 5e-3, "{}", r.value);
        assert_eq!(r.witness.coords(), &[0.3, 0.9]);
    }

    #[test]
    fn single_point() {
        let p = PointSet::from_points(2, [[0.5, 0.5]]).unwrap();
        let r = star_discrepancy_grid(&p).unwrap();
        assert_eq!(r.value, 0.75);
        assert_eq!(r.witness_kind, WitnessKind::Closed);
        assert_eq!(star_discrepancy_2d(&p).unwrap(), r);
    }

    #[test]
    fn one_dimensional_formula() {
        let set = |v: &[f64]| PointSet::from_flat(1, v.to_vec()).unwrap();
        assert_eq!(star_discrepancy_1d(&set(&[0.5])).unwrap().value, 0.5);
        assert_eq!(
            star_discrepancy_1d(&set(&[0.25, 0.75])).unwrap().value,
            0.25
        );
        let third = star_discrepancy_1d(&set(&[1.0 / 6.0, 0.5, 5.0 / 6.0])).unwrap();
        assert!((third.value - 1.0 / 6.0).abs() < 1e-15);
        assert!(star_discrepancy_1d(&example()).is_err());
    }

    #[test]
    fn sweep_rejects_other_dimensions() {
        let p = PointSet::from_points(3, [[0.1, 0.2, 0.3]]).unwrap();
        assert!(matches!(
            star_discrepancy_2d(&p),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            star_discrepancy_grid(&PointSet::empty(2)),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn coordinates_on_the_boundary() {
        let p = PointSet::from_points(2, [[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]]).unwrap();
        let a = star_discrepancy_grid(&p).unwrap();
        let b = star_discrepancy_2d(&p).unwrap();
        assert_eq!(a, b);
        // [0,1]x[0,0.5] holds two of three points with volume 1/2.
        assert!(a.value >= 2.0 / 3.0 - 0.5);
        assert!(a.value > 0.0 && a.value <= 1.0);
    }

    #[test]
    fn empty_subset_has_unit_discrepancy() {
        assert_eq!(star_discrepancy_of_subset(&example(), &[]).unwrap(), 1.0);
        assert!(star_discrepancy_of_subset(&example(), &[9]).is_err());
    }
}
