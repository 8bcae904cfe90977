use super::PointSet;

/// Sorted distinct coordinate values of one axis of a point-set grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub values: Vec<f64>,
    /// True when `1.0` was appended because no point carried it.
    pub includes_one: bool,
}

impl GridAxis {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Per-axis grids of `points`. With `closed = false` each axis holds the
/// distinct coordinate values; with `closed = true` the axis is completed
/// with `1.0`, as if the all-ones corner were part of the set.
pub fn grid(points: &PointSet, closed: bool) -> Vec<GridAxis> {
    (0..points.dim())
        .map(|j| {
            let mut values = axis_values(points, j);
            let mut includes_one = false;
            if closed && values.last() != Some(&1.0) {
                values.push(1.0);
                includes_one = true;
            }
            GridAxis {
                values,
                includes_one,
            }
        })
        .collect()
}

fn axis_values(points: &PointSet, j: usize) -> Vec<f64> {
    let mut v: Vec<f64> = points.iter().map(|p| p[j]).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Closed grid of a set together with the rank of every point coordinate
/// in it. Comparisons between points and grid corners reduce to integer
/// comparisons of ranks.
#[derive(Debug, Clone)]
pub(crate) struct RankedGrid {
    /// Closed-grid axes; each ends in `1.0`.
    pub axes: Vec<Vec<f64>>,
    /// Length of the open grid on each axis (a prefix of the closed one).
    pub open_len: Vec<usize>,
    /// Row-major `n x d` ranks.
    pub ranks: Vec<usize>,
    pub dim: usize,
}

impl RankedGrid {
    pub fn new(points: &PointSet) -> Self {
        let dim = points.dim();
        let mut axes = Vec::with_capacity(dim);
        let mut open_len = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut values = axis_values(points, j);
            open_len.push(values.len());
            if values.last() != Some(&1.0) {
                values.push(1.0);
            }
            axes.push(values);
        }
        let mut ranks = Vec::with_capacity(points.len() * dim);
        for p in points.iter() {
            for (j, &c) in p.iter().enumerate() {
                ranks.push(axes[j].partition_point(|&v| v < c));
            }
        }
        RankedGrid {
            axes,
            open_len,
            ranks,
            dim,
        }
    }

    pub fn rank(&self, i: usize) -> &[usize] {
        &self.ranks[i * self.dim..(i + 1) * self.dim]
    }

    pub fn closed_lens(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Number of closed-grid corners, saturating.
    pub fn corner_count(&self) -> u128 {
        self.axes.iter().map(|a| a.len() as u128).product()
    }
}

/// Row-major strides for the given axis lengths.
pub(crate) fn strides(lens: &[usize]) -> Vec<usize> {
    let mut s = vec![1; lens.len()];
    for j in (0..lens.len().saturating_sub(1)).rev() {
        s[j] = s[j + 1] * lens[j + 1];
    }
    s
}

/// Advances a row-major multi-index; returns false after the last one.
pub(crate) fn advance(idx: &mut [usize], lens: &[usize]) -> bool {
    for j in (0..idx.len()).rev() {
        idx[j] += 1;
        if idx[j] < lens[j] {
            return true;
        }
        idx[j] = 0;
    }
    false
}

/// In-place inclusive prefix sums of a row-major d-dimensional table.
pub(crate) fn prefix_sums(table: &mut [u32], lens: &[usize]) {
    let st = strides(lens);
    for (j, &stride) in st.iter().enumerate() {
        let len = lens[j];
        if len < 2 {
            continue;
        }
        let block = stride * len;
        for base in (0..table.len()).step_by(block) {
            for k in stride..block {
                table[base + k] += table[base + k - stride];
            }
        }
    }
}
