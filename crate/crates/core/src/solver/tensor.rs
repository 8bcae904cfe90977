use crate::error::{Error, Result};
use crate::geometry::grid::{advance, strides, RankedGrid};
use crate::geometry::PointSet;

/// Default memory cap for [`CountTensor`]: 1 GiB.
pub const DEFAULT_TENSOR_CAP_BYTES: u64 = 1 << 30;

/// Box counts of every suffix `{p_k, ..., p_{n-1}}` of a normalized set at
/// every corner of its closed grid.
///
/// Slot `k = n` is the empty suffix. Corners are flattened row-major over
/// the closed-grid ranks.
#[derive(Debug, Clone)]
pub struct CountTensor {
    n: usize,
    corners: usize,
    lens: Vec<usize>,
    strides: Vec<usize>,
    open: Vec<u16>,
    closed: Vec<u16>,
}

impl CountTensor {
    /// Bytes needed for a set of `n` points with `corners` closed-grid corners.
    pub fn bytes_needed(n: usize, corners: u128) -> u128 {
        (n as u128 + 1) * corners * 2 * std::mem::size_of::<u16>() as u128
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Closed-grid axis lengths.
    pub fn lens(&self) -> &[usize] {
        &self.lens
    }

    /// Row-major index of a corner given by closed-grid ranks.
    #[inline]
    pub fn flat(&self, corner: &[usize]) -> usize {
        corner.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// `D(q, {p_k, ...})` at the corner with flat index `flat`.
    #[inline]
    pub fn open(&self, k: usize, flat: usize) -> usize {
        self.open[k * self.corners + flat] as usize
    }

    /// `D̄(q, {p_k, ...})` at the corner with flat index `flat`.
    #[inline]
    pub fn closed(&self, k: usize, flat: usize) -> usize {
        self.closed[k * self.corners + flat] as usize
    }
}

/// Builds the suffix count tensor backward from the empty suffix.
///
/// `points` must be normalized. Fails when the tensor would exceed
/// `cap_bytes` or a count would not fit in 16 bits.
pub fn precompute_suffix_counts(points: &PointSet, cap_bytes: u64) -> Result<CountTensor> {
    if !points.is_normalized() {
        return Err(Error::InvalidArgument(
            "suffix counts need a normalized point set".into(),
        ));
    }
    let grid = RankedGrid::new(points);
    precompute_on_grid(points, &grid, cap_bytes)
}

pub(crate) fn precompute_on_grid(
    points: &PointSet,
    grid: &RankedGrid,
    cap_bytes: u64,
) -> Result<CountTensor> {
    let n = points.len();
    if n > u16::MAX as usize {
        return Err(Error::CapExceeded {
            what: "suffix count tensor points",
            needed: n as u128,
            cap: u16::MAX as u128,
        });
    }
    let corners = grid.corner_count();
    let bytes = CountTensor::bytes_needed(n, corners);
    if bytes > cap_bytes as u128 {
        return Err(Error::CapExceeded {
            what: "suffix count tensor bytes",
            needed: bytes,
            cap: cap_bytes as u128,
        });
    }
    let corners = corners as usize;
    let lens = grid.closed_lens();
    let dim = points.dim();
    let mut open = vec![0u16; (n + 1) * corners];
    let mut closed = vec![0u16; (n + 1) * corners];
    let mut idx = vec![0usize; dim];
    for k in (0..n).rev() {
        let (head, tail) = open.split_at_mut((k + 1) * corners);
        head[k * corners..].copy_from_slice(&tail[..corners]);
        let (head, tail) = closed.split_at_mut((k + 1) * corners);
        head[k * corners..].copy_from_slice(&tail[..corners]);
        // Only corners at or above p_k change; walk that sub-box.
        let r = grid.rank(k);
        let sub_lens: Vec<usize> = (0..dim).map(|j| lens[j] - r[j]).collect();
        idx.iter_mut().for_each(|c| *c = 0);
        let st = strides(&lens);
        let base = k * corners;
        loop {
            let mut flat = 0;
            let mut strict = true;
            for j in 0..dim {
                flat += (r[j] + idx[j]) * st[j];
                strict &= idx[j] > 0;
            }
            closed[base + flat] += 1;
            if strict {
                open[base + flat] += 1;
            }
            if !advance(&mut idx, &sub_lens) {
                break;
            }
        }
    }
    Ok(CountTensor {
        n,
        corners,
        strides: strides(&lens),
        lens,
        open,
        closed,
    })
}
