//! Point sets in the unit cube, anchored-box counts and exact star
//! discrepancy evaluation.
//!
//! The star discrepancy of `P` is the supremum over anchored boxes of the
//! deviation between box volume and the fraction of points inside. The
//! supremum is attained on a finite grid built from the point coordinates,
//! which is what the evaluators in [`eval`] enumerate.

mod eval;
pub(crate) mod grid;
pub mod io;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub use eval::{
    closed_count, local_discrepancy, open_count, star_discrepancy, star_discrepancy_1d,
    star_discrepancy_2d, star_discrepancy_grid, star_discrepancy_of_subset, volume,
    DiscrepancyResult, LocalDiscrepancy, WitnessKind,
};
pub(crate) use eval::{closed_deviation, open_deviation};
pub use grid::{grid, GridAxis};

/// A point of `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "point must have dimension >= 1".into(),
            ));
        }
        check_coords(0, &coords)?;
        Ok(Point(coords))
    }

    /// The all-ones corner `(1, ..., 1)`.
    pub fn ones(dim: usize) -> Self {
        Point(vec![1.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_coords(point: usize, coords: &[f64]) -> Result<()> {
    for &value in coords {
        // NaN fails both comparisons.
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::CoordinateOutOfRange { point, value });
        }
    }
    Ok(())
}

/// Ordered list of points sharing one dimension.
///
/// Coordinates are stored row-major in a single buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    label: String,
}

impl PointSet {
    /// Builds a set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        for (i, p) in coords.chunks_exact(dim).enumerate() {
            check_coords(i, p)?;
        }
        Ok(PointSet {
            dim,
            coords,
            label: String::new(),
        })
    }

    pub fn from_points<I, P>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[f64]>,
    {
        let mut coords = Vec::new();
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim: dim.max(1),
            coords: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn flat(&self) -> &[f64] {
        &self.coords
    }

    /// Copies the points at `indices` into a new set (same label).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            coords,
            label: self.label.clone(),
        }
    }

    /// Appends a point, checking its dimension and range.
    pub fn push(&mut self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.len(),
            });
        }
        check_coords(self.len(), p)?;
        self.coords.extend_from_slice(p);
        Ok(())
    }

    /// Sorts points ascending by first coordinate, ties broken by the
    /// following coordinates. Returns the normalized set and, for each
    /// position of the result, the index the point had in `self`.
    pub fn normalize_order(&self) -> (PointSet, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| lex_cmp(self.point(a), self.point(b)).then(a.cmp(&b)));
        let mut sorted = self.subset(&order);
        sorted.label.clone_from(&self.label);
        (sorted, order)
    }

    pub fn is_normalized(&self) -> bool {
        (1..self.len()).all(|i| lex_cmp(self.point(i - 1), self.point(i)) != Ordering::Greater)
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        Ok(())
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}
