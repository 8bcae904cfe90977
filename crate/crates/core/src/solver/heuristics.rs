use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{star_discrepancy_of_subset, PointSet};

use super::{check_cardinality, to_input_order, SearchStats, Status, SubsetSelection};

/// Largest number of subsets [`brute_force_subset`] will enumerate.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 10_000_000;

/// `C(n, k)`, saturating.
fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Moves `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive search with the default cap.
pub fn brute_force_subset(points: &PointSet, m: usize) -> Result<SubsetSelection> {
    brute_force_subset_capped(points, m, DEFAULT_BRUTE_FORCE_CAP)
}

/// Evaluates every `m`-subset in lexicographic order of indices and keeps
/// the first minimum.
pub fn brute_force_subset_capped(
    points: &PointSet,
    m: usize,
    cap: u128,
) -> Result<SubsetSelection> {
    check_cardinality(points, m)?;
    let start = Instant::now();
    let n = points.len();
    let total = binomial(n, m);
    if total > cap {
        return Err(Error::CapExceeded {
            what: "brute-force subsets",
            needed: total,
            cap,
        });
    }
    let mut c: Vec<usize> = (0..m).collect();
    let mut best = (star_discrepancy_of_subset(points, &c)?, c.clone());
    let mut evals = 1u64;
    while m > 0 && next_combination(&mut c, n) {
        let v = star_discrepancy_of_subset(points, &c)?;
        evals += 1;
        if v < best.0 {
            best = (v, c.clone());
        }
    }
    Ok(SubsetSelection {
        chosen: best.1,
        m,
        value: best.0,
        status: Status::Optimal,
        stats: SearchStats {
            nodes: evals,
            prunes: 0,
            wall: start.elapsed(),
        },
    })
}

/// Greedy construction on a normalized set: returns the chosen indices
/// (sorted), the value and the number of evaluations.
pub(crate) fn greedy_normalized(points: &PointSet, m: usize) -> Result<(Vec<usize>, f64, u64)> {
    let n = points.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    let mut taken = vec![false; n];
    let mut value = 1.0;
    let mut evals = 0u64;
    let mut cand = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(f64, usize)> = None;
        for i in (0..n).filter(|&i| !taken[i]) {
            cand.clear();
            cand.extend_from_slice(&chosen);
            let at = cand.partition_point(|&x| x < i);
            cand.insert(at, i);
            let v = star_discrepancy_of_subset(points, &cand)?;
            evals += 1;
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, i));
            }
        }
        let (v, i) = best.expect("m <= n leaves a candidate");
        taken[i] = true;
        let at = chosen.partition_point(|&x| x < i);
        chosen.insert(at, i);
        value = v;
    }
    Ok((chosen, value, evals))
}

/// Grows the subset one point at a time, each time adding the point that
/// gives the smallest star discrepancy (ties to the earliest point in
/// normalized order).
pub fn greedy_subset(points: &PointSet, m: usize) -> Result<SubsetSelection> {
    check_cardinality(points, m)?;
    let start = Instant::now();
    let (sorted, order) = points.normalize_order();
    let (chosen, value, evals) = greedy_normalized(&sorted, m)?;
    Ok(SubsetSelection {
        chosen: to_input_order(&chosen, &order),
        m,
        value,
        status: Status::Heuristic,
        stats: SearchStats {
            nodes: evals,
            prunes: 0,
            wall: start.elapsed(),
        },
    })
}

/// Pairwise-swap descent on a normalized set: repeatedly applies the first
/// swap of a chosen and an unchosen point (in index order) that strictly
/// lowers the value, until none does. Returns the chosen indices (sorted),
/// the value and the number of evaluations.
pub(crate) fn swap_descent_normalized(
    points: &PointSet,
    mut chosen: Vec<usize>,
    mut value: f64,
) -> Result<(Vec<usize>, f64, u64)> {
    let n = points.len();
    let mut evals = 0u64;
    let mut cand = Vec::with_capacity(chosen.len());
    'pass: loop {
        let taken: Vec<bool> = (0..n).map(|i| chosen.binary_search(&i).is_ok()).collect();
        for k in 0..chosen.len() {
            for j in (0..n).filter(|&j| !taken[j]) {
                cand.clear();
                cand.extend(chosen.iter().copied().filter(|&i| i != chosen[k]));
                let at = cand.partition_point(|&x| x < j);
                cand.insert(at, j);
                let v = star_discrepancy_of_subset(points, &cand)?;
                evals += 1;
                if v < value {
                    std::mem::swap(&mut chosen, &mut cand);
                    value = v;
                    continue 'pass;
                }
            }
        }
        return Ok((chosen, value, evals));
    }
}

/// [`greedy_subset`] followed by pairwise-swap descent: a chosen point is
/// exchanged for an unchosen one while that strictly lowers the value.
pub fn swap_descent_subset(points: &PointSet, m: usize) -> Result<SubsetSelection> {
    check_cardinality(points, m)?;
    let start = Instant::now();
    let (sorted, order) = points.normalize_order();
    let (chosen, value, greedy_evals) = greedy_normalized(&sorted, m)?;
    let (chosen, value, evals) = swap_descent_normalized(&sorted, chosen, value)?;
    Ok(SubsetSelection {
        chosen: to_input_order(&chosen, &order),
        m,
        value,
        status: Status::Heuristic,
        stats: SearchStats {
            nodes: greedy_evals + evals,
            prunes: 0,
            wall: start.elapsed(),
        },
    })
}

/// Evaluation budget of [`random_subset_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Total number of sampled subsets, split across shards. Reproducible.
    Evaluations(u64),
    /// Wall-clock time; every shard samples at least one subset.
    Time(Duration),
}

/// Best of uniformly random `m`-subsets.
///
/// Shard `s` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `s`.
/// The shard minima are reduced with ties going to the lower shard, so an
/// evaluation budget gives the same result for a fixed `(seed, shards)`.
pub fn random_subset_search(
    points: &PointSet,
    m: usize,
    budget: Budget,
    seed: u64,
    shards: usize,
) -> Result<SubsetSelection> {
    check_cardinality(points, m)?;
    let start = Instant::now();
    let n = points.len();
    let shards = shards.max(1) as u64;
    let deadline = match budget {
        Budget::Time(t) => Some(start + t),
        Budget::Evaluations(_) => None,
    };
    let results: Vec<Result<(f64, Vec<usize>, u64)>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let quota = match budget {
                Budget::Evaluations(total) => total / shards + u64::from(s < total % shards),
                Budget::Time(_) => u64::MAX,
            };
            let mut best: Option<(f64, Vec<usize>)> = None;
            let mut evals = 0u64;
            while evals < quota {
                if evals > 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    break;
                }
                let mut c = sample(&mut rng, n, m).into_vec();
                c.sort_unstable();
                let v = star_discrepancy_of_subset(points, &c)?;
                evals += 1;
                if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                    best = Some((v, c));
                }
            }
            Ok(match best {
                Some((v, c)) => (v, c, evals),
                None => (f64::INFINITY, Vec::new(), 0),
            })
        })
        .collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut evals = 0u64;
    for r in results {
        let (v, c, e) = r?;
        evals += e;
        if e > 0 && best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, c));
        }
    }
    let (value, chosen) = best.ok_or_else(|| {
        Error::InvalidArgument("random search budget must allow one evaluation".into())
    })?;
    Ok(SubsetSelection {
        chosen,
        m,
        value,
        status: Status::Heuristic,
        stats: SearchStats {
            nodes: evals,
            prunes: 0,
            wall: start.elapsed(),
        },
    })
}
