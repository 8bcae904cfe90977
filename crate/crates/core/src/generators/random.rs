//! Seeded random constructions.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, a portable
//! counter-based generator, so a seed reproduces the same bits everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_points(dim: usize, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    (0..dim * count).map(|_| rng.gen::<f64>()).collect()
}

/// Largest double strictly below `x` (for positive finite `x`).
fn prev_float(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

/// A uniform value inside the Latin cell `[cell/n, (cell+1)/n)`.
fn in_cell(cell: usize, n: usize, u: f64) -> f64 {
    let mut x = (cell as f64 + u) / n as f64;
    while x > 0.0 && (x * n as f64).floor() as usize > cell {
        x = prev_float(x);
    }
    x
}

/// Improved Latin hypercube: points are placed one at a time, each chosen
/// among `candidates` random admissible points (every axis in a still-free
/// cell) as the one farthest, in minimum Euclidean distance, from the points
/// already placed.
pub fn ilhs_points(dim: usize, count: usize, candidates: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    let candidates = candidates.max(1);
    let mut free: Vec<Vec<usize>> = vec![(0..count).collect(); dim];
    let mut placed: Vec<f64> = Vec::with_capacity(dim * count);
    let mut cand_cells = vec![0usize; dim];
    let mut best_cells = vec![0usize; dim];
    let mut cand = vec![0.0; dim];
    let mut best = vec![0.0; dim];
    for step in 0..count {
        let tries = if step == 0 { 1 } else { candidates };
        let mut best_score = f64::NEG_INFINITY;
        for _ in 0..tries {
            for j in 0..dim {
                let slot = rng.gen_range(0..free[j].len());
                cand_cells[j] = slot;
                cand[j] = in_cell(free[j][slot], count, rng.gen::<f64>());
            }
            let score = placed
                .chunks_exact(dim)
                .map(|p| {
                    p.iter()
                        .zip(&cand)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min);
            if score > best_score {
                best_score = score;
                best.copy_from_slice(&cand);
                best_cells.copy_from_slice(&cand_cells);
            }
        }
        for j in 0..dim {
            free[j].swap_remove(best_cells[j]);
        }
        placed.extend_from_slice(&best);
    }
    placed
}
