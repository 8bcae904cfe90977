#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stardisc::geometry::PointSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` uniform points in `[0, 1)^d`.
pub fn random_set(rng: &mut ChaCha8Rng, d: usize, n: usize) -> PointSet {
    let coords: Vec<f64> = (0..d * n).map(|_| rng.gen::<f64>()).collect();
    PointSet::from_flat(d, coords).unwrap()
}

/// Like [`random_set`] but on the lattice `k / grid`, so coordinates repeat.
pub fn lattice_set(rng: &mut ChaCha8Rng, d: usize, n: usize, grid: u32) -> PointSet {
    let coords: Vec<f64> = (0..d * n)
        .map(|_| rng.gen_range(0..=grid) as f64 / grid as f64)
        .collect();
    PointSet::from_flat(d, coords).unwrap()
}

/// Every `k`-subset of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
