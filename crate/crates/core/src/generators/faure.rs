//! Faure points: radical inverse in a prime base `b >= d`, with coordinate
//! `j` scrambling the digit vector by the `j`-th power of the Pascal
//! matrix modulo `b`.

use super::radical::next_prime;

pub fn faure_base(dim: usize) -> u32 {
    next_prime(dim as u32)
}

fn digits(mut i: u64, base: u64) -> Vec<u64> {
    let mut d = Vec::new();
    while i > 0 {
        d.push(i % base);
        i /= base;
    }
    d
}

/// Binomial coefficients `C(r, k) mod b` for `r, k < size`.
fn pascal_mod(size: usize, base: u64) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; size]; size];
    for r in 0..size {
        c[r][0] = 1;
        for k in 1..=r {
            c[r][k] = (c[r - 1][k - 1] + c[r - 1][k]) % base;
        }
    }
    c
}

/// Points with indices `1..=count`.
pub fn faure_points(dim: usize, count: usize) -> Vec<f64> {
    let base = faure_base(dim) as u64;
    let max_digits = digits(count as u64, base).len().max(1);
    let binom = pascal_mod(max_digits, base);
    let mut out = Vec::with_capacity(dim * count);
    for i in 1..=count as u64 {
        let a = digits(i, base);
        for j in 0..dim as u64 {
            // y_k = sum_{r >= k} C(r, k) j^(r-k) a_r  (mod b)
            let mut numerator = 0u64;
            let mut denominator = 1u64;
            for k in 0..a.len() {
                let mut y = 0u64;
                let mut power = 1u64;
                for r in k..a.len() {
                    y = (y + binom[r][k] * power % base * a[r]) % base;
                    power = power * j % base;
                }
                numerator = numerator * base + y;
                denominator *= base;
            }
            out.push(numerator as f64 / denominator as f64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_choice() {
        assert_eq!(faure_base(1), 2);
        assert_eq!(faure_base(2), 2);
        assert_eq!(faure_base(3), 3);
        assert_eq!(faure_base(4), 5);
    }

    #[test]
    fn two_dimensional_start() {
        let p = faure_points(2, 3);
        // i=1: digits (1) -> (0.5, 0.5)
        assert_eq!(&p[0..2], &[0.5, 0.5]);
        // i=2: digits (0,1); y_0 = a_0 + a_1 = 1, y_1 = a_1 = 1 -> 0.75
        assert_eq!(&p[2..4], &[0.25, 0.75]);
        // i=3: digits (1,1); y_0 = 0, y_1 = 1 -> 0.25
        assert_eq!(&p[4..6], &[0.75, 0.25]);
    }

    #[test]
    fn first_coordinate_is_van_der_corput() {
        let p = faure_points(3, 30);
        for i in 0..30 {
            assert_eq!(
                p[i * 3],
                super::super::radical_inverse(i as u64 + 1, 3, None)
            );
        }
    }

    #[test]
    fn full_base_power_blocks_are_latin() {
        // Indices 1..b^k miss only the zero point of a (0,k,d)-net.
        let (dim, base) = (3usize, 3usize);
        let n = base.pow(3);
        let mut pts = vec![0.0; dim];
        pts.extend(faure_points(dim, n - 1));
        for j in 0..dim {
            let mut seen = vec![false; n];
            for i in 0..n {
                let cell = (pts[i * dim + j] * n as f64 + 1e-9) as usize;
                assert!(!seen[cell]);
                seen[cell] = true;
            }
        }
    }
}
