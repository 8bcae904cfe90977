/// First primes, enough for the Halton bases this crate supports.
pub const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

pub fn is_prime(v: u32) -> bool {
    v >= 2
        && (2..)
            .take_while(|k| k * k <= v)
            .all(|k| !v.is_multiple_of(k))
}

/// Smallest prime `>= v`.
pub fn next_prime(v: u32) -> u32 {
    (v.max(2)..)
        .find(|&k| is_prime(k))
        .expect("primes are unbounded")
}

/// Largest double below one.
const ONE_MINUS_EPSILON: f64 = 1.0 - f64::EPSILON / 2.0;

/// Van der Corput radical inverse of `i` in `base`, optionally mapping each
/// digit through `permutation` (which must fix 0).
///
/// The reversed digit string is accumulated as an integer and divided once
/// by `base^k`, so the result is correctly rounded whenever both fit in 53
/// bits.
pub fn radical_inverse(i: u64, base: u32, permutation: Option<&[u32]>) -> f64 {
    assert!(base >= 2, "radical inverse base must be >= 2");
    if let Some(p) = permutation {
        assert_eq!(p.len(), base as usize, "permutation must cover every digit");
        assert_eq!(p[0], 0, "digit permutation must fix 0");
    }
    let b = base as u64;
    let mut rest = i;
    let mut numerator: u64 = 0;
    let mut denominator: u64 = 1;
    while rest > 0 {
        let digit = rest % b;
        rest /= b;
        let digit = match permutation {
            Some(p) => p[digit as usize] as u64,
            None => digit,
        };
        match (
            numerator.checked_mul(b).and_then(|v| v.checked_add(digit)),
            denominator.checked_mul(b),
        ) {
            (Some(num), Some(den)) => {
                numerator = num;
                denominator = den;
            }
            _ => return float_tail(numerator, denominator, digit, rest, b, permutation),
        }
    }
    (numerator as f64 / denominator as f64).min(ONE_MINUS_EPSILON)
}

// Digits past 64 bits of precision only matter at the ulp level; finish the
// sum in floating point.
fn float_tail(
    numerator: u64,
    denominator: u64,
    mut digit: u64,
    mut rest: u64,
    b: u64,
    permutation: Option<&[u32]>,
) -> f64 {
    let mut value = numerator as f64 / denominator as f64;
    let mut scale = 1.0 / (denominator as f64 * b as f64);
    loop {
        value += digit as f64 * scale;
        if rest == 0 {
            return value.min(ONE_MINUS_EPSILON);
        }
        scale /= b as f64;
        digit = rest % b;
        rest /= b;
        if let Some(p) = permutation {
            digit = p[digit as usize] as u64;
        }
    }
}

/// Reverse digit scramble `0 -> 0`, `k -> b - k`.
pub fn reverse_permutation(base: u32) -> Vec<u32> {
    (0..base)
        .map(|k| if k == 0 { 0 } else { base - k })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(radical_inverse(1, 2, None), 0.5);
        assert_eq!(radical_inverse(3, 2, None), 0.75);
        assert_eq!(radical_inverse(2, 3, None), 2.0 / 3.0);
        assert_eq!(radical_inverse(0, 5, None), 0.0);
        // 6 = 110b -> 0.011b
        assert_eq!(radical_inverse(6, 2, None), 0.375);
    }

    #[test]
    fn reverse_scramble() {
        let p = reverse_permutation(3);
        assert_eq!(p, vec![0, 2, 1]);
        // 1 -> digit 2 -> 2/3 ; 5 = 12_3 -> digits (2,1) -> (1,2) -> 1/3 + 2/9
        assert_eq!(radical_inverse(1, 3, Some(&p)), 2.0 / 3.0);
        assert!((radical_inverse(5, 3, Some(&p)) - (1.0 / 3.0 + 2.0 / 9.0)).abs() < 1e-16);
        // Base 2 scramble is the identity.
        assert_eq!(reverse_permutation(2), vec![0, 1]);
    }

    #[test]
    fn huge_indices_stay_in_unit_interval() {
        for base in [2, 3, 5, 53] {
            let v = radical_inverse(u64::MAX, base, None);
            assert!((0.0..1.0).contains(&v), "{base}: {v}");
        }
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(2), 2);
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(8), 11);
        assert!(PRIMES.iter().all(|&p| is_prime(p)));
    }
}
