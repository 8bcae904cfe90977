//! Base-2 Sobol' points in Gray-code order.

/// Joe–Kuo primitive polynomial data for dimensions 2..=8:
/// `(degree s, coefficient bits a, initial m_1..m_s)`.
const JOE_KUO: [(u32, u32, &[u32]); 7] = [
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
    (4, 4, &[1, 3, 5, 13]),
    (5, 2, &[1, 1, 5, 5, 17]),
];

pub const MAX_DIM: usize = JOE_KUO.len() + 1;

const BITS: u32 = 32;

/// Direction numbers `v_k = m_k * 2^(32-k)` for one dimension.
fn directions(dim_index: usize) -> [u32; BITS as usize] {
    let mut v = [0u32; BITS as usize];
    if dim_index == 0 {
        for (k, vk) in v.iter_mut().enumerate() {
            *vk = 1 << (BITS - 1 - k as u32);
        }
        return v;
    }
    let (s, a, init) = JOE_KUO[dim_index - 1];
    let s = s as usize;
    let mut m = vec![0u64; BITS as usize];
    m[..s].copy_from_slice(&init.iter().map(|&x| x as u64).collect::<Vec<_>>());
    for k in s..BITS as usize {
        let mut mk = m[k - s] ^ (m[k - s] << s);
        for i in 1..s {
            let bit = (a >> (s - 1 - i)) & 1;
            if bit == 1 {
                mk ^= m[k - i] << i;
            }
        }
        m[k] = mk;
    }
    for (k, vk) in v.iter_mut().enumerate() {
        *vk = (m[k] << (BITS - 1 - k as u32)) as u32;
    }
    v
}

/// The first `count` Sobol' points after the all-zeros point.
pub fn sobol_points(dim: usize, count: usize) -> Vec<f64> {
    assert!((1..=MAX_DIM).contains(&dim));
    let dirs: Vec<_> = (0..dim).map(directions).collect();
    let mut state = vec![0u32; dim];
    let mut out = Vec::with_capacity(dim * count);
    let scale = 1.0 / (1u64 << BITS) as f64;
    // Point i is state after XOR-ing the direction of the lowest zero bit
    // of i - 1, starting from the zero point.
    for i in 1..=count as u64 {
        let c = (i - 1).trailing_ones() as usize;
        assert!(c < BITS as usize, "Sobol' index exhausted 32 bits");
        for j in 0..dim {
            state[j] ^= dirs[j][c];
            out.push(state[j] as f64 * scale);
        }
    }
    out
}
