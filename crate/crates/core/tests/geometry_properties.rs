mod common;

use proptest::prelude::*;
use rand::Rng;
use stardisc::geometry::{
    closed_count, grid, local_discrepancy, open_count, star_discrepancy, star_discrepancy_1d,
    star_discrepancy_2d, star_discrepancy_grid, volume, Point, PointSet, WitnessKind,
};

use common::{lattice_set, random_set, rng};

/// Maximum of the open deviation over the closed grid and the closed
/// deviation over the open grid, counted point by point.
fn direct_max(p: &PointSet) -> f64 {
    let n = p.len() as f64;
    let mut best = f64::NEG_INFINITY;
    for (closed_grid, open_side) in [(true, true), (false, false)] {
        let axes = grid(p, closed_grid);
        let mut idx = vec![0usize; axes.len()];
        'corners: loop {
            let q: Vec<f64> = idx.iter().zip(&axes).map(|(&i, a)| a.values[i]).collect();
            let v = if open_side {
                volume(&q) - open_count(&q, p).unwrap() as f64 / n
            } else {
                closed_count(&q, p).unwrap() as f64 / n - volume(&q)
            };
            best = best.max(v);
            for j in (0..idx.len()).rev() {
                idx[j] += 1;
                if idx[j] < axes[j].len() {
                    continue 'corners;
                }
                idx[j] = 0;
            }
            break;
        }
    }
    best
}

fn assert_witness_sound(p: &PointSet) {
    let r = star_discrepancy(p).unwrap();
    let local = local_discrepancy(&r.witness, p).unwrap();
    let at = match r.witness_kind {
        WitnessKind::Open => local.delta,
        WitnessKind::Closed => local.delta_bar,
    };
    assert_eq!(at, r.value);
}

#[test]
fn grid_value_bounds_random_probes() {
    let mut g = rng(11);
    for trial in 0..30 {
        let d = 1 + trial % 3;
        let n = g.gen_range(1..=20);
        let p = random_set(&mut g, d, n);
        let value = star_discrepancy_grid(&p).unwrap().value;
        assert_eq!(value, direct_max(&p));
        for _ in 0..1000 {
            let q: Vec<f64> = (0..d)
                .map(|_| {
                    // Half the probes sit on point coordinates.
                    if g.gen_bool(0.5) {
                        p.point(g.gen_range(0..n))[g.gen_range(0..d)]
                    } else {
                        g.gen::<f64>()
                    }
                })
                .collect();
            let local = local_discrepancy(&Point::new(q).unwrap(), &p).unwrap();
            assert!(
                local.max() <= value,
                "trial {trial}: probe exceeds grid value"
            );
        }
    }
}

#[test]
fn sweep_equals_grid_bit_for_bit() {
    let mut g = rng(12);
    for trial in 0..200 {
        let n = g.gen_range(1..=50);
        let p = if trial % 4 == 0 {
            lattice_set(&mut g, 2, n, 8)
        } else {
            random_set(&mut g, 2, n)
        };
        let sweep = star_discrepancy_2d(&p).unwrap();
        let full = star_discrepancy_grid(&p).unwrap();
        assert_eq!(sweep.value.to_bits(), full.value.to_bits(), "trial {trial}");
        assert_eq!(sweep.witness, full.witness, "trial {trial}");
        assert_eq!(sweep.witness_kind, full.witness_kind, "trial {trial}");
    }
}

#[test]
fn one_dimensional_formula_matches_grid() {
    let mut g = rng(13);
    for _ in 0..200 {
        let n = g.gen_range(1..=30);
        let p = random_set(&mut g, 1, n);
        let a = star_discrepancy_grid(&p).unwrap().value;
        let b = star_discrepancy_1d(&p).unwrap().value;
        assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }
}

#[test]
fn witnesses_are_sound_and_values_in_range() {
    let mut g = rng(14);
    for trial in 0..150 {
        let d = 1 + trial % 3;
        let n = g.gen_range(1..=25);
        let p = if trial % 5 == 0 {
            lattice_set(&mut g, d, n, 4)
        } else {
            random_set(&mut g, d, n)
        };
        assert_witness_sound(&p);
        let v = star_discrepancy(&p).unwrap().value;
        assert!(v > 0.0 && v <= 1.0);
    }
}

#[test]
fn adding_a_point_can_raise_or_lower_the_value() {
    let base = [[0.1, 0.4], [0.2, 0.9], [0.7, 0.6], [0.8, 0.7]];
    let v = |extra: Option<[f64; 2]>| {
        let p = PointSet::from_points(2, base.iter().copied().chain(extra)).unwrap();
        star_discrepancy(&p).unwrap().value
    };
    let (a, b, c) = (v(None), v(Some([0.9, 0.2])), v(Some([0.3, 0.3])));
    assert_eq!(a, 0.4);
    assert!(b > a && c < a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sweep_and_grid_agree_on_tied_coordinates(
        raw in prop::collection::vec((0u32..=6, 0u32..=6), 1..30)
    ) {
        let p = PointSet::from_points(
            2,
            raw.iter().map(|&(x, y)| [x as f64 / 6.0, y as f64 / 6.0]),
        ).unwrap();
        let sweep = star_discrepancy_2d(&p).unwrap();
        prop_assert_eq!(sweep.value, star_discrepancy_grid(&p).unwrap().value);
        prop_assert_eq!(sweep.value, direct_max(&p));
    }

    #[test]
    fn value_ignores_point_order(
        raw in prop::collection::vec(prop::array::uniform3(0.0f64..1.0), 1..15),
        rot in 0usize..15
    ) {
        let p = PointSet::from_points(3, raw.iter().copied()).unwrap();
        let mut shuffled = raw.clone();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let q = PointSet::from_points(3, shuffled).unwrap();
        prop_assert_eq!(
            star_discrepancy(&p).unwrap().value,
            star_discrepancy(&q).unwrap().value
        );
    }
}
