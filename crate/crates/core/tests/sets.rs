use innerdist::fractal::{
    fractal_level, fractal_stats, hull_lower_probe, level_count, nesting_check, sibling_gap_check,
};
use innerdist::painleve::{
    hull_double_length_check, painleve_cover, split_connected_set, ConnectedSet,
};
use innerdist::samples::{connected_segments, rng};
use innerdist::{connected_diam_vs_length, Point};
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn split_preserves_length_and_radius() {
    let mut r = rng(41);
    for _ in 0..100 {
        let n = r.gen_range(1..12);
        let k = ConnectedSet::new(connected_segments(n, &mut r)).unwrap();
        let radius = r.gen_range(0.05..0.5);
        let pieces = split_connected_set(&k, radius).unwrap();
        let total: f64 = pieces.iter().map(ConnectedSet::h1).sum();
        assert!((total - k.h1()).abs() < 1e-12, "{total} vs {}", k.h1());
        for piece in &pieces {
            assert!(piece.diameter() <= 2.0 * radius + 1e-12);
            let (diam, len) = connected_diam_vs_length(piece.segments()).unwrap();
            assert!(diam <= len + 1e-12);
        }
    }
}

#[test]
fn covers_validate() {
    let mut r = rng(43);
    for _ in 0..60 {
        let n = r.gen_range(1..10);
        let k = ConnectedSet::new(connected_segments(n, &mut r)).unwrap();
        for eps in [0.05, 0.2] {
            let cert = painleve_cover(&k, 0.1, eps).unwrap();
            assert!(cert.contains_k && cert.inside_u);
            assert!(cert.sum_boundary <= 2.0 * k.h1() + eps);
        }
    }
}

#[test]
fn hull_perimeter_at_most_twice_length() {
    let mut r = rng(47);
    for _ in 0..300 {
        let n = r.gen_range(1..15);
        let k = ConnectedSet::new(connected_segments(n, &mut r)).unwrap();
        let (_, ratio) = hull_double_length_check(&k).unwrap();
        assert!(ratio <= 2.0 + 1e-9, "{ratio}");
    }
}

#[test]
fn v_shapes_approach_two() {
    let mut last = 0.0;
    for h in [0.5, 0.1, 0.05, 0.01, 0.001] {
        let k = ConnectedSet::polyline(&[
            Point::new(-1., h),
            Point::new(0., 0.),
            Point::new(1., h),
        ])
        .unwrap();
        let (hull, ratio) = hull_double_length_check(&k).unwrap();
        let expected = (2.0 * (1.0 + h * h).sqrt() + 2.0) / (2.0 * (1.0 + h * h).sqrt());
        assert!((ratio - expected).abs() < 1e-12);
        assert!((hull - (2.0 * (1.0 + h * h).sqrt() + 2.0)).abs() < 1e-12);
        assert!(ratio > last && ratio < 2.0);
        last = ratio;
    }
    assert!(last > 1.95);
}

#[test]
fn fractal_closed_forms() {
    for k in 2..=5 {
        let level = fractal_level(k).unwrap();
        let stats = fractal_stats(&level);
        assert_eq!(stats.count as u64, level_count(k));
        assert_eq!(stats.radius, 1.0 / level_count(k) as f64);
        assert!((stats.diameter_sum - 2.0).abs() < 1e-12);
        // The closest disks are adjacent siblings.
        let parent_radius = stats.radius * (k as f64).exp2();
        let gap = sibling_gap_check(k, parent_radius).unwrap();
        assert!((stats.min_gap - gap.actual_gap).abs() < 1e-12 * parent_radius.max(1e-3));
    }
}

#[test]
fn fractal_nesting() {
    for k in 1..=4 {
        assert!(nesting_check(k).unwrap());
    }
}

#[test]
fn gap_sweep() {
    for k0 in 2..=10 {
        let g = sibling_gap_check(k0, 1.0).unwrap();
        assert!(g.satisfied);
        assert!(g.actual_gap / g.bound < 2.5);
    }
}

#[test]
fn hull_probes() {
    let mut r = rng(53);
    for k0 in [3u32, 4] {
        let n = 1u64 << k0;
        for len in 3..=n {
            for start in 1..=n {
                let idx: Vec<u64> = (0..len).map(|t| (start - 1 + t) % n + 1).collect();
                assert!(hull_lower_probe(k0, &idx, 128).unwrap().satisfied);
            }
        }
        let all: Vec<u64> = (1..=n).collect();
        for _ in 0..30 {
            let size = r.gen_range(3..=n as usize);
            let idx: Vec<u64> = all.choose_multiple(&mut r, size).copied().collect();
            assert!(hull_lower_probe(k0, &idx, 128).unwrap().satisfied);
        }
    }
}
