use innerdist::samples::{interior_pairs, rng, square_with_slit, star_polygon, three_slit_plane};
use innerdist::verifier::{
    accessibility_curve, batch_status, boundary_detour, sharpness_sweep, verify_main_theorem,
    BatchStatus, VerifyError, BOUND_TOL,
};
use innerdist::{comb_boundary_length, comb_domain, decompose_boundary, Point, PolygonalDomain};
use rand::Rng;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

#[test]
fn random_pairs_satisfy_both_bounds() {
    let mut r = rng(21);
    for d in [
        square_with_slit(),
        comb_domain(4).unwrap().domain,
        comb_domain(8).unwrap().domain,
        three_slit_plane(),
    ] {
        let pairs = interior_pairs(&d, 40, &mut r);
        let reports = verify_main_theorem(&d, &pairs);
        assert_eq!(reports.len(), pairs.len());
        for (rep, pair) in reports.iter().zip(&pairs) {
            let rep = rep.as_ref().unwrap();
            assert_eq!(rep.pair, *pair);
            assert!(rep.satisfied, "{rep:?}");
            assert!(rep.classic_satisfied, "{rep:?}");
        }
        assert_eq!(batch_status(&reports), BatchStatus::AllSatisfied);
    }
}

#[test]
fn square_with_slit_report() {
    let reps = verify_main_theorem(&square_with_slit(), &[(p(0.25, 0.5), p(0.75, 0.5))]);
    let rep = reps[0].as_ref().unwrap();
    assert_eq!(rep.q, 0.0);
    assert_eq!(rep.bound_value, 4.75);
    assert!((rep.distance - 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn comb_ten_report() {
    let comb = comb_domain(10).unwrap();
    let reps = verify_main_theorem(&comb.domain, &[(p(0.9, 0.5), p(0.02, 0.5))]);
    let rep = reps[0].as_ref().unwrap();
    assert!((rep.bound_value - comb_boundary_length(10)).abs() < 1e-12);
    assert!(rep.satisfied);
    assert!(rep.distance / rep.bound_value < 1.0);
}

#[test]
fn point_obstacles_keep_e_separate() {
    let d = PolygonalDomain::from_coords(
        Some(vec![(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
        vec![],
        vec![],
        vec![(0.5, 0.5), (0.25, 0.75)],
    )
    .unwrap();
    let dec = decompose_boundary(&d);
    assert_eq!(dec.point_components().count(), 2);
    assert_eq!(dec.h1_e, 4.0);
    let reps = verify_main_theorem(&d, &[(p(0.1, 0.1), p(0.9, 0.9))]);
    let rep = reps[0].as_ref().unwrap();
    assert_eq!(rep.distance, p(0.1, 0.1).distance(&p(0.9, 0.9)));
}

#[test]
fn sweep_trend() {
    let rows = sharpness_sweep(&[2, 4, 6, 8, 10]).unwrap();
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 4, 6, 8, 10]);
    for w in rows.windows(2) {
        assert!(w[1].ratio >= w[0].ratio);
    }
    for r in &rows {
        assert!(r.ratio > 0.0 && r.ratio <= 1.0 + BOUND_TOL);
        assert_eq!(r.degenerate, vec![1]);
        assert!((r.h1_e - comb_boundary_length(r.n)).abs() < 1e-12);
    }
}

#[test]
fn detour_on_random_star_polygons() {
    let mut r = rng(31);
    let mut checked = 0;
    while checked < 200 {
        let n = r.gen_range(3..14);
        let w = star_polygon(n, &mut r);
        let inside = |q: Point| {
            innerdist::polygon_contains(&w, q) == innerdist::Containment::Inside
        };
        let x = p(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let y = p(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        if !inside(x) || !inside(y) || x == y {
            continue;
        }
        match boundary_detour(&w, x, y) {
            Ok(d) => {
                let (a, b) = (d.gamma6.length(), d.gamma7.length());
                assert!(a + b <= d.perimeter + BOUND_TOL);
                assert!(a.min(b) <= d.perimeter / 2.0 + BOUND_TOL);
                checked += 1;
            }
            Err(VerifyError::Degenerate(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn accessibility_examples() {
    let d = square_with_slit();
    let path = accessibility_curve(&d, p(0.25, 0.5), p(1., 0.5), 1e-9).unwrap();
    assert!(path.length <= 4.75 + 1e-9);
    assert!(path.vertices.contains(&p(0.5, 0.75)));
    assert!(path.is_injective());

    let comb = comb_domain(4).unwrap();
    let path = accessibility_curve(&comb.domain, p(0.9, 0.5), p(0., 1.), 1e-9).unwrap();
    assert!(path.length <= comb.domain.h1_boundary() + 1e-9);
    assert!(path.is_injective());

    assert!(matches!(
        accessibility_curve(&three_slit_plane(), p(5., 5.), p(0., 1.), 1e-9),
        Err(VerifyError::InvalidInput(_))
    ));
}
