//! Reference domains and seeded random inputs shared by the command line
//! tool and the test suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{Location, PolygonalDomain};
use crate::geom::{Point, Segment, SimplePolygon};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The plane minus the slit `{0} x [-1, 1]`.
pub fn slit_plane() -> PolygonalDomain {
    PolygonalDomain::from_coords(None, vec![], vec![vec![(0., -1.), (0., 1.)]], vec![])
        .expect("valid domain")
}

/// The unit square minus the slit `{0.5} x [0, 0.75]`.
pub fn square_with_slit() -> PolygonalDomain {
    PolygonalDomain::from_coords(
        Some(vec![(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
        vec![],
        vec![vec![(0.5, 0.), (0.5, 0.75)]],
        vec![],
    )
    .expect("valid domain")
}

/// The plane minus a straight slit, a bent slit and a diagonal slit.
pub fn three_slit_plane() -> PolygonalDomain {
    PolygonalDomain::from_coords(
        None,
        vec![],
        vec![
            vec![(0., -1.), (0., 1.)],
            vec![(1.5, -1.), (2., 0.), (1.5, 1.)],
            vec![(-1.5, 0.5), (-0.5, 1.5)],
        ],
        vec![],
    )
    .expect("valid domain")
}

/// Box used for rejection sampling: the outer polygon's box, or the
/// boundary's box grown by half its size on each side.
fn sampling_box(domain: &PolygonalDomain) -> (Point, Point) {
    if let Some(outer) = domain.outer() {
        return outer.bbox();
    }
    match domain.bbox() {
        Some((lo, hi)) => {
            let m = 0.5 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-3);
            (Point::new(lo.x - m, lo.y - m), Point::new(hi.x + m, hi.y + m))
        }
        None => (Point::new(-1., -1.), Point::new(1., 1.)),
    }
}

/// A uniformly random point of the open domain within the sampling box.
pub fn interior_point<R: Rng>(domain: &PolygonalDomain, rng: &mut R) -> Point {
    let (lo, hi) = sampling_box(domain);
    loop {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if domain.locate(p) == Location::Interior {
            return p;
        }
    }
}

/// `count` pairs of distinct interior points.
pub fn interior_pairs<R: Rng>(
    domain: &PolygonalDomain,
    count: usize,
    rng: &mut R,
) -> Vec<(Point, Point)> {
    (0..count)
        .map(|_| loop {
            let (x, y) = (interior_point(domain, rng), interior_point(domain, rng));
            if x != y {
                break (x, y);
            }
        })
        .collect()
}

/// A simple polygon star-shaped about the origin, with `n` vertices at
/// sorted random angles and radii in `[0.3, 1]`.
pub fn star_polygon<R: Rng>(n: usize, rng: &mut R) -> SimplePolygon {
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let pts = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.3..1.0);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(poly) = SimplePolygon::new(pts) {
            return poly;
        }
    }
}

/// A connected tree of `count` segments in the unit box: each new segment
/// starts at an existing vertex and has length in `[0.05, 0.3]`.
pub fn connected_segments<R: Rng>(count: usize, rng: &mut R) -> Vec<Segment> {
    let mut vertices = vec![Point::new(rng.gen_range(0.3..0.7), rng.gen_range(0.3..0.7))];
    let mut segments = Vec::with_capacity(count);
    while segments.len() < count {
        // Mostly extend the latest vertex, sometimes branch.
        let from = if rng.gen_bool(0.7) {
            *vertices.last().expect("nonempty")
        } else {
            vertices[rng.gen_range(0..vertices.len())]
        };
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let len = rng.gen_range(0.05..0.3);
        let to = Point::new(from.x + len * angle.cos(), from.y + len * angle.sin());
        if let Ok(s) = Segment::new(from, to) {
            segments.push(s);
            vertices.push(to);
        }
    }
    segments
}
