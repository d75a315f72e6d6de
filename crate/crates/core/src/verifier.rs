//! Checks of the inner-distance bounds on concrete domains, the comb
//! sharpness sweep, the perpendicular detour construction and accessibility
//! curves.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use thiserror::Error;

use crate::domain::{comb_domain, decompose_boundary, DomainError, Location, PolygonalDomain};
use crate::geodesic::{inner_distance, GeodesicError, GeodesicPath};
use crate::geom::{orient, GeomError, Point, Polyline, SimplePolygon};

/// Absolute tolerance for every bound comparison.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("contract violated: {0}")]
    ContractViolated(String),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub pair: (Point, Point),
    pub distance: f64,
    pub euclidean: f64,
    pub h1_e: f64,
    pub h1_boundary: f64,
    /// `0` for bounded domains, `|x - y|` otherwise.
    pub q: f64,
    /// `q + h1_e`.
    pub bound_value: f64,
    /// `|x - y| + (pi/2) h1_boundary`.
    pub classic_bound: f64,
    /// `bound_value - distance`.
    pub margin: f64,
    pub satisfied: bool,
    pub classic_satisfied: bool,
}

/// One report per pair, in input order. Errors are kept per pair.
pub fn verify_main_theorem(
    domain: &PolygonalDomain,
    pairs: &[(Point, Point)],
) -> Vec<Result<BoundReport, GeodesicError>> {
    let decomposition = decompose_boundary(domain);
    let h1_e = decomposition.h1_e;
    let h1_boundary = domain.h1_boundary();
    let bounded = domain.is_bounded();
    pairs
        .par_iter()
        .map(|&(x, y)| {
            for p in [x, y] {
                if domain.locate(p) != Location::Interior {
                    return Err(GeodesicError::InvalidInput(format!(
                        "({}, {}) is not an interior point",
                        p.x, p.y
                    )));
                }
            }
            let (distance, _) = inner_distance(domain, x, y)?;
            let euclidean = x.distance(&y);
            let q = if bounded { 0.0 } else { euclidean };
            let bound_value = q + h1_e;
            let classic_bound = euclidean + FRAC_PI_2 * h1_boundary;
            Ok(BoundReport {
                pair: (x, y),
                distance,
                euclidean,
                h1_e,
                h1_boundary,
                q,
                bound_value,
                classic_bound,
                margin: bound_value - distance,
                satisfied: distance <= bound_value + BOUND_TOL,
                classic_satisfied: distance <= classic_bound + BOUND_TOL,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BatchStatus {
    AllSatisfied,
    /// Some bound failed; this takes precedence over errors.
    Violation,
    /// No bound failed but some pair could not be evaluated.
    Errors,
}

pub fn batch_status<E>(reports: &[Result<BoundReport, E>]) -> BatchStatus {
    let violated = reports
        .iter()
        .flatten()
        .any(|r| !(r.satisfied && r.classic_satisfied));
    if violated {
        BatchStatus::Violation
    } else if reports.iter().any(Result::is_err) {
        BatchStatus::Errors
    } else {
        BatchStatus::AllSatisfied
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub distance: f64,
    pub h1_e: f64,
    pub ratio: f64,
    /// Comb indices whose slits have zero length.
    pub degenerate: Vec<usize>,
}

/// Query pair used for comb(n): right of every slit and left of every slit,
/// both at mid-height.
pub fn comb_pair(n: usize) -> (Point, Point) {
    (
        Point::new(0.9, 0.5),
        Point::new(1.0 / (4.0 * (n as f64 + 1.0)), 0.5),
    )
}

/// Ratio of inner distance to boundary length on comb(n) for each `n`, in
/// input order.
pub fn sharpness_sweep(n_values: &[usize]) -> Result<Vec<SweepRow>, VerifyError> {
    if let Some(&n) = n_values.iter().find(|&&n| n < 2) {
        return Err(VerifyError::InvalidInput(format!("comb needs n >= 2, got {n}")));
    }
    n_values
        .par_iter()
        .map(|&n| {
            let comb = comb_domain(n)?;
            let (x, y) = comb_pair(n);
            let (distance, _) = inner_distance(&comb.domain, x, y)?;
            let h1_e = decompose_boundary(&comb.domain).h1_e;
            Ok(SweepRow {
                n,
                distance,
                h1_e,
                ratio: distance / h1_e,
                degenerate: comb.degenerate,
            })
        })
        .collect()
}

/// The two curves joining `x` to `y` through the boundary of a polygon.
#[derive(Clone, Debug)]
pub struct Detour {
    pub gamma6: Polyline,
    pub gamma7: Polyline,
    /// Boundary hits `u1..u4` of the perpendiculars: `u1`, `u3` through `x`,
    /// `u2`, `u4` through `y`, with `u1`, `u2` on the left of `x -> y`.
    pub hits: [Point; 4],
    pub perimeter: f64,
}

impl Detour {
    pub fn total(&self) -> f64 {
        self.gamma6.length() + self.gamma7.length()
    }
}

#[derive(Clone, Copy, Debug)]
struct Hit {
    point: Point,
    /// Arc-length position along the boundary from vertex 0.
    s: f64,
    /// Index of the first polygon vertex strictly after the hit.
    next: usize,
}

/// Joins `x` to `y` by following the perpendiculars to `[x, y]` out to the
/// boundary and walking along it. The two curves use disjoint boundary arcs
/// and the complementary arcs dominate the two perpendicular chords, so
/// their total length is at most the perimeter.
pub fn boundary_detour(w: &SimplePolygon, x: Point, y: Point) -> Result<Detour, VerifyError> {
    for p in [x, y] {
        if crate::geom::polygon_contains(w, p) != crate::geom::Containment::Inside {
            return Err(VerifyError::InvalidInput(format!(
                "({}, {}) is not strictly inside the polygon",
                p.x, p.y
            )));
        }
    }
    if x == y {
        return Err(VerifyError::InvalidInput("x and y coincide".into()));
    }
    let d = y.sub(&x);
    let normal = Point::new(-d.y, d.x).scale(1.0 / d.norm());
    let (lo, hi) = w.bbox();
    let reach = 4.0 * (hi.x - lo.x + hi.y - lo.y);

    let u1 = ray_hit(w, x, normal, reach)?;
    let u3 = ray_hit(w, x, normal.scale(-1.0), reach)?;
    let u2 = ray_hit(w, y, normal, reach)?;
    let u4 = ray_hit(w, y, normal.scale(-1.0), reach)?;

    let perimeter = w.perimeter();
    // Walk the boundary forward from u1 and pair each x-hit with the
    // adjacent y-hit along an arc free of the other hits.
    let labelled = [(u1, 'x', 1usize), (u2, 'y', 2), (u3, 'x', 3), (u4, 'y', 4)];
    let mut order = labelled.to_vec();
    let key = |h: &Hit| (h.s - u1.s).rem_euclid(perimeter);
    order.sort_by(|a, b| key(&a.0).total_cmp(&key(&b.0)));
    let mut curves: Vec<(usize, Vec<Point>)> = Vec::new();
    for k in 0..4 {
        let (from, fk, fl) = order[k];
        let (to, tk, _) = order[(k + 1) % 4];
        if fk == tk {
            continue;
        }
        let arc = boundary_arc(w, from, to);
        let mut pts = Vec::with_capacity(arc.len() + 2);
        if fk == 'x' {
            pts.push(x);
            pts.extend(arc);
            pts.push(y);
        } else {
            pts.push(x);
            pts.extend(arc.into_iter().rev());
            pts.push(y);
        }
        let x_label = if fk == 'x' { fl } else { order[(k + 1) % 4].2 };
        curves.push((x_label, dedup(pts)));
    }
    if curves.len() != 2 {
        return Err(VerifyError::Degenerate(
            "perpendicular hits interleave; chords are not disjoint".into(),
        ));
    }
    curves.sort_by_key(|c| c.0);
    let gamma7 = Polyline::new(curves.pop().expect("two curves").1)?;
    let gamma6 = Polyline::new(curves.pop().expect("two curves").1)?;
    let detour = Detour {
        gamma6,
        gamma7,
        hits: [u1.point, u2.point, u3.point, u4.point],
        perimeter,
    };
    if detour.total() > perimeter + BOUND_TOL {
        return Err(VerifyError::ContractViolated(format!(
            "detour lengths sum to {} > perimeter {perimeter}",
            detour.total()
        )));
    }
    Ok(detour)
}

fn dedup(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    pts
}

/// First transversal boundary crossing of the ray from `p` along `dir`.
fn ray_hit(w: &SimplePolygon, p: Point, dir: Point, reach: f64) -> Result<Hit, VerifyError> {
    let v = w.vertices();
    let n = v.len();
    let q = p.add(&dir.scale(reach));
    let side: Vec<i8> = v.iter().map(|&a| orient(p, q, a)).collect();
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    for i in 0..n {
        cum.push(cum[i] + v[i].distance(&v[(i + 1) % n]));
    }
    let ahead = |a: Point| a.sub(&p).x * dir.x + a.sub(&p).y * dir.y;

    let mut best: Option<(f64, Result<Hit, String>)> = None;
    let mut consider = |t: f64, hit: Result<Hit, String>| {
        if t > 0.0 && best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            best = Some((t, hit));
        }
    };
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (v[i], v[j]);
        match (side[i], side[j]) {
            (0, 0) => {
                let t = ahead(a).min(ahead(b));
                consider(t, Err(format!("ray runs along edge {i}")));
            }
            (0, _) => {
                let prev = side[(i + n - 1) % n];
                let t = ahead(a);
                if prev * side[j] < 0 {
                    consider(
                        t,
                        Ok(Hit {
                            point: a,
                            s: cum[i],
                            next: j,
                        }),
                    );
                } else {
                    consider(t, Err(format!("ray is tangent at vertex {i}")));
                }
            }
            (si, sj) if si * sj < 0 => {
                let (pa, pb) = (a.sub(&p), b.sub(&p));
                let cross = |u: Point, w: Point| u.x * w.y - u.y * w.x;
                let e = pb.sub(&pa);
                let point = p.add(&dir.scale(cross(pa, e) / cross(dir, e)));
                consider(
                    ahead(point),
                    Ok(Hit {
                        point,
                        s: cum[i] + a.distance(&point),
                        next: j,
                    }),
                );
            }
            _ => {}
        }
    }
    match best {
        Some((_, Ok(hit))) => Ok(hit),
        Some((_, Err(msg))) => Err(VerifyError::Degenerate(msg)),
        None => Err(VerifyError::Degenerate("ray leaves the polygon without a hit".into())),
    }
}

/// Boundary points from `from` forward to `to`, both included.
fn boundary_arc(w: &SimplePolygon, from: Hit, to: Hit) -> Vec<Point> {
    let v = w.vertices();
    let n = v.len();
    let mut out = vec![from.point];
    let span = (to.s - from.s).rem_euclid(w.perimeter());
    let mut walked = 0.0;
    let mut k = from.next;
    let mut last = from.point;
    for _ in 0..n {
        let step = last.distance(&v[k]);
        if walked + step >= span {
            break;
        }
        walked += step;
        out.push(v[k]);
        last = v[k];
        k = (k + 1) % n;
    }
    out.push(to.point);
    out
}

/// A path from interior `x` to boundary point `y` whose length is checked
/// against the total boundary length plus `eps`.
pub fn accessibility_curve(
    domain: &PolygonalDomain,
    x: Point,
    y: Point,
    eps: f64,
) -> Result<GeodesicPath, VerifyError> {
    if !domain.is_bounded() {
        return Err(VerifyError::InvalidInput("domain must be bounded".into()));
    }
    if !(eps > 0.0) {
        return Err(VerifyError::InvalidInput(format!("eps must be positive, got {eps}")));
    }
    if domain.locate(x) != Location::Interior {
        return Err(VerifyError::InvalidInput("x must be an interior point".into()));
    }
    if domain.locate(y) != Location::Boundary {
        return Err(VerifyError::InvalidInput("y must lie on the boundary".into()));
    }
    let (_, path) = inner_distance(domain, x, y)?;
    path.validate(domain)?;
    if !path.is_injective() {
        return Err(VerifyError::ContractViolated("path is not injective".into()));
    }
    let budget = domain.h1_boundary() + eps;
    if path.length > budget {
        return Err(VerifyError::ContractViolated(format!(
            "path length {} exceeds {budget}",
            path.length
        )));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square() -> SimplePolygon {
        SimplePolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn detour_symmetric_square() {
        let d = boundary_detour(&square(), p(0.3, 0.5), p(0.7, 0.5)).unwrap();
        assert!(close(d.gamma6.length(), 1.4));
        assert!(close(d.gamma7.length(), 1.4));
        assert_eq!(d.hits[0], p(0.3, 1.0));
        assert_eq!(d.gamma6.vertices().first(), Some(&p(0.3, 0.5)));
        assert_eq!(d.gamma6.vertices().last(), Some(&p(0.7, 0.5)));
    }

    #[test]
    fn detour_low_pair() {
        let d = boundary_detour(&square(), p(0.3, 0.2), p(0.7, 0.2)).unwrap();
        let mut lens = [d.gamma6.length(), d.gamma7.length()];
        lens.sort_by(f64::total_cmp);
        assert!(close(lens[0], 0.8) && close(lens[1], 2.0), "{lens:?}");
        assert!(d.total() <= 4.0);
    }

    #[test]
    fn detour_through_corners_is_tangent() {
        // A notch from the right whose tip (1, 1) sits on the perpendicular at x.
        let notched = SimplePolygon::new(vec![
            p(0., 0.),
            p(2., 0.),
            p(2., 0.8),
            p(1., 1.),
            p(2., 1.2),
            p(2., 2.),
            p(0., 2.),
        ])
        .unwrap();
        let err = boundary_detour(&notched, p(1., 0.5), p(1.5, 0.5));
        assert!(matches!(err, Err(VerifyError::Degenerate(_))));
    }

    #[test]
    fn detour_hexagon() {
        let hex: Vec<Point> = (0..6)
            .map(|k| {
                let a = k as f64 * std::f64::consts::PI / 3.0;
                p(a.cos(), a.sin())
            })
            .collect();
        let hex = SimplePolygon::new(hex).unwrap();
        let d = boundary_detour(&hex, p(-0.2, 0.1), p(0.3, 0.1)).unwrap();
        assert!(d.total() <= 6.0 + BOUND_TOL);
    }

    #[test]
    fn report_fields_for_slit() {
        let d = PolygonalDomain::from_coords(None, vec![], vec![vec![(0., -1.), (0., 1.)]], vec![])
            .unwrap();
        let r = verify_main_theorem(&d, &[(p(-1., 0.), p(1., 0.))]);
        let r = r[0].as_ref().unwrap();
        assert!((r.distance - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.q, 2.0);
        assert_eq!(r.bound_value, 4.0);
        assert!(r.satisfied && r.classic_satisfied);
        assert_eq!(batch_status(&[Ok::<_, ()>(r.clone())]), BatchStatus::AllSatisfied);
    }

    #[test]
    fn errors_stay_per_pair() {
        let d = PolygonalDomain::from_coords(
            Some(vec![(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        let r = verify_main_theorem(&d, &[(p(2., 2.), p(0.5, 0.5)), (p(0.2, 0.2), p(0.5, 0.5))]);
        assert!(r[0].is_err());
        assert!(r[1].is_ok());
        assert_eq!(batch_status(&r), BatchStatus::Errors);
    }

    #[test]
    fn sweep_rejects_small_n() {
        assert!(matches!(sharpness_sweep(&[1]), Err(VerifyError::InvalidInput(_))));
    }

    #[test]
    fn accessibility_examples() {
        let sq = PolygonalDomain::from_coords(
            Some(vec![(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        let path = accessibility_curve(&sq, p(0.5, 0.5), p(0., 0.), 1e-9).unwrap();
        assert_eq!(path.vertices.len(), 2);
        assert!((path.length - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(accessibility_curve(&sq, p(0.5, 0.5), p(0.5, 0.5), 1e-9).is_err());
    }
}
