//! Planar primitives: points, segments, polylines, simple polygons and
//! convex hulls.
//!
//! All sign decisions (orientation, crossing, containment) go through
//! adaptive-precision predicates, so they are exact for any finite `f64`
//! input. Lengths are ordinary floating point.

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),
    #[error("degenerate segment: both endpoints are {0:?}")]
    DegenerateSegment(Point),
    #[error("polyline needs at least 2 vertices, got {0}")]
    ShortPolyline(usize),
    #[error("polyline has a zero-length segment at vertex {0}")]
    RepeatedVertex(usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    ShortPolygon(usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("empty point set")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance `|self - other|`.
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Lexicographic order on (x, y). Coordinates are assumed finite.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    /// Replaces `-0.0` by `0.0` so that exact-equality lookups agree with `==`.
    pub(crate) fn canonical(self) -> Point {
        Point::new(self.x + 0.0, self.y + 0.0)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Sign of the doubled signed area of `(p, q, r)`, without input checks.
#[inline]
pub(crate) fn orient(p: Point, q: Point, r: Point) -> i8 {
    let det = robust::orient2d(
        robust::Coord { x: p.x, y: p.y },
        robust::Coord { x: q.x, y: q.y },
        robust::Coord { x: r.x, y: r.y },
    );
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

/// Exact orientation of the triple `(p, q, r)`.
pub fn orientation(p: Point, q: Point, r: Point) -> Result<Orientation, GeomError> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(GeomError::NonFinite("orientation"));
    }
    Ok(match orient(p, q, r) {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    })
}

/// `p` lies on the closed segment `[a, b]`.
#[inline]
pub(crate) fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// `p` lies on the open segment `(a, b)`.
#[inline]
pub(crate) fn strictly_inside_segment(a: Point, b: Point, p: Point) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

/// Position of a point known to be collinear with `[a, b]`, along its
/// dominant axis. Monotone along the segment direction, exact.
#[inline]
pub(crate) fn axis_key(a: Point, b: Point, p: Point) -> f64 {
    if (b.x - a.x).abs() >= (b.y - a.y).abs() {
        if b.x >= a.x {
            p.x
        } else {
            -p.x
        }
    } else if b.y >= a.y {
        p.y
    } else {
        -p.y
    }
}

/// Open segments `(a, b)` and `(c, d)` meet in a single point interior to both.
#[inline]
pub(crate) fn proper_cross_pts(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == 0 || o2 == 0 || o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o3 != 0 && o4 != 0 && o3 != o4
}

/// Closed segments `[a, b]` and `[c, d]` share at least one point.
pub(crate) fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// The two closed segments are collinear and share a piece of positive length.
pub(crate) fn collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool {
    if orient(a, b, c) != 0 || orient(a, b, d) != 0 {
        return false;
    }
    let (lo1, hi1) = sorted(axis_key(a, b, a), axis_key(a, b, b));
    let (lo2, hi2) = sorted(axis_key(a, b, c), axis_key(a, b, d));
    lo1.max(lo2) < hi1.min(hi2)
}

fn sorted(u: f64, v: f64) -> (f64, f64) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Orders `a` and `b` by the angle of `a - center` and `b - center`,
/// measured counterclockwise from the positive x axis in `[0, 2π)`.
/// Exact for finite inputs; neither point may equal `center`.
pub(crate) fn cmp_around(center: Point, a: Point, b: Point) -> Ordering {
    let half = |p: Point| -> u8 {
        if p.y > center.y || (p.y == center.y && p.x > center.x) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| match orient(center, a, b) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(GeomError::NonFinite("segment"));
        }
        if a == b {
            return Err(GeomError::DegenerateSegment(a));
        }
        Ok(Segment {
            a: a.canonical(),
            b: b.canonical(),
        })
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }

    pub fn point_at(&self, t: f64) -> Point {
        Point::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }
}

/// True iff the open segments meet in exactly one point interior to both.
pub fn proper_cross(s: &Segment, t: &Segment) -> bool {
    proper_cross_pts(s.a, s.b, t.a, t.b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.len() < 2 {
            return Err(GeomError::ShortPolyline(vertices.len()));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite("polyline"));
        }
        let vertices: Vec<Point> = vertices.into_iter().map(Point::canonical).collect();
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(GeomError::RepeatedVertex(i + 1));
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment { a: w[0], b: w[1] })
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

impl SimplePolygon {
    /// Validates simplicity and nonzero area. Vertex order is kept as given.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::ShortPolygon(n));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite("polygon"));
        }
        let vertices: Vec<Point> = vertices.into_iter().map(Point::canonical).collect();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(GeomError::RepeatedVertex((i + 1) % n));
            }
        }
        if (2..n).all(|k| orient(vertices[0], vertices[1], vertices[k]) == 0) {
            return Err(GeomError::ZeroArea);
        }
        let edge = |i: usize| (vertices[i], vertices[(i + 1) % n]);
        for i in 0..n {
            let (a, b) = edge(i);
            for j in (i + 1)..n {
                let (c, d) = edge(j);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Consecutive edges may only share their common vertex.
                    if collinear_overlap(a, b, c, d) {
                        return Err(GeomError::NotSimple(i, j));
                    }
                    if n == 3 {
                        continue;
                    }
                    let (far_i, far_j) = if j == i + 1 { (a, d) } else { (b, c) };
                    if on_segment(c, d, far_i) || on_segment(a, b, far_j) {
                        return Err(GeomError::NotSimple(i, j));
                    }
                } else if segments_touch(a, b, c, d) {
                    return Err(GeomError::NotSimple(i, j));
                }
            }
        }
        let poly = SimplePolygon { vertices };
        if poly.signed_area() == 0.0 {
            return Err(GeomError::ZeroArea);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment {
            a: self.vertices[i],
            b: self.vertices[(i + 1) % n],
        })
    }

    /// Shoelace area, positive for counterclockwise order.
    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        let mut acc = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            acc += p.x * q.y - q.x * p.y;
        }
        acc / 2.0
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > 0.0
    }

    pub fn to_ccw(&self) -> SimplePolygon {
        let mut vertices = self.vertices.clone();
        if !self.is_ccw() {
            vertices.reverse();
        }
        SimplePolygon { vertices }
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.length()).sum()
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }
}

pub(crate) fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Exact point-in-polygon classification by ray casting.
pub fn polygon_contains(poly: &SimplePolygon, p: Point) -> Containment {
    ring_contains(&poly.vertices, p)
}

pub(crate) fn ring_contains(ring: &[Point], p: Point) -> Containment {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if on_segment(a, b, p) {
            return Containment::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let o = orient(a, b, p);
            // Crossing lies to the right of p.
            if (b.y > a.y && o > 0) || (b.y < a.y && o < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullKind {
    Polygon,
    Segment,
    Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexHull {
    pub kind: HullKind,
    /// Counterclockwise for `Polygon`, endpoints for `Segment`.
    pub vertices: Vec<Point>,
}

impl ConvexHull {
    pub fn contains(&self, p: Point) -> Containment {
        match self.kind {
            HullKind::Point => {
                if p == self.vertices[0] {
                    Containment::Boundary
                } else {
                    Containment::Outside
                }
            }
            HullKind::Segment => {
                if on_segment(self.vertices[0], self.vertices[1], p) {
                    Containment::Boundary
                } else {
                    Containment::Outside
                }
            }
            HullKind::Polygon => {
                let n = self.vertices.len();
                let mut on_edge = false;
                for i in 0..n {
                    match orient(self.vertices[i], self.vertices[(i + 1) % n], p) {
                        -1 => return Containment::Outside,
                        0 => on_edge = true,
                        _ => {}
                    }
                }
                if on_edge {
                    Containment::Boundary
                } else {
                    Containment::Inside
                }
            }
        }
    }
}

/// Andrew's monotone chain. Collinear and duplicate points are dropped, so
/// polygon hulls are strictly convex and start at the lexicographically
/// smallest vertex.
pub fn convex_hull(points: &[Point]) -> Result<ConvexHull, GeomError> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite("convex_hull"));
    }
    let mut pts: Vec<Point> = points.iter().map(|p| p.canonical()).collect();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexHull {
            kind: HullKind::Point,
            vertices: pts,
        });
    }

    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    if hull.len() == 2 {
        Ok(ConvexHull {
            kind: HullKind::Segment,
            vertices: hull,
        })
    } else {
        Ok(ConvexHull {
            kind: HullKind::Polygon,
            vertices: hull,
        })
    }
}

/// One-dimensional measure of the hull boundary. A segment hull is its own
/// boundary, so it contributes its length once.
pub fn hull_boundary_h1(hull: &ConvexHull) -> f64 {
    match hull.kind {
        HullKind::Point => 0.0,
        HullKind::Segment => hull.vertices[0].distance(&hull.vertices[1]),
        HullKind::Polygon => closed_length(&hull.vertices),
    }
}

pub(crate) fn closed_length(ring: &[Point]) -> f64 {
    let n = ring.len();
    (0..n).map(|i| ring[i].distance(&ring[(i + 1) % n])).sum()
}
