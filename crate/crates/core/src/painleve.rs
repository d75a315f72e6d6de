//! Covers of connected segment sets by convex polygons whose perimeters sum
//! to at most twice the length of the set plus a tolerance.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use thiserror::Error;

use crate::domain::segment_graph;
use crate::geom::{
    convex_hull, hull_boundary_h1, Containment, ConvexHull, GeomError, HullKind, Point, Segment,
};

/// Vertices per full turn when discretizing offset arcs and disks.
const ARC_RESOLUTION: usize = 256;
/// Samples per segment, besides its endpoints, in the containment check.
const SEGMENT_SAMPLES: usize = 16;
/// Times the inflation radius is halved before giving up.
const RETRIES: usize = 8;

#[derive(Debug, Error)]
pub enum PainleveError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("segments form {0} connected pieces, expected 1")]
    Disconnected(usize),
    #[error(
        "no certificate within tolerance: sum {} against bound {}",
        .0.sum_boundary,
        .0.bound
    )]
    InfeasibleTolerance(Box<CoverCertificate>),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A finite union of segments that is connected as a point set.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectedSet {
    segments: Vec<Segment>,
    h1: f64,
}

impl ConnectedSet {
    pub fn new(segments: Vec<Segment>) -> Result<Self, PainleveError> {
        if segments.is_empty() {
            return Err(PainleveError::InvalidInput("no segments".into()));
        }
        let (_, _, count) = segment_graph(&segments);
        if count != 1 {
            return Err(PainleveError::Disconnected(count));
        }
        let h1 = segments.iter().map(Segment::length).sum::<f64>();
        if !h1.is_finite() {
            return Err(PainleveError::InvalidInput("length is not finite".into()));
        }
        Ok(ConnectedSet { segments, h1 })
    }

    /// Connected set of the polyline through `points`.
    pub fn polyline(points: &[Point]) -> Result<Self, PainleveError> {
        let segments = points
            .windows(2)
            .map(|w| Segment::new(w[0], w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        ConnectedSet::new(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.segments.iter().flat_map(|s| [s.a(), s.b()]).collect();
        v.sort_by(Point::lex_cmp);
        v.dedup();
        v
    }

    pub fn diameter(&self) -> f64 {
        let v = self.vertices();
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                d = d.max(v[i].distance(&v[j]));
            }
        }
        d
    }

    /// Euclidean distance from `p` to the set.
    pub fn distance_to(&self, p: Point) -> f64 {
        self.segments
            .iter()
            .map(|s| point_segment_distance(p, s.a(), s.b()))
            .fold(f64::INFINITY, f64::min)
    }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = b.sub(&a);
    let t = (p.sub(&a).x * e.x + p.sub(&a).y * e.y) / (e.x * e.x + e.y * e.y);
    let t = t.clamp(0.0, 1.0);
    p.distance(&a.add(&e.scale(t)))
}

/// Parameter interval of `a + t (b - a)`, `t` in `[0, 1]`, inside the closed
/// disk; `None` when the intersection has no length.
fn clip_to_disk(a: Point, b: Point, c: Point, r: f64) -> Option<(f64, f64)> {
    let e = b.sub(&a);
    let f = a.sub(&c);
    let qa = e.x * e.x + e.y * e.y;
    let qb = e.x * f.x + e.y * f.y;
    let qc = f.x * f.x + f.y * f.y - r * r;
    let disc = qb * qb - qa * qc;
    if disc <= 0.0 {
        return None;
    }
    let root = disc.sqrt();
    let t0 = ((-qb - root) / qa).max(0.0);
    let t1 = ((-qb + root) / qa).min(1.0);
    (t0 < t1).then_some((t0, t1))
}

fn at(a: Point, b: Point, t: f64) -> Point {
    if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        a.add(&b.sub(&a).scale(t))
    }
}

/// Splits `k` into connected pieces, each inside the closed disk of radius
/// `r` about its seed, the lexicographically smallest vertex left over. A
/// piece is the part of the disk reachable from the seed; segments are cut
/// where they leave the disk.
pub fn split_connected_set(k: &ConnectedSet, r: f64) -> Result<Vec<ConnectedSet>, PainleveError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(PainleveError::InvalidInput(format!("radius must be positive, got {r}")));
    }
    let mut pieces = Vec::new();
    let mut work = vec![k.segments.clone()];
    while let Some(set) = work.pop() {
        let seed = set
            .iter()
            .flat_map(|s| [s.a(), s.b()])
            .min_by(Point::lex_cmp)
            .expect("nonempty set");
        // Disk part of every segment, then the component holding the seed.
        let clips: Vec<Option<(f64, f64)>> = set
            .iter()
            .map(|s| clip_to_disk(s.a(), s.b(), seed, r))
            .collect();
        let mut inside = Vec::new();
        let mut owner = Vec::new();
        for (i, (s, c)) in set.iter().zip(&clips).enumerate() {
            if let Some((t0, t1)) = *c {
                if let Ok(part) = Segment::new(at(s.a(), s.b(), t0), at(s.a(), s.b(), t1)) {
                    inside.push(part);
                    owner.push(i);
                }
            }
        }
        let (vertices, labels, _) = segment_graph(&inside);
        let seed_label = labels[vertices
            .iter()
            .position(|&v| v == seed)
            .expect("seed is an endpoint of a clipped segment")];
        let label_of = |p: Point| labels[vertices.iter().position(|&v| v == p).expect("vertex")];

        let mut piece = Vec::new();
        let mut taken = vec![None; set.len()];
        for (part, &i) in inside.iter().zip(&owner) {
            if label_of(part.a()) == seed_label {
                piece.push(*part);
                taken[i] = clips[i];
            }
        }
        let mut rest = Vec::new();
        for (s, t) in set.iter().zip(&taken) {
            match *t {
                None => rest.push(*s),
                Some((t0, t1)) => {
                    for (u, v) in [(0.0, t0), (t1, 1.0)] {
                        if let Ok(frag) = Segment::new(at(s.a(), s.b(), u), at(s.a(), s.b(), v)) {
                            rest.push(frag);
                        }
                    }
                }
            }
        }
        pieces.push(ConnectedSet::new(piece)?);
        if !rest.is_empty() {
            let (verts, labels, count) = segment_graph(&rest);
            let mut groups = vec![Vec::new(); count];
            for s in rest {
                let l = labels[verts.iter().position(|&v| v == s.a()).expect("vertex")];
                groups[l].push(s);
            }
            // Reverse so pieces come out in label order.
            work.extend(groups.into_iter().rev());
        }
    }
    Ok(pieces)
}

/// Certificate for a cover of `K` by convex polygons inside the
/// `clearance`-neighbourhood of `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverCertificate {
    pub pieces: Vec<ConvexHull>,
    pub sum_boundary: f64,
    pub h1: f64,
    pub epsilon: f64,
    pub clearance: f64,
    /// `2 h1 + epsilon`.
    pub bound: f64,
    /// Inflation radius used for the final attempt.
    pub delta: f64,
    pub contains_k: bool,
    pub inside_u: bool,
}

impl CoverCertificate {
    pub fn satisfied(&self) -> bool {
        self.contains_k && self.inside_u && self.sum_boundary <= self.bound
    }
}

/// Convex polygon approximating the `delta`-neighbourhood of a hull from
/// inside: corners become inscribed arcs.
pub fn inflate_hull(hull: &ConvexHull, delta: f64) -> Result<ConvexHull, GeomError> {
    let v = &hull.vertices;
    let mut pts = Vec::new();
    let mut arc = |c: Point, from: f64, span: f64| {
        let steps = ((ARC_RESOLUTION as f64) * span / TAU).ceil().max(1.0) as usize;
        for j in 0..=steps {
            let th = from + span * j as f64 / steps as f64;
            pts.push(Point::new(c.x + delta * th.cos(), c.y + delta * th.sin()));
        }
    };
    if v.len() == 1 {
        for j in 0..ARC_RESOLUTION {
            let th = TAU * j as f64 / ARC_RESOLUTION as f64;
            pts.push(Point::new(v[0].x + delta * th.cos(), v[0].y + delta * th.sin()));
        }
    } else {
        let m = v.len();
        let normal_angle = |a: Point, b: Point| {
            let d = b.sub(&a);
            (-d.x).atan2(d.y)
        };
        for i in 0..m {
            let (prev, cur, next) = (v[(i + m - 1) % m], v[i], v[(i + 1) % m]);
            let from = normal_angle(prev, cur);
            let span = if m == 2 {
                PI
            } else {
                (normal_angle(cur, next) - from).rem_euclid(TAU)
            };
            arc(cur, from, span);
        }
    }
    convex_hull(&pts)
}

pub fn painleve_cover(
    k: &ConnectedSet,
    clearance: f64,
    epsilon: f64,
) -> Result<CoverCertificate, PainleveError> {
    if !(clearance > 0.0 && clearance.is_finite()) {
        return Err(PainleveError::InvalidInput(format!(
            "clearance must be positive, got {clearance}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(PainleveError::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let r = clearance / 2.0;
    let parts = split_connected_set(k, r)?;
    let hulls = parts
        .iter()
        .map(|p| convex_hull(&p.vertices()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut delta = (epsilon / (4.0 * PI * parts.len() as f64)).min((clearance - r) / 2.0);
    let mut last = None;
    for _ in 0..RETRIES {
        let pieces = hulls
            .par_iter()
            .map(|h| inflate_hull(h, delta))
            .collect::<Result<Vec<_>, _>>()?;
        let cert = certify(k, pieces, clearance, epsilon, delta);
        if cert.satisfied() {
            return Ok(cert);
        }
        last = Some(cert);
        delta /= 2.0;
    }
    Err(PainleveError::InfeasibleTolerance(Box::new(
        last.expect("at least one attempt"),
    )))
}

fn certify(
    k: &ConnectedSet,
    pieces: Vec<ConvexHull>,
    clearance: f64,
    epsilon: f64,
    delta: f64,
) -> CoverCertificate {
    let sum_boundary = pieces.iter().map(hull_boundary_h1).sum::<f64>();
    let covered = |p: Point| pieces.iter().any(|h| h.contains(p) != Containment::Outside);
    let contains_k = k.segments.iter().all(|s| {
        (0..=SEGMENT_SAMPLES + 1).all(|j| covered(s.point_at(j as f64 / (SEGMENT_SAMPLES + 1) as f64)))
    });
    let inside_u = pieces
        .iter()
        .flat_map(|h| h.vertices.iter())
        .all(|&v| k.distance_to(v) < clearance);
    CoverCertificate {
        pieces,
        sum_boundary,
        h1: k.h1,
        epsilon,
        clearance,
        bound: 2.0 * k.h1 + epsilon,
        delta,
        contains_k,
        inside_u,
    }
}

/// Perimeter of the convex hull of `K` and its ratio to the length of `K`.
pub fn hull_double_length_check(k: &ConnectedSet) -> Result<(f64, f64), PainleveError> {
    let hull = convex_hull(&k.vertices())?;
    let hull_h1 = hull_boundary_h1(&hull);
    Ok((hull_h1, hull_h1 / k.h1))
}

/// One compact component: a connected segment set or an isolated point.
#[derive(Clone, Debug, PartialEq)]
pub enum CompactPiece {
    Set(ConnectedSet),
    Point(Point),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiBoundReport {
    /// Union of the per-component certificates.
    pub certificate: CoverCertificate,
    /// `pi * total length + epsilon`.
    pub pi_bound: f64,
    pub satisfied: bool,
}

/// Covers every component with its own budget `epsilon / count`; points get
/// polygonal disks. The total perimeter is checked against both
/// `2 H1 + epsilon` and `pi H1 + epsilon`.
pub fn pi_bound_check(
    components: &[CompactPiece],
    clearance: f64,
    epsilon: f64,
) -> Result<PiBoundReport, PainleveError> {
    if components.is_empty() {
        return Err(PainleveError::InvalidInput("no components".into()));
    }
    if !(epsilon > 0.0) || !(clearance > 0.0) {
        return Err(PainleveError::InvalidInput(
            "epsilon and clearance must be positive".into(),
        ));
    }
    let count = components.len() as f64;
    let share = epsilon / count;
    let mut pieces = Vec::new();
    let mut h1 = 0.0;
    let mut contains_k = true;
    let mut inside_u = true;
    let mut delta: f64 = 0.0;
    for c in components {
        match c {
            CompactPiece::Set(set) => {
                let cert = painleve_cover(set, clearance, share)?;
                h1 += set.h1;
                contains_k &= cert.contains_k;
                inside_u &= cert.inside_u;
                delta = delta.max(cert.delta);
                pieces.extend(cert.pieces);
            }
            CompactPiece::Point(p) => {
                let rho = (share / TAU).min(clearance / 2.0);
                let disk = inflate_hull(
                    &ConvexHull {
                        kind: HullKind::Point,
                        vertices: vec![*p],
                    },
                    rho,
                )?;
                contains_k &= disk.contains(*p) == Containment::Inside;
                inside_u &= disk.vertices.iter().all(|v| v.distance(p) < clearance);
                pieces.push(disk);
            }
        }
    }
    let sum_boundary = pieces.iter().map(hull_boundary_h1).sum::<f64>();
    let certificate = CoverCertificate {
        pieces,
        sum_boundary,
        h1,
        epsilon,
        clearance,
        bound: 2.0 * h1 + epsilon,
        delta,
        contains_k,
        inside_u,
    };
    let pi_bound = PI * h1 + epsilon;
    let satisfied = certificate.satisfied() && sum_boundary <= pi_bound;
    Ok(PiBoundReport {
        certificate,
        pi_bound,
        satisfied,
    })
}
