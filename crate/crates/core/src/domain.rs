//! Polygonal domains: an optional outer polygon, polygonal holes, slits
//! (zero-area polylines) and isolated point obstacles.

use thiserror::Error;

use crate::boundary::{BoundaryGraph, Piece, RawSegment, UnionFind};
use crate::geom::{
    collinear_overlap, on_segment, proper_cross_pts, ring_contains, segments_touch, Containment,
    GeomError, Point, Polyline, Segment, SimplePolygon,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomainError {
    #[error("{at}: {source}")]
    Geometry {
        at: String,
        #[source]
        source: GeomError,
    },
    #[error("{0} and {1} cross")]
    Crossing(Piece, Piece),
    #[error("{0} and {1} overlap along a segment")]
    Overlap(Piece, Piece),
    #[error("{0} and {1} touch; polygons must be disjoint")]
    PolygonsTouch(Piece, Piece),
    #[error("{0} intersects itself")]
    SelfIntersection(Piece),
    #[error("holes[{0}] is not strictly inside the outer polygon")]
    HoleOutside(usize),
    #[error("holes[{0}] lies inside holes[{1}]")]
    NestedHoles(usize, usize),
    #[error("{0} leaves the closure of the domain")]
    SlitOutside(Piece),
    #[error("points[{0}] lies on another boundary piece")]
    PointOnBoundary(usize),
    #[error("points[{0}] lies outside the domain")]
    PointOutside(usize),
    #[error("points[{0}] repeats an earlier point")]
    DuplicatePoint(usize),
    #[error("domain is not connected ({0} open components)")]
    Disconnected(usize),
    #[error("inconsistent boundary: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Where a point sits relative to the domain `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Clone, Debug)]
pub struct PolygonalDomain {
    outer: Option<SimplePolygon>,
    holes: Vec<SimplePolygon>,
    slits: Vec<Polyline>,
    points: Vec<Point>,
    graph: BoundaryGraph,
}

impl PolygonalDomain {
    pub fn new(
        outer: Option<SimplePolygon>,
        holes: Vec<SimplePolygon>,
        slits: Vec<Polyline>,
        points: Vec<Point>,
    ) -> Result<Self, DomainError> {
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(DomainError::Geometry {
                    at: format!("points[{i}]"),
                    source: GeomError::NonFinite("point"),
                });
            }
        }
        let points: Vec<Point> = points.into_iter().map(Point::canonical).collect();
        let raw = raw_segments(outer.as_ref(), &holes, &slits);
        check_pieces(&raw, &slits)?;

        if let Some(o) = &outer {
            for (i, h) in holes.iter().enumerate() {
                if ring_contains(o.vertices(), h.vertices()[0]) != Containment::Inside {
                    return Err(DomainError::HoleOutside(i));
                }
            }
        }
        for (i, h) in holes.iter().enumerate() {
            for (j, g) in holes.iter().enumerate() {
                if i != j && ring_contains(g.vertices(), h.vertices()[0]) == Containment::Inside {
                    return Err(DomainError::NestedHoles(i, j));
                }
            }
        }

        let mut seeds: Vec<Point> = Vec::new();
        if let Some(o) = &outer {
            seeds.extend_from_slice(o.vertices());
        }
        for h in &holes {
            seeds.extend_from_slice(h.vertices());
        }
        for s in &slits {
            seeds.extend_from_slice(s.vertices());
        }
        let graph = BoundaryGraph::build(&seeds, &raw).map_err(DomainError::Inconsistent)?;

        let mut domain = PolygonalDomain {
            outer,
            holes,
            slits,
            points: Vec::new(),
            graph,
        };

        for (i, s) in domain.slits.iter().enumerate() {
            for seg in s.segments() {
                for &v in &[seg.a(), seg.b(), seg.point_at(0.5)] {
                    if domain.polygon_location(v) == Location::Exterior {
                        return Err(DomainError::SlitOutside(Piece::Slit(i)));
                    }
                }
            }
        }
        // Sub-edges never cross anything, so one midpoint per sub-edge decides.
        for e in &domain.graph.edges {
            let m = Point::new(
                0.5 * (domain.graph.vertices[e.a].x + domain.graph.vertices[e.b].x),
                0.5 * (domain.graph.vertices[e.a].y + domain.graph.vertices[e.b].y),
            );
            if e.free_left && e.free_right && domain.polygon_location(m) == Location::Exterior {
                return Err(DomainError::Inconsistent(format!(
                    "slit portion near {m:?} lies outside the domain"
                )));
            }
        }

        for (i, &p) in points.iter().enumerate() {
            if points[..i].contains(&p) {
                return Err(DomainError::DuplicatePoint(i));
            }
            if raw.iter().any(|s| on_segment(s.a, s.b, p)) {
                return Err(DomainError::PointOnBoundary(i));
            }
            if domain.polygon_location(p) != Location::Interior {
                return Err(DomainError::PointOutside(i));
            }
        }
        domain.points = points;

        let faces = domain.open_face_count();
        if faces != 1 {
            return Err(DomainError::Disconnected(faces));
        }
        Ok(domain)
    }

    /// Convenience constructor from raw coordinate lists.
    pub fn from_coords(
        outer: Option<Vec<(f64, f64)>>,
        holes: Vec<Vec<(f64, f64)>>,
        slits: Vec<Vec<(f64, f64)>>,
        points: Vec<(f64, f64)>,
    ) -> Result<Self, DomainError> {
        let pts = |v: Vec<(f64, f64)>| v.into_iter().map(Point::from).collect::<Vec<_>>();
        let outer = match outer {
            Some(v) => Some(SimplePolygon::new(pts(v)).map_err(|e| DomainError::Geometry {
                at: "outer".into(),
                source: e,
            })?),
            None => None,
        };
        let holes = holes
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                SimplePolygon::new(pts(v)).map_err(|e| DomainError::Geometry {
                    at: format!("holes[{i}]"),
                    source: e,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let slits = slits
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                Polyline::new(pts(v)).map_err(|e| DomainError::Geometry {
                    at: format!("slits[{i}]"),
                    source: e,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolygonalDomain::new(outer, holes, slits, pts(points))
    }

    pub fn outer(&self) -> Option<&SimplePolygon> {
        self.outer.as_ref()
    }

    pub fn holes(&self) -> &[SimplePolygon] {
        &self.holes
    }

    pub fn slits(&self) -> &[Polyline] {
        &self.slits
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_bounded(&self) -> bool {
        self.outer.is_some()
    }

    pub(crate) fn graph(&self) -> &BoundaryGraph {
        &self.graph
    }

    /// Boundary graph with additional vertices cut into the boundary at
    /// `extra` (each must lie on a boundary segment).
    pub(crate) fn graph_with(&self, extra: &[Point]) -> BoundaryGraph {
        let mut seeds = self.graph.vertices.clone();
        seeds.extend(extra.iter().map(|p| p.canonical()));
        let raw = raw_segments(self.outer.as_ref(), &self.holes, &self.slits);
        BoundaryGraph::build(&seeds, &raw).expect("validated boundary stays consistent")
    }

    /// Boundary segments as given (outer edges, hole edges, slit segments).
    pub fn boundary_segments(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = Vec::new();
        if let Some(o) = &self.outer {
            out.extend(o.edges());
        }
        for h in &self.holes {
            out.extend(h.edges());
        }
        for s in &self.slits {
            out.extend(s.segments());
        }
        out
    }

    /// Total length of every boundary piece, summed directly.
    pub fn h1_boundary(&self) -> f64 {
        self.boundary_segments().iter().map(Segment::length).sum()
    }

    /// Same domain with slit `index` removed.
    pub fn without_slit(&self, index: usize) -> Result<Self, DomainError> {
        let mut slits = self.slits.clone();
        if index >= slits.len() {
            return Err(DomainError::InvalidInput(format!("no slit {index}")));
        }
        slits.remove(index);
        PolygonalDomain::new(
            self.outer.clone(),
            self.holes.clone(),
            slits,
            self.points.clone(),
        )
    }

    /// Bounding box of all boundary geometry, or `None` for the whole plane.
    pub fn bbox(&self) -> Option<(Point, Point)> {
        let mut pts: Vec<Point> = self.graph.vertices.clone();
        pts.extend_from_slice(&self.points);
        if pts.is_empty() {
            None
        } else {
            Some(crate::geom::bbox(&pts))
        }
    }

    fn polygon_location(&self, p: Point) -> Location {
        if let Some(o) = &self.outer {
            match ring_contains(o.vertices(), p) {
                Containment::Outside => return Location::Exterior,
                Containment::Boundary => return Location::Boundary,
                Containment::Inside => {}
            }
        }
        for h in &self.holes {
            match ring_contains(h.vertices(), p) {
                Containment::Inside => return Location::Exterior,
                Containment::Boundary => return Location::Boundary,
                Containment::Outside => {}
            }
        }
        Location::Interior
    }

    /// Exact classification of `p` against `Ω`, its boundary and the rest.
    pub fn locate(&self, p: Point) -> Location {
        if !p.is_finite() {
            return Location::Exterior;
        }
        let p = p.canonical();
        match self.polygon_location(p) {
            Location::Interior => {
                let on_slit = self
                    .slits
                    .iter()
                    .any(|s| s.segments().any(|g| on_segment(g.a(), g.b(), p)));
                if on_slit || self.points.contains(&p) {
                    Location::Boundary
                } else {
                    Location::Interior
                }
            }
            other => other,
        }
    }

    /// Number of connected open regions, from Euler's formula on the
    /// boundary graph, minus hole interiors and the outer exterior.
    fn open_face_count(&self) -> usize {
        let g = &self.graph;
        let v = g.vertices.len() as i64;
        let e = g.edges.len() as i64;
        let (_, c) = g.component_labels();
        let faces = e - v + c as i64 + 1;
        let blocked = self.holes.len() as i64 + i64::from(self.outer.is_some());
        (faces - blocked).max(0) as usize
    }
}

pub(crate) fn raw_segments(
    outer: Option<&SimplePolygon>,
    holes: &[SimplePolygon],
    slits: &[Polyline],
) -> Vec<RawSegment> {
    let mut raw = Vec::new();
    if let Some(o) = outer {
        for e in o.to_ccw().edges() {
            raw.push(RawSegment {
                a: e.a(),
                b: e.b(),
                free_left: true,
                free_right: false,
                piece: Piece::Outer,
            });
        }
    }
    for (i, h) in holes.iter().enumerate() {
        for e in h.to_ccw().edges() {
            raw.push(RawSegment {
                a: e.a(),
                b: e.b(),
                free_left: false,
                free_right: true,
                piece: Piece::Hole(i),
            });
        }
    }
    for (i, s) in slits.iter().enumerate() {
        for e in s.segments() {
            raw.push(RawSegment {
                a: e.a(),
                b: e.b(),
                free_left: true,
                free_right: true,
                piece: Piece::Slit(i),
            });
        }
    }
    raw
}

fn check_pieces(raw: &[RawSegment], slits: &[Polyline]) -> Result<(), DomainError> {
    for (i, s) in slits.iter().enumerate() {
        let segs: Vec<Segment> = s.segments().collect();
        for a in 0..segs.len() {
            for b in (a + 1)..segs.len() {
                let (p, q, r, t) = (segs[a].a(), segs[a].b(), segs[b].a(), segs[b].b());
                let bad = if b == a + 1 {
                    collinear_overlap(p, q, r, t) || on_segment(r, t, p) || on_segment(p, q, t)
                } else {
                    segments_touch(p, q, r, t)
                };
                if bad {
                    return Err(DomainError::SelfIntersection(Piece::Slit(i)));
                }
            }
        }
    }
    for i in 0..raw.len() {
        for j in (i + 1)..raw.len() {
            let (s, t) = (&raw[i], &raw[j]);
            if s.piece == t.piece {
                continue;
            }
            if proper_cross_pts(s.a, s.b, t.a, t.b) {
                return Err(DomainError::Crossing(s.piece, t.piece));
            }
            if collinear_overlap(s.a, s.b, t.a, t.b) {
                return Err(DomainError::Overlap(s.piece, t.piece));
            }
            let polygons = !matches!(s.piece, Piece::Slit(_)) && !matches!(t.piece, Piece::Slit(_));
            if polygons && segments_touch(s.a, s.b, t.a, t.b) {
                return Err(DomainError::PolygonsTouch(s.piece, t.piece));
            }
        }
    }
    Ok(())
}

/// A connected component of the boundary: either a positive-length union
/// of segments or a single isolated point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComponent {
    pub segments: Vec<Segment>,
    pub point: Option<Point>,
    pub h1: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryDecomposition {
    pub components: Vec<BoundaryComponent>,
    /// Length of the union of positive-length components.
    pub h1_e: f64,
    pub h1_total: f64,
}

impl BoundaryDecomposition {
    pub fn positive_length(&self) -> impl Iterator<Item = &BoundaryComponent> {
        self.components.iter().filter(|c| c.point.is_none())
    }

    pub fn point_components(&self) -> impl Iterator<Item = &BoundaryComponent> {
        self.components.iter().filter(|c| c.point.is_some())
    }
}

/// Splits the boundary into connected components. Pieces that touch (a
/// slit standing on the outer polygon, say) belong to the same component.
pub fn decompose_boundary(domain: &PolygonalDomain) -> BoundaryDecomposition {
    let g = domain.graph();
    let (labels, count) = g.component_labels();
    let mut components: Vec<BoundaryComponent> = (0..count)
        .map(|_| BoundaryComponent {
            segments: Vec::new(),
            point: None,
            h1: 0.0,
        })
        .collect();
    for s in domain.boundary_segments() {
        let v = g.vertex_at(s.a()).expect("boundary vertex is interned");
        let c = &mut components[labels[v]];
        c.h1 += s.length();
        c.segments.push(s);
    }
    for &p in domain.points() {
        components.push(BoundaryComponent {
            segments: Vec::new(),
            point: Some(p),
            h1: 0.0,
        });
    }
    let h1_e: f64 = components
        .iter()
        .filter(|c| c.point.is_none())
        .map(|c| c.h1)
        .sum();
    BoundaryDecomposition {
        components,
        h1_e,
        h1_total: h1_e,
    }
}

/// The sharpness comb: the unit square minus slits `{1/(2i)} x [0, 1 - 1/i]`
/// from the bottom and `{1/(2i+1)} x [1/i, 1]` from the top.
#[derive(Clone, Debug)]
pub struct CombDomain {
    pub n: usize,
    pub domain: PolygonalDomain,
    /// Indices whose slits have zero length and were skipped.
    pub degenerate: Vec<usize>,
}

pub fn comb_domain(n: usize) -> Result<CombDomain, DomainError> {
    if n < 2 {
        return Err(DomainError::InvalidInput(format!(
            "comb needs n >= 2, got {n}"
        )));
    }
    let mut slits = Vec::new();
    let mut degenerate = Vec::new();
    for i in 1..=n {
        let fi = i as f64;
        let bottom = (
            Point::new(1.0 / (2.0 * fi), 0.0),
            Point::new(1.0 / (2.0 * fi), 1.0 - 1.0 / fi),
        );
        let top = (
            Point::new(1.0 / (2.0 * fi + 1.0), 1.0 / fi),
            Point::new(1.0 / (2.0 * fi + 1.0), 1.0),
        );
        let mut skipped = false;
        for (a, b) in [bottom, top] {
            if a == b {
                skipped = true;
            } else {
                slits.push(Polyline::new(vec![a, b]).expect("distinct finite endpoints"));
            }
        }
        if skipped {
            degenerate.push(i);
        }
    }
    let outer = SimplePolygon::new(vec![
        Point::new(0., 0.),
        Point::new(1., 0.),
        Point::new(1., 1.),
        Point::new(0., 1.),
    ])
    .expect("unit square");
    let domain = PolygonalDomain::new(Some(outer), Vec::new(), slits, Vec::new())?;
    Ok(CombDomain {
        n,
        domain,
        degenerate,
    })
}

/// Exact boundary length of the comb, `4 + 2 * sum_{i=2..n} (1 - 1/i)`.
pub fn comb_boundary_length(n: usize) -> f64 {
    4.0 + 2.0 * (2..=n).map(|i| 1.0 - 1.0 / i as f64).sum::<f64>()
}

/// Diameter and total length of a connected union of segments.
pub fn connected_diam_vs_length(segments: &[Segment]) -> Result<(f64, f64), DomainError> {
    if segments.is_empty() {
        return Err(DomainError::InvalidInput("no segments".into()));
    }
    let (vertices, _, count) = segment_graph(segments);
    if count != 1 {
        return Err(DomainError::InvalidInput(format!(
            "segments form {count} connected pieces"
        )));
    }
    let mut diam: f64 = 0.0;
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            diam = diam.max(vertices[i].distance(&vertices[j]));
        }
    }
    let h1 = segments.iter().map(Segment::length).sum();
    Ok((diam, h1))
}

/// Distinct endpoints, connected-component label per endpoint, and the
/// component count, with segments joined where they touch or cross.
pub(crate) fn segment_graph(segments: &[Segment]) -> (Vec<Point>, Vec<usize>, usize) {
    let mut vertices: Vec<Point> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut ends = Vec::with_capacity(segments.len());
    for s in segments {
        let mut id = |p: Point| {
            *index.entry((p.x.to_bits(), p.y.to_bits())).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        ends.push((id(s.a()), id(s.b())));
    }
    let mut uf = UnionFind::new(vertices.len());
    for (k, &(a, b)) in ends.iter().enumerate() {
        uf.union(a, b);
        // Endpoints resting on another segment's interior join it too.
        for (m, s) in segments.iter().enumerate() {
            if m != k {
                for &v in &[a, b] {
                    if on_segment(s.a(), s.b(), vertices[v]) {
                        uf.union(v, ends[m].0);
                    }
                }
                if m > k && proper_cross_pts(segments[k].a(), segments[k].b(), s.a(), s.b()) {
                    uf.union(a, ends[m].0);
                }
            }
        }
    }
    let (labels, count) = uf.labels();
    (vertices, labels, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Option<Vec<(f64, f64)>> {
        Some(vec![(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(a.into(), b.into()).unwrap()
    }

    #[test]
    fn unit_square_one_component() {
        let d = PolygonalDomain::from_coords(square(), vec![], vec![], vec![]).unwrap();
        let dec = decompose_boundary(&d);
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.h1_e, 4.0);
    }

    #[test]
    fn square_slit_and_points() {
        let d = PolygonalDomain::from_coords(
            square(),
            vec![],
            vec![vec![(0.5, 0.), (0.5, 0.75)]],
            vec![(0.2, 0.2), (0.8, 0.8), (0.2, 0.9)],
        )
        .unwrap();
        let dec = decompose_boundary(&d);
        // The slit stands on the bottom edge, so it joins the square's component.
        assert_eq!(dec.positive_length().count(), 1);
        assert_eq!(dec.point_components().count(), 3);
        assert!((dec.h1_e - 4.75).abs() < 1e-12);
        assert_eq!(dec.h1_total, dec.h1_e);
    }

    #[test]
    fn free_slits_are_separate_components() {
        let d = PolygonalDomain::from_coords(
            square(),
            vec![],
            vec![vec![(0.2, 0.2), (0.2, 0.6)], vec![(0.6, 0.2), (0.8, 0.4), (0.6, 0.6)]],
            vec![],
        )
        .unwrap();
        let dec = decompose_boundary(&d);
        assert_eq!(dec.positive_length().count(), 3);
        let expected = 4.0 + 0.4 + 2.0 * 0.08f64.sqrt();
        assert!((dec.h1_e - expected).abs() < 1e-12);
    }

    #[test]
    fn comb_examples() {
        let c = comb_domain(2).unwrap();
        assert_eq!(c.degenerate, vec![1]);
        let slits: Vec<Vec<Point>> = c
            .domain
            .slits()
            .iter()
            .map(|s| s.vertices().to_vec())
            .collect();
        assert_eq!(
            slits,
            vec![
                vec![Point::new(0.25, 0.), Point::new(0.25, 0.5)],
                vec![Point::new(0.2, 0.5), Point::new(0.2, 1.)],
            ]
        );
        assert!((decompose_boundary(&c.domain).h1_e - 5.0).abs() < 1e-12);

        let c4 = comb_domain(4).unwrap();
        assert_eq!(c4.domain.slits().len(), 6);
        let slit_len: f64 = c4.domain.slits().iter().map(|s| s.length()).sum();
        assert!((slit_len - 23.0 / 6.0).abs() < 1e-12);
        let dec = decompose_boundary(&c4.domain);
        assert!((dec.h1_e - 47.0 / 6.0).abs() < 1e-12);
        assert_eq!(dec.components.len(), 1);

        assert!(comb_domain(1).is_err());
        assert!(comb_domain(0).is_err());
    }

    #[test]
    fn comb_length_matches_closed_form() {
        for n in 2..=30 {
            let c = comb_domain(n).unwrap();
            let h1 = decompose_boundary(&c.domain).h1_e;
            assert!((h1 - comb_boundary_length(n)).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn diam_vs_length_examples() {
        let (d, h) = connected_diam_vs_length(&[seg((0., 0.), (1., 0.))]).unwrap();
        assert_eq!((d, h), (1.0, 1.0));
        let (d, h) =
            connected_diam_vs_length(&[seg((0., 0.), (1., 0.)), seg((1., 0.), (1., 1.))]).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15 && h == 2.0);
        let (d, h) = connected_diam_vs_length(&[
            seg((0., 1.), (0., 0.)),
            seg((0., 0.), (1., 0.)),
            seg((1., 0.), (1., 1.)),
        ])
        .unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15 && h == 3.0);
        assert!(connected_diam_vs_length(&[seg((0., 0.), (1., 0.)), seg((2., 0.), (3., 0.))])
            .is_err());
    }

    #[test]
    fn rejects_bad_domains() {
        // Crossing slits.
        let e = PolygonalDomain::from_coords(
            square(),
            vec![],
            vec![vec![(0.2, 0.5), (0.8, 0.5)], vec![(0.5, 0.2), (0.5, 0.8)]],
            vec![],
        );
        assert!(matches!(e, Err(DomainError::Crossing(..))));
        // Slit cutting the square in two.
        let e = PolygonalDomain::from_coords(square(), vec![], vec![vec![(0.5, 0.), (0.5, 1.)]], vec![]);
        assert_eq!(e.unwrap_err(), DomainError::Disconnected(2));
        // Closed slit loop enclosing a pocket.
        let e = PolygonalDomain::from_coords(
            None,
            vec![],
            vec![
                vec![(0., 0.), (1., 0.), (1., 1.)],
                vec![(1., 1.), (0., 1.), (0., 0.)],
            ],
            vec![],
        );
        assert_eq!(e.unwrap_err(), DomainError::Disconnected(2));
        // Hole touching the outer polygon.
        let e = PolygonalDomain::from_coords(
            square(),
            vec![vec![(0., 0.2), (0.3, 0.2), (0.3, 0.4)]],
            vec![],
            vec![],
        );
        assert!(matches!(e, Err(DomainError::PolygonsTouch(..))));
        // Hole outside.
        let e = PolygonalDomain::from_coords(
            square(),
            vec![vec![(2., 2.), (3., 2.), (3., 3.)]],
            vec![],
            vec![],
        );
        assert_eq!(e.unwrap_err(), DomainError::HoleOutside(0));
        // Slit poking out of the square.
        let e = PolygonalDomain::from_coords(square(), vec![], vec![vec![(0.5, 0.5), (1.5, 0.5)]], vec![]);
        assert!(e.is_err());
        // Point on a slit.
        let e = PolygonalDomain::from_coords(
            square(),
            vec![],
            vec![vec![(0.2, 0.2), (0.2, 0.6)]],
            vec![(0.2, 0.4)],
        );
        assert_eq!(e.unwrap_err(), DomainError::PointOnBoundary(0));
        // Slit inside a hole.
        let e = PolygonalDomain::from_coords(
            None,
            vec![vec![(0., 0.), (4., 0.), (4., 4.), (0., 4.)]],
            vec![vec![(1., 1.), (2., 2.)]],
            vec![],
        );
        assert!(matches!(e, Err(DomainError::SlitOutside(_))));
        // Non-finite coordinate.
        assert!(PolygonalDomain::from_coords(None, vec![], vec![], vec![(f64::NAN, 0.)]).is_err());
    }

    #[test]
    fn locate_points() {
        let d = PolygonalDomain::from_coords(
            square(),
            vec![vec![(0.6, 0.6), (0.8, 0.6), (0.8, 0.8), (0.6, 0.8)]],
            vec![vec![(0.5, 0.), (0.5, 0.5)]],
            vec![(0.1, 0.9)],
        )
        .unwrap();
        assert_eq!(d.locate(Point::new(0.2, 0.2)), Location::Interior);
        assert_eq!(d.locate(Point::new(0.5, 0.3)), Location::Boundary);
        assert_eq!(d.locate(Point::new(0.7, 0.7)), Location::Exterior);
        assert_eq!(d.locate(Point::new(0.6, 0.7)), Location::Boundary);
        assert_eq!(d.locate(Point::new(0.1, 0.9)), Location::Boundary);
        assert_eq!(d.locate(Point::new(1.5, 0.5)), Location::Exterior);
    }
}
