use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::{GeodesicError, GeodesicPath};
use crate::boundary::{BoundaryGraph, Heading};
use crate::domain::{Location, PolygonalDomain};
use crate::geom::{axis_key, proper_cross_pts, strictly_inside_segment, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NodeKind {
    /// Interior query point or point obstacle: no boundary directions.
    Free,
    /// Vertex of the boundary graph.
    Boundary(usize),
}

/// An undirected visibility edge. `ports` lists the admissible
/// `(sector at u, sector at v)` pairs through which the segment leaves
/// `u` and reaches `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub ports: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct VisibilityGraph {
    /// Query points first, then boundary vertices (outer, holes, slits,
    /// cut points), then point obstacles.
    pub nodes: Vec<Point>,
    pub edges: Vec<VisibilityEdge>,
    /// Node index of each requested extra point.
    pub extra_nodes: Vec<usize>,
    kinds: Vec<NodeKind>,
    graph: BoundaryGraph,
}

impl VisibilityGraph {
    fn port_count(&self, node: usize) -> usize {
        match self.kinds[node] {
            NodeKind::Free => 1,
            NodeKind::Boundary(g) => self.graph.stars[g].sector_count(),
        }
    }

    fn port_free(&self, node: usize, port: usize) -> bool {
        match self.kinds[node] {
            NodeKind::Free => true,
            NodeKind::Boundary(g) => self.graph.stars[g].is_free(port),
        }
    }

    fn free_ports(&self, node: usize) -> Vec<usize> {
        (0..self.port_count(node))
            .filter(|&p| self.port_free(node, p))
            .collect()
    }

    /// Shortest path between two nodes, ties broken by smallest expanded
    /// node index.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<(f64, Vec<usize>)> {
        if from == to {
            return Some((0.0, vec![from]));
        }
        let mut offset = Vec::with_capacity(self.nodes.len() + 1);
        offset.push(0);
        for n in 0..self.nodes.len() {
            offset.push(offset[n] + self.port_count(n));
        }
        let total = offset[self.nodes.len()];
        let mut owner = vec![0usize; total];
        for n in 0..self.nodes.len() {
            owner[offset[n]..offset[n + 1]].fill(n);
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); total];
        for e in &self.edges {
            for &(pu, pv) in &e.ports {
                adj[offset[e.u] + pu].push((offset[e.v] + pv, e.weight));
                adj[offset[e.v] + pv].push((offset[e.u] + pu, e.weight));
            }
        }

        let mut dist = vec![f64::INFINITY; total];
        let mut prev = vec![usize::MAX; total];
        let mut heap = BinaryHeap::new();
        for p in self.free_ports(from) {
            dist[offset[from] + p] = 0.0;
            heap.push(Entry(0.0, offset[from] + p));
        }
        let mut found = None;
        while let Some(Entry(d, x)) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            if owner[x] == to {
                found = Some(x);
                break;
            }
            for &(y, w) in &adj[x] {
                let nd = d + w;
                if nd < dist[y] {
                    dist[y] = nd;
                    prev[y] = x;
                    heap.push(Entry(nd, y));
                }
            }
        }
        let end = found?;
        let mut chain = vec![owner[end]];
        let mut cur = end;
        while prev[cur] != usize::MAX {
            cur = prev[cur];
            chain.push(owner[cur]);
        }
        chain.reverse();
        Some((dist[end], chain))
    }

    /// Admissible sector pairs for the straight segment from `u` to `v`,
    /// or `None` when it crosses the boundary.
    fn link(&self, domain: &PolygonalDomain, u: usize, v: usize) -> Option<Vec<(usize, usize)>> {
        let g = &self.graph;
        let (pu, pv) = (self.nodes[u], self.nodes[v]);
        if g.edges
            .iter()
            .any(|e| proper_cross_pts(pu, pv, g.vertices[e.a], g.vertices[e.b]))
        {
            return None;
        }
        let mut stops: Vec<(Point, Option<usize>)> = vec![(pu, self.boundary_vertex(u))];
        let mut events: Vec<usize> = (0..g.vertices.len())
            .filter(|&w| g.has_edges(w) && strictly_inside_segment(pu, pv, g.vertices[w]))
            .collect();
        events.sort_by(|&a, &b| {
            axis_key(pu, pv, g.vertices[a]).total_cmp(&axis_key(pu, pv, g.vertices[b]))
        });
        stops.extend(events.into_iter().map(|w| (g.vertices[w], Some(w))));
        stops.push((pv, self.boundary_vertex(v)));

        // (sector at u, sector at the current stop)
        let mut states: Vec<(usize, usize)> = Vec::new();
        for (j, pair) in stops.windows(2).enumerate() {
            let modes = leg_modes(g, domain, pair[0], pair[1]);
            if j == 0 {
                states = modes;
            } else {
                let mut next = Vec::new();
                for &(start, cur) in &states {
                    for &(s, e) in &modes {
                        if s == cur && !next.contains(&(start, e)) {
                            next.push((start, e));
                        }
                    }
                }
                states = next;
            }
            if states.is_empty() {
                return None;
            }
        }
        Some(states)
    }

    fn boundary_vertex(&self, node: usize) -> Option<usize> {
        match self.kinds[node] {
            NodeKind::Boundary(g) => Some(g),
            NodeKind::Free => None,
        }
    }
}

/// Ways to traverse one leg between consecutive stops, as
/// `(sector leaving the first stop, sector entering the second)`.
fn leg_modes(
    g: &BoundaryGraph,
    domain: &PolygonalDomain,
    (p, pv): (Point, Option<usize>),
    (q, qv): (Point, Option<usize>),
) -> Vec<(usize, usize)> {
    let start = pv.map(|v| (v, g.heading(v, q)));
    let end = qv.map(|v| (v, g.heading(v, p)));
    let free = |v: usize, s: usize| g.stars[v].is_free(s);
    match (start, end) {
        (None, None) => {
            let mid = Point::new(0.5 * (p.x + q.x), 0.5 * (p.y + q.y));
            if domain.locate(mid) == Location::Exterior {
                vec![]
            } else {
                vec![(0, 0)]
            }
        }
        (Some((v, Heading::Sector(s))), None) => {
            if free(v, s) {
                vec![(s, 0)]
            } else {
                vec![]
            }
        }
        (None, Some((w, Heading::Sector(t)))) => {
            if free(w, t) {
                vec![(0, t)]
            } else {
                vec![]
            }
        }
        (Some((v, Heading::Sector(s))), Some((w, Heading::Sector(t)))) => {
            if free(v, s) && free(w, t) {
                vec![(s, t)]
            } else {
                vec![]
            }
        }
        (Some((v, Heading::Ray(i))), Some((w, Heading::Ray(k)))) => {
            // Running along a boundary edge: stay on its left or its right.
            let (sv, sw) = (&g.stars[v], &g.stars[w]);
            let left = (sv.ccw_of(i), sw.cw_of(k));
            let right = (sv.cw_of(i), sw.ccw_of(k));
            [left, right]
                .into_iter()
                .filter(|&(s, t)| free(v, s) && free(w, t))
                .collect()
        }
        // Half of the leg on an edge and half off it cannot happen.
        _ => vec![],
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Visibility graph on `extra` plus every boundary vertex and point obstacle.
/// Extra points must lie in the closure of the domain; those on a boundary
/// edge become boundary vertices.
pub fn build_visibility(
    domain: &PolygonalDomain,
    extra: &[Point],
) -> Result<VisibilityGraph, GeodesicError> {
    let mut on_boundary = Vec::new();
    for (i, &p) in extra.iter().enumerate() {
        match domain.locate(p) {
            Location::Exterior => {
                return Err(GeodesicError::InvalidInput(format!(
                    "point {i} ({}, {}) is outside the domain closure",
                    p.x, p.y
                )))
            }
            Location::Boundary => {
                let p = p.canonical();
                if domain.graph().vertex_at(p).is_none() && !domain.points().contains(&p) {
                    on_boundary.push(p);
                }
            }
            Location::Interior => {}
        }
    }
    let graph = if on_boundary.is_empty() {
        domain.graph().clone()
    } else {
        domain.graph_with(&on_boundary)
    };

    let mut nodes = Vec::new();
    let mut kinds = Vec::new();
    let mut extra_nodes = vec![usize::MAX; extra.len()];
    for (i, &p) in extra.iter().enumerate() {
        let p = p.canonical();
        if graph.vertex_at(p).is_some() || domain.points().contains(&p) {
            continue;
        }
        if let Some(j) = nodes.iter().position(|&q| q == p) {
            extra_nodes[i] = j;
        } else {
            extra_nodes[i] = nodes.len();
            nodes.push(p);
            kinds.push(NodeKind::Free);
        }
    }
    let base = nodes.len();
    for (v, &p) in graph.vertices.iter().enumerate() {
        nodes.push(p);
        kinds.push(NodeKind::Boundary(v));
    }
    let obstacles = nodes.len();
    for &p in domain.points() {
        nodes.push(p);
        kinds.push(NodeKind::Free);
    }
    for (i, &p) in extra.iter().enumerate() {
        if extra_nodes[i] == usize::MAX {
            let p = p.canonical();
            extra_nodes[i] = match graph.vertex_at(p) {
                Some(v) => base + v,
                None => {
                    obstacles
                        + domain
                            .points()
                            .iter()
                            .position(|&q| q == p)
                            .expect("boundary extra is a vertex or a point obstacle")
                }
            };
        }
    }

    let mut vg = VisibilityGraph {
        nodes,
        edges: Vec::new(),
        extra_nodes,
        kinds,
        graph,
    };
    let n = vg.nodes.len();
    let edges: Vec<Vec<VisibilityEdge>> = (0..n)
        .into_par_iter()
        .map(|u| {
            ((u + 1)..n)
                .filter_map(|v| {
                    vg.link(domain, u, v).map(|ports| VisibilityEdge {
                        u,
                        v,
                        weight: vg.nodes[u].distance(&vg.nodes[v]),
                        ports,
                    })
                })
                .collect()
        })
        .collect();
    vg.edges = edges.into_iter().flatten().collect();
    Ok(vg)
}

/// Inner distance between `x` and `y` and a shortest path realizing it.
///
/// The value is the length of the shortest curve in the closure of the
/// domain that never crosses the boundary, which for polygonal domains
/// equals the infimum over curves inside the open domain.
pub fn inner_distance(
    domain: &PolygonalDomain,
    x: Point,
    y: Point,
) -> Result<(f64, GeodesicPath), GeodesicError> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(GeodesicError::InvalidInput("non-finite query point".into()));
    }
    let vg = build_visibility(domain, &[x, y])?;
    let (from, to) = (vg.extra_nodes[0], vg.extra_nodes[1]);
    let (distance, chain) = vg
        .shortest_path(from, to)
        .ok_or(GeodesicError::Unreachable)?;
    let vertices: Vec<Point> = chain.iter().map(|&i| vg.nodes[i]).collect();
    let length = path_length(&vertices);
    Ok((distance, GeodesicPath { vertices, length }))
}

pub(crate) fn path_length(vertices: &[Point]) -> f64 {
    vertices.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

/// Re-checks a path: every leg must avoid crossing the boundary and the
/// sectors used at each interior vertex must match.
pub fn validate_path(domain: &PolygonalDomain, vertices: &[Point]) -> Result<(), GeodesicError> {
    if vertices.len() < 2 {
        return Ok(());
    }
    let vg = build_visibility(domain, vertices)?;
    let mut reachable: Option<Vec<usize>> = None;
    for k in 0..vertices.len() - 1 {
        let (u, v) = (vg.extra_nodes[k], vg.extra_nodes[k + 1]);
        if u == v {
            return Err(GeodesicError::InvalidPath(format!("repeated vertex at leg {k}")));
        }
        let ports = vg
            .link(domain, u, v)
            .ok_or_else(|| GeodesicError::InvalidPath(format!("leg {k} crosses the boundary")))?;
        let next: Vec<usize> = ports
            .iter()
            .filter(|(s, _)| reachable.as_ref().is_none_or(|r| r.contains(s)))
            .map(|&(_, t)| t)
            .collect();
        if next.is_empty() {
            return Err(GeodesicError::InvalidPath(format!(
                "path switches sides of the boundary at vertex {k}"
            )));
        }
        reachable = Some(next);
    }
    Ok(())
}
