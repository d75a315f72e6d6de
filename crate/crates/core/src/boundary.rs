//! Planar straight-line graph of a domain boundary.
//!
//! Every boundary piece is cut at every boundary vertex lying on it, so
//! edges meet only at shared endpoints. Around each vertex the incident
//! edges split the plane into angular sectors; a sector is free when it
//! opens into the domain. A path may pass through a vertex only by
//! entering and leaving through the same free sector.

use std::collections::HashMap;

use crate::geom::{axis_key, cmp_around, strictly_inside_segment, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Outer,
    Hole(usize),
    Slit(usize),
}

impl std::fmt::Display for Piece {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Piece::Outer => write!(f, "outer"),
            Piece::Hole(i) => write!(f, "holes[{i}]"),
            Piece::Slit(i) => write!(f, "slits[{i}]"),
        }
    }
}

/// A boundary segment before splitting, with the sides (relative to the
/// direction `a -> b`) that face the domain.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RawSegment {
    pub a: Point,
    pub b: Point,
    pub free_left: bool,
    pub free_right: bool,
    pub piece: Piece,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct BoundaryEdge {
    pub a: usize,
    pub b: usize,
    pub free_left: bool,
    pub free_right: bool,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Star {
    /// `(neighbour vertex, edge)` sorted counterclockwise by direction.
    pub rays: Vec<(usize, usize)>,
    /// `free[i]` describes the open sector from ray `i` counterclockwise to ray `i + 1`.
    pub free: Vec<bool>,
}

impl Star {
    pub fn sector_count(&self) -> usize {
        self.rays.len().max(1)
    }

    pub fn is_free(&self, sector: usize) -> bool {
        self.free.get(sector).copied().unwrap_or(true)
    }

    /// Sector on the counterclockwise side of ray `i`.
    pub fn ccw_of(&self, ray: usize) -> usize {
        ray
    }

    /// Sector on the clockwise side of ray `i`.
    pub fn cw_of(&self, ray: usize) -> usize {
        (ray + self.rays.len() - 1) % self.rays.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Heading {
    /// Strictly inside the given sector.
    Sector(usize),
    /// Exactly along the given ray.
    Ray(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct BoundaryGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<BoundaryEdge>,
    pub stars: Vec<Star>,
    lookup: HashMap<(u64, u64), usize>,
}

fn key(p: Point) -> (u64, u64) {
    (p.x.to_bits(), p.y.to_bits())
}

impl BoundaryGraph {
    /// `seeds` fixes the vertex order; `raw` endpoints not among them are
    /// appended. Fails with a message if two incident edges overlap or the
    /// free sides disagree around a vertex.
    pub fn build(seeds: &[Point], raw: &[RawSegment]) -> Result<Self, String> {
        let mut vertices: Vec<Point> = Vec::new();
        let mut lookup = HashMap::new();
        let mut intern = |p: Point, vertices: &mut Vec<Point>| -> usize {
            *lookup.entry(key(p)).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        for &p in seeds {
            intern(p, &mut vertices);
        }
        for s in raw {
            intern(s.a, &mut vertices);
            intern(s.b, &mut vertices);
        }

        let mut edges = Vec::new();
        for s in raw {
            let mut cuts: Vec<usize> = (0..vertices.len())
                .filter(|&v| strictly_inside_segment(s.a, s.b, vertices[v]))
                .collect();
            cuts.sort_by(|&u, &v| {
                axis_key(s.a, s.b, vertices[u]).total_cmp(&axis_key(s.a, s.b, vertices[v]))
            });
            let mut chain = vec![lookup[&key(s.a)]];
            chain.extend(cuts);
            chain.push(lookup[&key(s.b)]);
            for w in chain.windows(2) {
                edges.push(BoundaryEdge {
                    a: w[0],
                    b: w[1],
                    free_left: s.free_left,
                    free_right: s.free_right,
                });
            }
        }

        let mut stars = vec![Star::default(); vertices.len()];
        for (e, edge) in edges.iter().enumerate() {
            stars[edge.a].rays.push((edge.b, e));
            stars[edge.b].rays.push((edge.a, e));
        }
        for (v, star) in stars.iter_mut().enumerate() {
            let c = vertices[v];
            star.rays
                .sort_by(|&(p, _), &(q, _)| cmp_around(c, vertices[p], vertices[q]));
            let m = star.rays.len();
            for i in 0..m {
                let j = (i + 1) % m;
                if m > 1
                    && cmp_around(c, vertices[star.rays[i].0], vertices[star.rays[j].0])
                        == std::cmp::Ordering::Equal
                {
                    return Err(format!("overlapping boundary edges at {:?}", c));
                }
                let left = side_free(&edges[star.rays[i].1], v, true);
                let right = side_free(&edges[star.rays[j].1], v, false);
                if left != right {
                    return Err(format!("inconsistent domain sides around {:?}", c));
                }
                star.free.push(left);
            }
        }

        Ok(BoundaryGraph {
            vertices,
            edges,
            stars,
            lookup,
        })
    }

    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.lookup.get(&key(p.canonical())).copied()
    }

    /// Where the direction from vertex `v` toward `toward` falls in the star of `v`.
    pub fn heading(&self, v: usize, toward: Point) -> Heading {
        let star = &self.stars[v];
        let c = self.vertices[v];
        let m = star.rays.len();
        if m == 0 {
            return Heading::Sector(0);
        }
        for i in 0..m {
            match cmp_around(c, self.vertices[star.rays[i].0], toward) {
                std::cmp::Ordering::Equal => return Heading::Ray(i),
                std::cmp::Ordering::Greater => return Heading::Sector((i + m - 1) % m),
                std::cmp::Ordering::Less => {}
            }
        }
        Heading::Sector(m - 1)
    }

    /// Connected component label per vertex, numbered by first vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        uf.labels()
    }

    pub fn has_edges(&self, v: usize) -> bool {
        !self.stars[v].rays.is_empty()
    }
}

fn side_free(edge: &BoundaryEdge, at: usize, left: bool) -> bool {
    let forward = edge.a == at;
    match (forward, left) {
        (true, true) | (false, false) => edge.free_left,
        _ => edge.free_right,
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Dense labels in order of first appearance, and the label count.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut map = HashMap::new();
        let mut out = Vec::with_capacity(n);
        for v in 0..n {
            let r = self.find(v);
            let next = map.len();
            out.push(*map.entry(r).or_insert(next));
        }
        (out, map.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slit(a: (f64, f64), b: (f64, f64), i: usize) -> RawSegment {
        RawSegment {
            a: a.into(),
            b: b.into(),
            free_left: true,
            free_right: true,
            piece: Piece::Slit(i),
        }
    }

    #[test]
    fn t_junction_is_split_and_sectors_classified() {
        // Bottom edge of a ccw square with a slit standing on it.
        let corners = [(0., 0.), (1., 0.), (1., 1.), (0., 1.)];
        let mut raw: Vec<RawSegment> = (0..4)
            .map(|k| RawSegment {
                a: corners[k].into(),
                b: corners[(k + 1) % 4].into(),
                free_left: true,
                free_right: false,
                piece: Piece::Outer,
            })
            .collect();
        raw.push(slit((0.5, 0.), (0.5, 0.5), 0));
        let g = BoundaryGraph::build(&[], &raw).unwrap();
        assert_eq!(g.edges.len(), 6);
        let foot = g.vertex_at(Point::new(0.5, 0.)).unwrap();
        let star = &g.stars[foot];
        assert_eq!(star.rays.len(), 3);
        // Rays: east (0), north (pi/2), west (pi); the sector below is blocked.
        assert_eq!(star.free, vec![true, true, false]);
        assert_eq!(g.heading(foot, Point::new(0.9, 0.1)), Heading::Sector(0));
        assert_eq!(g.heading(foot, Point::new(0.1, 0.1)), Heading::Sector(1));
        assert_eq!(g.heading(foot, Point::new(0.5, -1.0)), Heading::Sector(2));
        assert_eq!(g.heading(foot, Point::new(0.5, 0.25)), Heading::Ray(1));
    }

    #[test]
    fn slit_tip_has_one_free_sector() {
        let g = BoundaryGraph::build(&[], &[slit((0., -1.), (0., 1.), 0)]).unwrap();
        let tip = g.vertex_at(Point::new(0., 1.)).unwrap();
        assert_eq!(g.stars[tip].free, vec![true]);
        assert_eq!(g.stars[tip].sector_count(), 1);
    }
}
