use std::collections::BinaryHeap;

use super::GeodesicError;
use crate::boundary::UnionFind;
use crate::domain::{Location, PolygonalDomain};
use crate::geom::{on_segment, segments_touch, Point};

/// Largest grid the oracle will allocate.
const MAX_NODES: u64 = 60_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptions {
    /// Node spacing `h`; nodes sit at integer multiples of it.
    pub spacing: f64,
    /// Neighbours are all primitive offsets with Chebyshev norm at most
    /// this (1 to 4). Reach 2 gives 16 directions, reach 3 gives 32.
    pub reach: u32,
    /// Radius for joining the query points to grid nodes; `None` means `2h`.
    pub snap_radius: Option<f64>,
}

impl GridOptions {
    pub fn new(spacing: f64) -> Self {
        GridOptions {
            spacing,
            reach: 3,
            snap_radius: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridResult {
    pub distance: f64,
    /// `x`, the visited grid nodes, then `y`.
    pub path: Vec<Point>,
    pub nodes: usize,
}

/// Upper bound on the inner distance from a grid path at spacing `h`.
pub fn grid_oracle(
    domain: &PolygonalDomain,
    x: Point,
    y: Point,
    h: f64,
) -> Result<f64, GeodesicError> {
    grid_oracle_with(domain, x, y, &GridOptions::new(h)).map(|r| r.distance)
}

pub fn grid_oracle_with(
    domain: &PolygonalDomain,
    x: Point,
    y: Point,
    opts: &GridOptions,
) -> Result<GridResult, GeodesicError> {
    for (name, p) in [("x", x), ("y", y)] {
        if !p.is_finite() || domain.locate(p) != Location::Interior {
            return Err(GeodesicError::InvalidInput(format!(
                "{name} = ({}, {}) must lie in the open domain",
                p.x, p.y
            )));
        }
    }
    let grid = Grid::build(domain, &[x, y], opts)?;
    let boundary = boundary_pieces(domain);
    let radius = opts.snap_radius.unwrap_or(2.0 * opts.spacing);
    if !(radius >= 0.0) {
        return Err(GeodesicError::InvalidInput("snap radius must be non-negative".into()));
    }

    let mut best = f64::INFINITY;
    let mut best_end = None;
    if clear(&boundary, x, y) {
        best = x.distance(&y);
    }
    let sources = grid.snap(&boundary, x, radius);
    let targets = grid.snap(&boundary, y, radius);
    // Dijkstra runs in units of the spacing so axis-aligned sums stay exact.
    let h = grid.h;
    let mut exit = Vec::new();
    let mut target_of = std::collections::HashMap::new();
    for &(n, d) in &targets {
        target_of.insert(n, exit.len());
        exit.push(d / h);
    }

    let total = grid.width * grid.height;
    let mut dist = vec![f64::INFINITY; total];
    let mut prev = vec![u32::MAX; total];
    let mut heap = BinaryHeap::new();
    for &(n, d) in &sources {
        let d = d / h;
        if d < dist[n] {
            dist[n] = d;
            heap.push(Entry(d, n));
        }
    }
    while let Some(Entry(d, n)) = heap.pop() {
        if d > dist[n] {
            continue;
        }
        if d * h >= best {
            break;
        }
        if let Some(&t) = target_of.get(&n) {
            let through = (d + exit[t]) * h;
            if through < best {
                best = through;
                best_end = Some(n);
            }
        }
        let (i, j) = (n % grid.width, n / grid.width);
        let mask = grid.blocked[n];
        for (k, &(dx, dy, len)) in grid.dirs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                continue;
            }
            let (ni, nj) = (i as i64 + dx, j as i64 + dy);
            if ni < 0 || nj < 0 || ni >= grid.width as i64 || nj >= grid.height as i64 {
                continue;
            }
            let m = nj as usize * grid.width + ni as usize;
            if !grid.valid[m] {
                continue;
            }
            let nd = d + len;
            if nd < dist[m] {
                dist[m] = nd;
                prev[m] = n as u32;
                heap.push(Entry(nd, m));
            }
        }
    }

    if best.is_infinite() {
        return Err(GeodesicError::UnreachableAtResolution { spacing: grid.h });
    }
    let mut path = vec![x];
    if let Some(end) = best_end {
        let mut chain = vec![end];
        let mut cur = end;
        while prev[cur] != u32::MAX {
            cur = prev[cur] as usize;
            chain.push(cur);
        }
        path.extend(chain.into_iter().rev().map(|n| grid.point(n)));
    }
    path.push(y);
    Ok(GridResult {
        distance: best,
        path,
        nodes: total,
    })
}

/// Number of connected components formed by the grid nodes inside the
/// domain, joined through unblocked axis and diagonal steps.
pub fn grid_components(domain: &PolygonalDomain, h: f64) -> Result<usize, GeodesicError> {
    let opts = GridOptions {
        spacing: h,
        reach: 1,
        snap_radius: None,
    };
    let grid = Grid::build(domain, &[], &opts)?;
    let mut uf = UnionFind::new(grid.width * grid.height);
    for n in 0..grid.width * grid.height {
        if !grid.valid[n] {
            continue;
        }
        let (i, j) = (n % grid.width, n / grid.width);
        for (k, &(dx, dy, _)) in grid.dirs.iter().enumerate() {
            if grid.blocked[n] >> k & 1 == 1 {
                continue;
            }
            let (ni, nj) = (i as i64 + dx, j as i64 + dy);
            if ni < 0 || nj < 0 || ni >= grid.width as i64 || nj >= grid.height as i64 {
                continue;
            }
            let m = nj as usize * grid.width + ni as usize;
            if grid.valid[m] {
                uf.union(n, m);
            }
        }
    }
    let roots: std::collections::HashSet<usize> = (0..grid.width * grid.height)
        .filter(|&n| grid.valid[n])
        .map(|n| uf.find(n))
        .collect();
    Ok(roots.len())
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn boundary_pieces(domain: &PolygonalDomain) -> Vec<(Point, Point)> {
    domain
        .boundary_segments()
        .iter()
        .map(|s| (s.a(), s.b()))
        .collect()
}

fn clear(boundary: &[(Point, Point)], p: Point, q: Point) -> bool {
    !boundary.iter().any(|&(a, b)| segments_touch(p, q, a, b))
}

/// Primitive offsets with Chebyshev norm at most `reach`, sorted by angle,
/// with their Euclidean lengths in units of `h`.
fn directions(reach: u32) -> Vec<(i64, i64, f64)> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let r = reach as i64;
    let mut out = Vec::new();
    for dx in -r..=r {
        for dy in -r..=r {
            if (dx, dy) != (0, 0) && gcd(dx.abs(), dy.abs()) == 1 {
                out.push((dx, dy, ((dx * dx + dy * dy) as f64).sqrt()));
            }
        }
    }
    out.sort_by(|a, b| (a.1 as f64).atan2(a.0 as f64).total_cmp(&(b.1 as f64).atan2(b.0 as f64)));
    out
}

struct Grid {
    h: f64,
    i0: i64,
    j0: i64,
    width: usize,
    height: usize,
    valid: Vec<bool>,
    blocked: Vec<u64>,
    dirs: Vec<(i64, i64, f64)>,
}

impl Grid {
    fn build(
        domain: &PolygonalDomain,
        queries: &[Point],
        opts: &GridOptions,
    ) -> Result<Grid, GeodesicError> {
        let h = opts.spacing;
        if !(h > 0.0 && h.is_finite()) {
            return Err(GeodesicError::InvalidInput(format!("grid spacing {h} must be positive")));
        }
        if !(1..=4).contains(&opts.reach) {
            return Err(GeodesicError::InvalidInput(format!(
                "grid reach {} must be between 1 and 4",
                opts.reach
            )));
        }
        let (lo, hi) = window(domain, queries);
        let (i0, i1) = ((lo.x / h).ceil() as i64, (hi.x / h).floor() as i64);
        let (j0, j1) = ((lo.y / h).ceil() as i64, (hi.y / h).floor() as i64);
        let (width, height) = ((i1 - i0 + 1).max(0) as u64, (j1 - j0 + 1).max(0) as u64);
        let nodes = width * height;
        if nodes > MAX_NODES {
            return Err(GeodesicError::TooFine { spacing: h, nodes });
        }
        let mut grid = Grid {
            h,
            i0,
            j0,
            width: width as usize,
            height: height as usize,
            valid: vec![false; nodes as usize],
            blocked: vec![0; nodes as usize],
            dirs: directions(opts.reach),
        };
        grid.classify(domain);
        grid.block(domain, opts.reach);
        Ok(grid)
    }

    fn point(&self, n: usize) -> Point {
        let (i, j) = ((n % self.width) as i64, (n / self.width) as i64);
        Point::new((self.i0 + i) as f64 * self.h, (self.j0 + j) as f64 * self.h)
    }

    /// Marks nodes inside the polygonal regions by scanline parity.
    fn classify(&mut self, domain: &PolygonalDomain) {
        let mut rings: Vec<&[Point]> = domain.holes().iter().map(|p| p.vertices()).collect();
        if let Some(outer) = domain.outer() {
            rings.push(outer.vertices());
        }
        let bounded = domain.is_bounded();
        let scale = self.h * (self.width.max(self.height) as f64);
        let mut xs = Vec::new();
        for j in 0..self.height {
            let y = (self.j0 + j as i64) as f64 * self.h;
            xs.clear();
            for ring in &rings {
                for k in 0..ring.len() {
                    let (a, b) = (ring[k], ring[(k + 1) % ring.len()]);
                    if (a.y > y) != (b.y > y) {
                        xs.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
                    }
                }
            }
            xs.sort_by(f64::total_cmp);
            let mut next = 0;
            for i in 0..self.width {
                let x = (self.i0 + i as i64) as f64 * self.h;
                while next < xs.len() && xs[next] < x {
                    next += 1;
                }
                let near = [next.wrapping_sub(1), next]
                    .iter()
                    .any(|&k| k < xs.len() && (xs[k] - x).abs() <= 1e-9 * scale);
                let n = j * self.width + i;
                self.valid[n] = if near {
                    domain.locate(Point::new(x, y)) == Location::Interior
                } else {
                    // Holes and the outer ring each flip parity; an unbounded
                    // domain starts inside.
                    (next % 2 == 1) == bounded
                };
            }
        }
    }

    /// Sets blocked-direction bits for every step touching a boundary
    /// segment, and invalidates nodes lying on one.
    fn block(&mut self, domain: &PolygonalDomain, reach: u32) {
        let reverse: Vec<usize> = self
            .dirs
            .iter()
            .map(|&(dx, dy, _)| {
                self.dirs
                    .iter()
                    .position(|&(ex, ey, _)| (ex, ey) == (-dx, -dy))
                    .expect("direction set is symmetric")
            })
            .collect();
        let window = (reach as f64 * std::f64::consts::SQRT_2 + 1.5).ceil() as i64;
        let mut stamp = vec![u32::MAX; self.valid.len()];
        for (sid, seg) in domain.boundary_segments().iter().enumerate() {
            let (a, b) = (seg.a(), seg.b());
            let samples = (seg.length() / (0.5 * self.h)).ceil() as usize + 1;
            for s in 0..=samples {
                let p = seg.point_at(s as f64 / samples as f64);
                let (ci, cj) = (
                    (p.x / self.h).round() as i64 - self.i0,
                    (p.y / self.h).round() as i64 - self.j0,
                );
                for j in (cj - window).max(0)..=(cj + window).min(self.height as i64 - 1) {
                    for i in (ci - window).max(0)..=(ci + window).min(self.width as i64 - 1) {
                        let n = j as usize * self.width + i as usize;
                        if stamp[n] == sid as u32 {
                            continue;
                        }
                        stamp[n] = sid as u32;
                        let q = self.point(n);
                        if on_segment(a, b, q) {
                            self.valid[n] = false;
                        }
                        for (k, &(dx, dy, _)) in self.dirs.iter().enumerate() {
                            let (ni, nj) = (i + dx, j + dy);
                            if ni < 0 || nj < 0 || ni >= self.width as i64 || nj >= self.height as i64
                            {
                                continue;
                            }
                            if self.blocked[n] >> k & 1 == 1 {
                                continue;
                            }
                            let r = Point::new(q.x + dx as f64 * self.h, q.y + dy as f64 * self.h);
                            if segments_touch(q, r, a, b) {
                                let m = nj as usize * self.width + ni as usize;
                                self.blocked[n] |= 1 << k;
                                self.blocked[m] |= 1 << reverse[k];
                            }
                        }
                    }
                }
            }
        }
    }

    /// Valid nodes within `radius` of `p` joined to it by a clear segment,
    /// with the joining lengths.
    fn snap(&self, boundary: &[(Point, Point)], p: Point, radius: f64) -> Vec<(usize, f64)> {
        let r = (radius / self.h).ceil() as i64;
        let (ci, cj) = (
            (p.x / self.h).round() as i64 - self.i0,
            (p.y / self.h).round() as i64 - self.j0,
        );
        let mut out = Vec::new();
        for j in (cj - r - 1).max(0)..=(cj + r + 1).min(self.height as i64 - 1) {
            for i in (ci - r - 1).max(0)..=(ci + r + 1).min(self.width as i64 - 1) {
                let n = j as usize * self.width + i as usize;
                let q = self.point(n);
                let d = p.distance(&q);
                if self.valid[n] && d <= radius && clear(boundary, p, q) {
                    out.push((n, d));
                }
            }
        }
        out
    }
}

/// Axis-aligned window for the grid: the domain's bounding box for bounded
/// domains, else the boundary and query points with a margin. Edges are
/// aligned to a power of two so grids on halved spacings nest.
fn window(domain: &PolygonalDomain, queries: &[Point]) -> (Point, Point) {
    let mut pts: Vec<Point> = queries.to_vec();
    if let Some((lo, hi)) = domain.bbox() {
        pts.push(lo);
        pts.push(hi);
    }
    if pts.is_empty() {
        pts.push(Point::new(0.0, 0.0));
    }
    let (mut lo, mut hi) = crate::geom::bbox(&pts);
    if let Some(outer) = domain.outer() {
        (lo, hi) = outer.bbox();
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE * 1e10);
    if !domain.is_bounded() {
        let margin = 0.25 * extent.max(1e-3);
        lo = Point::new(lo.x - margin, lo.y - margin);
        hi = Point::new(hi.x + margin, hi.y + margin);
    }
    let unit = 2f64.powi(extent.log2().floor() as i32 - 3);
    (
        Point::new((lo.x / unit).floor() * unit, (lo.y / unit).floor() * unit),
        Point::new((hi.x / unit).ceil() * unit, (hi.y / unit).ceil() * unit),
    )
}
