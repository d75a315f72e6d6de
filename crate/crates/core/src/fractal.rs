//! The self-similar Cantor-type set built from nested disks: at level `k`
//! every disk of the previous level is replaced by `2^k` disks of relative
//! radius `2^-k` placed evenly on a concentric circle of relative radius
//! `1 - 2^-k`.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::geom::{convex_hull, hull_boundary_h1, Point};

pub const MAX_LEVEL: u32 = 6;
/// Tolerance for containment and inequality checks.
pub const FRACTAL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum FractalError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractalLevel {
    pub k: u32,
    pub balls: Vec<Ball>,
}

/// Offsets `(1 - 2^-k) e^{i j 2^{1-k} pi}` for `j = 1..=2^k`.
fn sibling_offsets(k: u32) -> Vec<Point> {
    let n = 1u64 << k;
    let reach = 1.0 - (-(k as f64)).exp2();
    (1..=n)
        .map(|j| {
            let angle = j as f64 * PI * (1.0 - k as f64).exp2();
            Point::new(reach * angle.cos(), reach * angle.sin())
        })
        .collect()
}

/// All disks of level `k`, ordered by index tuple `(j_2, ..., j_k)` with
/// `1 <= j_i <= 2^i`.
pub fn fractal_level(k: u32) -> Result<FractalLevel, FractalError> {
    if !(1..=MAX_LEVEL).contains(&k) {
        return Err(FractalError::InvalidInput(format!(
            "level must be in 1..={MAX_LEVEL}, got {k}"
        )));
    }
    let mut balls = vec![Ball {
        center: Point::new(0.0, 0.0),
        radius: 1.0,
    }];
    for level in 2..=k {
        let offsets = sibling_offsets(level);
        let shrink = (-(level as f64)).exp2();
        balls = balls
            .par_iter()
            .flat_map_iter(|b| {
                offsets.iter().map(move |o| Ball {
                    center: b.center.add(&o.scale(b.radius)),
                    radius: b.radius * shrink,
                })
            })
            .collect();
    }
    Ok(FractalLevel { k, balls })
}

/// `prod_{i=2..k} 2^i`, the number of disks at level `k`.
pub fn level_count(k: u32) -> u64 {
    1u64 << (k * (k + 1) / 2 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractalStats {
    pub count: usize,
    pub radius: f64,
    pub diameter_sum: f64,
    /// Smallest distance between two disk boundaries; infinite for one disk.
    pub min_gap: f64,
}

pub fn fractal_stats(level: &FractalLevel) -> FractalStats {
    let count = level.balls.len();
    let radius = level.balls[0].radius;
    let min_center = if level.k <= 4 {
        min_center_distance_all_pairs(&level.balls)
    } else {
        min_center_distance_grid(&level.balls, radius)
    };
    FractalStats {
        count,
        radius,
        diameter_sum: count as f64 * 2.0 * radius,
        min_gap: min_center - 2.0 * radius,
    }
}

fn min_center_distance_all_pairs(balls: &[Ball]) -> f64 {
    (0..balls.len())
        .into_par_iter()
        .map(|i| {
            balls[i + 1..]
                .iter()
                .map(|b| balls[i].center.distance(&b.center))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Closest pair of centers by bucketing into square cells. Pairs in
/// neighbouring cells are compared; the result is exact once it does not
/// exceed the cell size, otherwise the cells are doubled.
fn min_center_distance_grid(balls: &[Ball], radius: f64) -> f64 {
    let mut cell = 8.0 * radius;
    loop {
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, b) in balls.iter().enumerate() {
            let key = (
                (b.center.x / cell).floor() as i64,
                (b.center.y / cell).floor() as i64,
            );
            buckets.entry(key).or_default().push(i);
        }
        let keys: Vec<(i64, i64)> = buckets.keys().copied().collect();
        let best = keys
            .par_iter()
            .map(|&(cx, cy)| {
                let mut best = f64::INFINITY;
                let own = &buckets[&(cx, cy)];
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        let Some(other) = buckets.get(&(cx + dx, cy + dy)) else {
                            continue;
                        };
                        for &i in own {
                            for &j in other {
                                if i < j {
                                    best = best.min(balls[i].center.distance(&balls[j].center));
                                }
                            }
                        }
                    }
                }
                best
            })
            .reduce(|| f64::INFINITY, f64::min);
        if best <= cell || balls.len() < 2 {
            return best;
        }
        cell *= 2.0;
    }
}

/// Checks that every disk of level `k + 1` lies in exactly one disk of level `k`.
pub fn nesting_check(k: u32) -> Result<bool, FractalError> {
    let parents = fractal_level(k)?;
    let children = fractal_level(k + 1)?;
    Ok(children.balls.par_iter().all(|c| {
        parents
            .balls
            .iter()
            .filter(|p| p.center.distance(&c.center) + c.radius <= p.radius + FRACTAL_TOL)
            .count()
            == 1
    }))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiblingGap {
    pub actual_gap: f64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Gap between adjacent level-`k0` siblings inside a parent of radius `r`,
/// against the lower bound `(1 - 2^{1-k0}) sin(2^-k0 pi) r`.
pub fn sibling_gap_check(k0: u32, parent_radius: f64) -> Result<SiblingGap, FractalError> {
    if k0 < 2 {
        return Err(FractalError::InvalidInput(format!("k0 must be at least 2, got {k0}")));
    }
    let s = (-(k0 as f64)).exp2();
    let sine = (s * PI).sin();
    let actual_gap = 2.0 * (1.0 - s) * parent_radius * sine - 2.0 * s * parent_radius;
    let bound = (1.0 - 2.0 * s) * sine * parent_radius;
    Ok(SiblingGap {
        actual_gap,
        bound,
        satisfied: actual_gap >= bound - FRACTAL_TOL,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullProbe {
    pub hull_perimeter: f64,
    pub measure_weight: f64,
    pub satisfied: bool,
}

/// Perimeter of the convex hull of the chosen level-`k0` siblings in a unit
/// parent, each replaced by an inscribed regular polygon, against
/// `(1 - 2^{2-k0}) pi N d` for `N` siblings of diameter `d`.
pub fn hull_lower_probe(
    k0: u32,
    indices: &[u64],
    circle_resolution: usize,
) -> Result<HullProbe, FractalError> {
    if !(2..=30).contains(&k0) {
        return Err(FractalError::InvalidInput(format!("k0 must be in 2..=30, got {k0}")));
    }
    if indices.len() < 3 {
        return Err(FractalError::InvalidInput(format!(
            "need at least 3 siblings, got {}",
            indices.len()
        )));
    }
    if circle_resolution < 64 {
        return Err(FractalError::InvalidInput(format!(
            "circle resolution must be at least 64, got {circle_resolution}"
        )));
    }
    let n = 1u64 << k0;
    let mut seen = std::collections::HashSet::new();
    for &j in indices {
        if !(1..=n).contains(&j) || !seen.insert(j) {
            return Err(FractalError::InvalidInput(format!(
                "sibling index {j} is repeated or outside 1..={n}"
            )));
        }
    }
    let s = (-(k0 as f64)).exp2();
    let step = (1.0 - k0 as f64).exp2() * PI;
    let mut pts = Vec::with_capacity(indices.len() * circle_resolution);
    for &j in indices {
        let a = j as f64 * step;
        let c = Point::new((1.0 - s) * a.cos(), (1.0 - s) * a.sin());
        for m in 0..circle_resolution {
            let t = 2.0 * PI * m as f64 / circle_resolution as f64;
            pts.push(Point::new(c.x + s * t.cos(), c.y + s * t.sin()));
        }
    }
    let hull = convex_hull(&pts).expect("probe points are finite and not all equal");
    let hull_perimeter = hull_boundary_h1(&hull);
    let measure_weight = (1.0 - 4.0 * s) * PI * indices.len() as f64 * 2.0 * s;
    Ok(HullProbe {
        hull_perimeter,
        measure_weight,
        satisfied: hull_perimeter >= measure_weight - FRACTAL_TOL,
    })
}
