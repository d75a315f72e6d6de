//! Minimal SVG rendering of a domain and a path.

use std::fmt::Write;

use innerdist::{Point, PolygonalDomain};

const SIZE: f64 = 800.0;
const PAD: f64 = 20.0;

pub fn render(domain: &PolygonalDomain, path: &[Point]) -> String {
    let mut pts: Vec<Point> = path.to_vec();
    if let Some((lo, hi)) = domain.bbox() {
        pts.push(lo);
        pts.push(hi);
    }
    if pts.is_empty() {
        pts.push(Point::new(0.0, 0.0));
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let scale = (SIZE - 2.0 * PAD) / span;
    // SVG's y axis points down.
    let map = |p: &Point| (PAD + (p.x - lo.x) * scale, SIZE - PAD - (p.y - lo.y) * scale);
    let coords = |v: &[Point]| {
        v.iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    if let Some(outer) = domain.outer() {
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="2"/>"##,
            coords(outer.vertices())
        );
    }
    for hole in domain.holes() {
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#9aa5b8" stroke="#1f3b73" stroke-width="2"/>"##,
            coords(hole.vertices())
        );
    }
    for slit in domain.slits() {
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#1f3b73" stroke-width="2"/>"##,
            coords(slit.vertices())
        );
    }
    for p in domain.points() {
        let (x, y) = map(p);
        let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#1f3b73"/>"##);
    }
    if path.len() >= 2 {
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2.5"/>"##,
            coords(path)
        );
    }
    out.push_str("</svg>\n");
    out
}
