//! JSON documents for domains and segment sets.

use serde_json::Value;

use innerdist::{Point, PolygonalDomain, Segment};

use crate::CliError;

type Coord = (f64, f64);

/// A domain as written on disk. Every key is optional; `outer` may be null.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DomainDocument {
    pub outer: Option<Vec<Coord>>,
    pub holes: Vec<Vec<Coord>>,
    pub slits: Vec<Vec<Coord>>,
    pub points: Vec<Coord>,
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses `"p/2^q"` into the exact double `p * 2^-q`, rejecting values that
/// would need rounding.
pub fn parse_dyadic(text: &str) -> Option<f64> {
    let (p, q) = text.trim().split_once("/2^")?;
    let p: i128 = p.trim().parse().ok()?;
    let q: u32 = q.trim().parse().ok()?;
    if q > 2000 {
        return None;
    }
    let mut value = p as f64;
    if value as i128 != p || !value.is_finite() {
        return None;
    }
    for _ in 0..q {
        let half = value / 2.0;
        if half * 2.0 != value {
            return None;
        }
        value = half;
    }
    Some(value)
}

fn number(v: &Value, path: &str) -> Result<f64, CliError> {
    let x = match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| invalid(path, "number is not representable"))?,
        Value::String(s) => parse_dyadic(s).ok_or_else(|| {
            invalid(path, format!("\"{s}\" is not an exactly representable \"p/2^q\" value"))
        })?,
        _ => return Err(invalid(path, "expected a number or a \"p/2^q\" string")),
    };
    if !x.is_finite() {
        return Err(invalid(path, "coordinate is not finite"));
    }
    Ok(x)
}

fn coord(v: &Value, path: &str) -> Result<Coord, CliError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((number(x, &format!("{path}[0]"))?, number(y, &format!("{path}[1]"))?)),
        _ => Err(invalid(path, "expected a point [x, y]")),
    }
}

fn coords(v: &Value, path: &str) -> Result<Vec<Coord>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(path, "expected an array of points"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, c)| coord(c, &format!("{path}[{i}]")))
        .collect()
}

fn coord_lists(v: &Value, path: &str) -> Result<Vec<Vec<Coord>>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(path, "expected an array of point arrays"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, c)| coords(c, &format!("{path}[{i}]")))
        .collect()
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| {
        invalid(
            "$",
            format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()),
        )
    })
}

impl DomainDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value = parse_json(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| invalid("$", "expected an object with outer, holes, slits, points"))?;
        if let Some(key) = obj
            .keys()
            .find(|k| !["outer", "holes", "slits", "points"].contains(&k.as_str()))
        {
            return Err(invalid(&format!("$.{key}"), "unknown key"));
        }
        let outer = match obj.get("outer") {
            None | Some(Value::Null) => None,
            Some(v) => Some(coords(v, "$.outer")?),
        };
        let list = |key: &str| -> Result<Vec<Vec<Coord>>, CliError> {
            obj.get(key)
                .map_or(Ok(Vec::new()), |v| coord_lists(v, &format!("$.{key}")))
        };
        Ok(DomainDocument {
            outer,
            holes: list("holes")?,
            slits: list("slits")?,
            points: obj
                .get("points")
                .map_or(Ok(Vec::new()), |v| coords(v, "$.points"))?,
        })
    }

    /// Validated domain; violations name the offending piece as a JSON path.
    pub fn to_domain(&self) -> Result<PolygonalDomain, CliError> {
        PolygonalDomain::from_coords(
            self.outer.clone(),
            self.holes.clone(),
            self.slits.clone(),
            self.points.clone(),
        )
        .map_err(|e| invalid("$", format!("invalid domain: {e}")))
    }

    pub fn from_domain(domain: &PolygonalDomain) -> Self {
        let pts = |v: &[Point]| v.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>();
        DomainDocument {
            outer: domain.outer().map(|o| pts(o.vertices())),
            holes: domain.holes().iter().map(|h| pts(h.vertices())).collect(),
            slits: domain.slits().iter().map(|s| pts(s.vertices())).collect(),
            points: pts(domain.points()),
        }
    }

    /// Canonical text: sorted keys, no spaces, 17 significant digits.
    pub fn to_canonical(&self) -> String {
        let list = |v: &[Coord]| {
            let items: Vec<String> = v.iter().map(|&c| fmt_coord(c)).collect();
            format!("[{}]", items.join(","))
        };
        let lists = |v: &[Vec<Coord>]| {
            let items: Vec<String> = v.iter().map(|c| list(c)).collect();
            format!("[{}]", items.join(","))
        };
        let outer = self.outer.as_deref().map_or("null".to_string(), list);
        format!(
            "{{\"holes\":{},\"outer\":{},\"points\":{},\"slits\":{}}}\n",
            lists(&self.holes),
            outer,
            list(&self.points),
            lists(&self.slits)
        )
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", if x == 0.0 { 0.0 } else { x })
}

fn fmt_coord((x, y): Coord) -> String {
    format!("[{},{}]", fmt_float(x), fmt_float(y))
}

/// Segment list `[[[x, y], [x, y]], ...]`.
pub fn parse_segments(text: &str) -> Result<Vec<Segment>, CliError> {
    let value = parse_json(text)?;
    let items = value
        .as_array()
        .ok_or_else(|| invalid("$", "expected an array of segments"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let path = format!("$[{i}]");
            let ends = coords(s, &path)?;
            match ends.as_slice() {
                [a, b] => Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1))
                    .map_err(|e| invalid(&path, e.to_string())),
                _ => Err(invalid(&path, "a segment needs exactly two points")),
            }
        })
        .collect()
}

/// Path document `{"vertices": [[x, y], ...], "length": number}`.
pub fn path_json(vertices: &[Point], length: f64) -> String {
    let items: Vec<String> = vertices.iter().map(|p| fmt_coord((p.x, p.y))).collect();
    format!(
        "{{\"length\":{},\"vertices\":[{}]}}\n",
        fmt_float(length),
        items.join(",")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_strings() {
        assert_eq!(parse_dyadic("3/2^2"), Some(0.75));
        assert_eq!(parse_dyadic("-1/2^0"), Some(-1.0));
        assert_eq!(parse_dyadic("1/2^1074"), Some(f64::from_bits(1)));
        assert_eq!(parse_dyadic("3/2^1075"), None);
        assert_eq!(parse_dyadic("9007199254740993/2^0"), None);
        assert_eq!(parse_dyadic("1/3"), None);
    }

    #[test]
    fn error_paths() {
        let err = DomainDocument::parse(r#"{"holes": [[[0, 0], [1, "x"]]]}"#).unwrap_err();
        assert!(err.to_string().contains("$.holes[0][1][1]"), "{err}");
        let err = DomainDocument::parse(r#"{"outer": [[0, 0]], "bogus": 1}"#).unwrap_err();
        assert!(err.to_string().contains("$.bogus"));
        let err = DomainDocument::parse("{").unwrap_err();
        assert!(err.to_string().contains("malformed JSON"));
    }

    #[test]
    fn canonical_round_trip() {
        let doc = DomainDocument::parse(
            r#"{"outer": [[0, 0], ["1/2^0", 0], [1, 1], [0, 1]], "slits": [[[0.5, 0], [0.5, 0.75]]]}"#,
        )
        .unwrap();
        let text = doc.to_canonical();
        assert_eq!(DomainDocument::parse(&text).unwrap().to_canonical(), text);
        assert!(text.starts_with("{\"holes\":[],\"outer\":[[0.0000000000000000e0,"));
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt_float(-0.0), fmt_float(0.0));
    }
}
