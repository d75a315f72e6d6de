//! Inner distance in polygonal domains.
//!
//! The exact engine is a visibility graph whose vertices are expanded by
//! angular sector, so a path may touch the boundary but never cross it.
//! The grid oracle gives an independent upper bound.

mod grid;
mod visibility;

pub use grid::{grid_components, grid_oracle, grid_oracle_with, GridOptions, GridResult};
pub use visibility::{
    build_visibility, inner_distance, validate_path, VisibilityEdge, VisibilityGraph,
};

use thiserror::Error;

use crate::domain::{DomainError, PolygonalDomain};
use crate::geom::Point;

#[derive(Debug, Error)]
pub enum GeodesicError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the points lie in different components of the domain")]
    Unreachable,
    #[error("no grid path at spacing {spacing}; refine the grid (this is not proof of disconnection)")]
    UnreachableAtResolution { spacing: f64 },
    #[error("grid with spacing {spacing} would need {nodes} nodes")]
    TooFine { spacing: f64, nodes: u64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// A polyline in the closure of a domain together with its length.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub vertices: Vec<Point>,
    pub length: f64,
}

impl GeodesicPath {
    /// Checks that no leg crosses the boundary, that the path never switches
    /// sides at a boundary vertex, and that `length` matches the vertices.
    pub fn validate(&self, domain: &PolygonalDomain) -> Result<(), GeodesicError> {
        validate_path(domain, &self.vertices)?;
        let summed = visibility::path_length(&self.vertices);
        if (summed - self.length).abs() > 1e-12 * summed.max(1.0) {
            return Err(GeodesicError::InvalidPath(format!(
                "stored length {} differs from summed length {summed}",
                self.length
            )));
        }
        Ok(())
    }

    /// True when no vertex repeats and no two non-adjacent legs meet.
    pub fn is_injective(&self) -> bool {
        let v = &self.vertices;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                if v[i] == v[j] {
                    return false;
                }
            }
        }
        let n = v.len().saturating_sub(1);
        for i in 0..n {
            for j in (i + 2)..n {
                if crate::geom::segments_touch(v[i], v[i + 1], v[j], v[j + 1]) {
                    return false;
                }
            }
        }
        true
    }
}
