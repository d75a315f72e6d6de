//! Inner (geodesic) distance in planar polygonal domains, with checks of
//! length bounds for boundaries, convex hulls and connected sets.

mod boundary;
pub mod domain;
pub mod fractal;
pub mod geodesic;
pub mod geom;
pub mod painleve;
pub mod samples;
pub mod verifier;

pub use domain::{
    comb_boundary_length, comb_domain, connected_diam_vs_length, decompose_boundary,
    BoundaryComponent, BoundaryDecomposition, CombDomain, DomainError, Location, PolygonalDomain,
};
pub use geodesic::{
    build_visibility, grid_components, grid_oracle, grid_oracle_with, inner_distance,
    GeodesicError, GeodesicPath, GridOptions, GridResult, VisibilityGraph,
};
pub use geom::{
    convex_hull, hull_boundary_h1, orientation, polygon_contains, proper_cross, Containment,
    ConvexHull, GeomError, HullKind, Orientation, Point, Polyline, Segment, SimplePolygon,
};
