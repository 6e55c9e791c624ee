//! Serialization and plotting.

pub mod json;
pub mod svg;

pub use json::{from_str, to_string, Facets, Json};
pub use svg::{
    chain_segments, marching_squares, svg_implicit_curves, svg_triangulation, CurveStyle,
    PlotWindow, Segment, TriangulationStyle,
};
