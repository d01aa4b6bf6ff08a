//! Map overlays: per-year city networks on a geographic map and per-year
//! category counts on a science basemap.

mod geo;
mod sci;

pub use geo::{emit_geo, GeoFeature, GeoFormat, GeoOverlay, NodeColor, UnknownFormat};
pub use sci::{emit_sci, SciEntry, SciOverlay};
