//! City coauthorship networks and diversity indicators from Web of Science
//! tagged exports.
//!
//! The building blocks are usable on their own: [`records`] parses exports,
//! [`network`] aggregates one year into a weighted city graph, [`metrics`],
//! [`null_model`], [`power_law`] and [`diversity`] compute indicators, and
//! [`overlay`] renders maps. [`pipeline::run`] ties them together.

pub mod basemap;
pub mod diversity;
pub mod gazetteer;
pub mod generators;
pub mod geo;
pub mod graph;
pub mod metrics;
pub mod network;
pub mod null_model;
pub mod overlay;
pub mod pipeline;
pub mod power_law;
pub mod records;

pub use basemap::{validate_basemap, Basemap, BasemapError, BasemapIssue};
pub use gazetteer::{load_gazetteer, Gazetteer};
pub use geo::{great_circle_km, GeoPoint};
pub use graph::Graph;
pub use metrics::NetworkMetrics;
pub use network::{build_network, CityYearNetwork};
pub use pipeline::{run, PipelineError, RunConfig, RunSummary};
pub use records::{extract_city, parse_records, CityKey, PublicationRecord};
