use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::geo::GeoPoint;
use crate::network::CityYearNetwork;
use crate::records::CityKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeoFormat {
    GeoJson,
    Kml,
}

impl GeoFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GeoFormat::GeoJson => "geojson",
            GeoFormat::Kml => "kml",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown overlay format `{0}` (expected geojson or kml)")]
pub struct UnknownFormat(pub String);

impl FromStr for GeoFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "geojson" | "json" => Ok(GeoFormat::GeoJson),
            "kml" => Ok(GeoFormat::Kml),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for GeoFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

/// Cities with at least one coauthorship link are red, isolates orange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeColor {
    Red,
    Orange,
}

impl NodeColor {
    pub fn name(self) -> &'static str {
        match self {
            NodeColor::Red => "red",
            NodeColor::Orange => "orange",
        }
    }

    /// KML `aabbggrr`.
    fn kml(self) -> &'static str {
        match self {
            NodeColor::Red => "ff0000ff",
            NodeColor::Orange => "ff00a5ff",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeoFeature {
    City {
        key: CityKey,
        at: GeoPoint,
        papers: u32,
        color: NodeColor,
    },
    Link {
        source: CityKey,
        target: CityKey,
        from: GeoPoint,
        to: GeoPoint,
        weight: u32,
    },
}

/// Map-ready view of one year's network: geocoded cities sorted by key,
/// then links between geocoded cities sorted by endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoOverlay {
    pub year: i32,
    pub features: Vec<GeoFeature>,
    /// Cities left off the map for lack of coordinates.
    pub omitted_cities: usize,
}

impl GeoOverlay {
    pub fn from_network(net: &CityYearNetwork) -> Self {
        let graph = net.graph();
        let mut features = Vec::new();
        let mut omitted_cities = 0;
        for (i, node) in net.nodes().iter().enumerate() {
            let Some(at) = node.coord else {
                omitted_cities += 1;
                continue;
            };
            let color = if graph.degree(i) > 0 {
                NodeColor::Red
            } else {
                NodeColor::Orange
            };
            features.push(GeoFeature::City {
                key: node.key.clone(),
                at,
                papers: node.papers,
                color,
            });
        }
        for edge in net.edges() {
            let (a, b) = (&net.nodes()[edge.source], &net.nodes()[edge.target]);
            if let (Some(from), Some(to)) = (a.coord, b.coord) {
                features.push(GeoFeature::Link {
                    source: a.key.clone(),
                    target: b.key.clone(),
                    from,
                    to,
                    weight: edge.weight,
                });
            }
        }
        Self {
            year: net.year,
            features,
            omitted_cities,
        }
    }

    pub fn to_geojson(&self) -> Vec<u8> {
        let features: Vec<Value> = self
            .features
            .iter()
            .map(|f| match f {
                GeoFeature::City {
                    key,
                    at,
                    papers,
                    color,
                } => json!({
                    "type": "Feature",
                    "geometry": { "type": "Point", "coordinates": [at.lon, at.lat] },
                    "properties": {
                        "city": key.city(),
                        "country": key.country(),
                        "papers": papers,
                        "color": color.name(),
                        "radius": node_radius(*papers),
                    }
                }),
                GeoFeature::Link {
                    source,
                    target,
                    from,
                    to,
                    weight,
                } => json!({
                    "type": "Feature",
                    "geometry": {
                        "type": "LineString",
                        "coordinates": [[from.lon, from.lat], [to.lon, to.lat]]
                    },
                    "properties": {
                        "source": source.to_string(),
                        "target": target.to_string(),
                        "weight": weight,
                    }
                }),
            })
            .collect();
        let collection = json!({
            "type": "FeatureCollection",
            "properties": {
                "year": self.year,
                "omitted_cities": self.omitted_cities,
            },
            "features": features,
        });
        let mut out = serde_json::to_vec_pretty(&collection).expect("JSON values serialize");
        out.push(b'\n');
        out
    }

    pub fn to_kml(&self) -> Vec<u8> {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str("<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n<Document>\n");
        let _ = writeln!(out, "<name>{}</name>", self.year);
        let _ = writeln!(
            out,
            "<description>omitted_cities={}</description>",
            self.omitted_cities
        );
        for color in [NodeColor::Red, NodeColor::Orange] {
            let _ = writeln!(
                out,
                "<Style id=\"{name}\"><IconStyle><color>{c}</color></IconStyle></Style>",
                name = color.name(),
                c = color.kml()
            );
        }
        out.push_str("<Style id=\"link\"><LineStyle><color>ff0000ff</color><width>1</width></LineStyle></Style>\n");

        for f in &self.features {
            match f {
                GeoFeature::City {
                    key,
                    at,
                    papers,
                    color,
                } => {
                    let _ = writeln!(
                        out,
                        "<Placemark><name>{}</name><description>papers={}</description>\
                         <styleUrl>#{}</styleUrl><Point><coordinates>{},{},0</coordinates></Point></Placemark>",
                        xml_escape(&key.to_string()),
                        papers,
                        color.name(),
                        at.lon,
                        at.lat
                    );
                }
                GeoFeature::Link {
                    source,
                    target,
                    from,
                    to,
                    weight,
                } => {
                    let _ = writeln!(
                        out,
                        "<Placemark><name>{} - {}</name><description>weight={}</description>\
                         <styleUrl>#link</styleUrl><LineString><tessellate>1</tessellate>\
                         <coordinates>{},{},0 {},{},0</coordinates></LineString></Placemark>",
                        xml_escape(&source.to_string()),
                        xml_escape(&target.to_string()),
                        weight,
                        from.lon,
                        from.lat,
                        to.lon,
                        to.lat
                    );
                }
            }
        }
        out.push_str("</Document>\n</kml>\n");
        out.into_bytes()
    }
}

/// Display radius `log2(papers + 1)`.
pub fn node_radius(papers: u32) -> f64 {
    (f64::from(papers) + 1.0).log2()
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Serializes a network as a map overlay in the given format.
pub fn emit_geo(net: &CityYearNetwork, format: GeoFormat) -> Vec<u8> {
    let overlay = GeoOverlay::from_network(net);
    match format {
        GeoFormat::GeoJson => overlay.to_geojson(),
        GeoFormat::Kml => overlay.to_kml(),
    }
}
