//! Per-year intercity coauthorship networks.
//!
//! A city enters the network for a year when at least `min_city_papers`
//! records of that year mention it (2 by default: cities seen only once are
//! left out). Two cities are linked by one unit of weight for every record
//! listing addresses in both. Cities without gazetteer coordinates stay in
//! the graph but are skipped by distance measures and maps.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::gazetteer::Gazetteer;
use crate::geo::GeoPoint;
use crate::graph::Graph;
use crate::records::{CityKey, PublicationRecord};

pub const DEFAULT_MIN_CITY_PAPERS: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CityNode {
    pub key: CityKey,
    /// Records of the year mentioning this city at least once.
    pub papers: u32,
    pub coord: Option<GeoPoint>,
}

/// Undirected weighted edge between node indices, `source < target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CityEdge {
    pub source: usize,
    pub target: usize,
    /// Number of records coauthored from both cities.
    pub weight: u32,
}

/// Counts gathered while building a network.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildStats {
    pub records: usize,
    /// Records with at least one resolved city.
    pub located_records: usize,
    pub unresolved_addresses: usize,
    /// Cities dropped by the minimum-papers rule.
    pub excluded_cities: usize,
    /// Retained cities missing from the gazetteer.
    pub ungeocoded_cities: usize,
}

/// The intercity network of one year. Nodes are sorted by [`CityKey`];
/// edges are sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CityYearNetwork {
    pub year: i32,
    nodes: Vec<CityNode>,
    edges: Vec<CityEdge>,
    graph: Graph,
    pub stats: BuildStats,
}

impl CityYearNetwork {
    pub fn empty(year: i32) -> Self {
        Self {
            year,
            nodes: Vec::new(),
            edges: Vec::new(),
            graph: Graph::empty(0),
            stats: BuildStats::default(),
        }
    }

    pub fn nodes(&self) -> &[CityNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[CityEdge] {
        &self.edges
    }

    /// Binary adjacency, indexed like [`nodes`](Self::nodes).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_index(&self, key: &CityKey) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.key.cmp(key)).ok()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<u32> {
        let (source, target) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.source, e.target).cmp(&(source, target)))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Indices of nodes with coordinates.
    pub fn geocoded(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.coord.is_some())
            .map(|(i, _)| i)
    }
}

/// Builds the network of `year` with the default two-paper threshold.
pub fn build_network(
    records: &[PublicationRecord],
    year: i32,
    gazetteer: &Gazetteer,
) -> CityYearNetwork {
    build_network_with_threshold(records, year, gazetteer, DEFAULT_MIN_CITY_PAPERS)
}

/// Builds the network of `year`, keeping cities mentioned by at least
/// `min_city_papers` records. Records of other years are ignored.
///
/// The threshold is applied once, after counting; a retained city keeps its
/// node even if all its partners are excluded.
pub fn build_network_with_threshold(
    records: &[PublicationRecord],
    year: i32,
    gazetteer: &Gazetteer,
    min_city_papers: u32,
) -> CityYearNetwork {
    let mut stats = BuildStats::default();
    let mut papers: BTreeMap<CityKey, u32> = BTreeMap::new();
    let mut pair_weights: BTreeMap<(CityKey, CityKey), u32> = BTreeMap::new();

    for record in records.iter().filter(|r| r.year == year) {
        stats.records += 1;
        stats.unresolved_addresses += record.unresolved_addresses();
        let cities = record.cities();
        if cities.is_empty() {
            continue;
        }
        stats.located_records += 1;
        for (i, a) in cities.iter().enumerate() {
            *papers.entry(a.clone()).or_insert(0) += 1;
            for b in &cities[i + 1..] {
                *pair_weights.entry((a.clone(), b.clone())).or_insert(0) += 1;
            }
        }
    }

    let nodes: Vec<CityNode> = papers
        .into_iter()
        .filter_map(|(key, count)| {
            if count < min_city_papers {
                stats.excluded_cities += 1;
                return None;
            }
            let coord = gazetteer.get(&key);
            if coord.is_none() {
                stats.ungeocoded_cities += 1;
            }
            Some(CityNode {
                key,
                papers: count,
                coord,
            })
        })
        .collect();

    let index: BTreeMap<&CityKey, usize> =
        nodes.iter().enumerate().map(|(i, n)| (&n.key, i)).collect();
    // Pairs were generated from sorted city lists, so a < b in key order and
    // therefore in index order.
    let edges: Vec<CityEdge> = pair_weights
        .iter()
        .filter_map(|((a, b), &weight)| {
            Some(CityEdge {
                source: *index.get(a)?,
                target: *index.get(b)?,
                weight,
            })
        })
        .collect();

    let graph = Graph::from_edges(nodes.len(), edges.iter().map(|e| (e.source, e.target)));
    CityYearNetwork {
        year,
        nodes,
        edges,
        graph,
        stats,
    }
}

/// Partitions records by year; years without records are absent.
pub fn slice_by_year<I>(records: I) -> BTreeMap<i32, Vec<PublicationRecord>>
where
    I: IntoIterator<Item = PublicationRecord>,
{
    let mut by_year: BTreeMap<i32, Vec<PublicationRecord>> = BTreeMap::new();
    for record in records {
        by_year.entry(record.year).or_default().push(record);
    }
    by_year
}

/// Writes the network as a Pajek `.net` file.
///
/// Vertex coordinates are longitude/latitude rescaled to Pajek's unit square
/// (`x = (lon + 180) / 360`, `y = (90 − lat) / 180`); coordinate-less cities
/// are listed without them.
pub fn to_pajek(net: &CityYearNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", net.nodes.len());
    for (i, node) in net.nodes.iter().enumerate() {
        let label = node.key.to_string().replace('"', "'");
        match node.coord {
            Some(c) => {
                let x = (c.lon + 180.0) / 360.0;
                let y = (90.0 - c.lat) / 180.0;
                let _ = writeln!(out, "{} \"{}\" {:.6} {:.6} 0.5", i + 1, label, x, y);
            }
            None => {
                let _ = writeln!(out, "{} \"{}\"", i + 1, label);
            }
        }
    }
    let _ = writeln!(out, "*Edges");
    for e in &net.edges {
        let _ = writeln!(out, "{} {} {}", e.source + 1, e.target + 1, e.weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::AddressEntry;

    fn rec(year: i32, cities: &[&str]) -> PublicationRecord {
        PublicationRecord {
            id: String::new(),
            year,
            addresses: cities
                .iter()
                .map(|c| AddressEntry::new(format!("Univ, {c}ton, Testland")))
                .collect(),
            categories: Vec::new(),
            journal: String::new(),
        }
    }

    fn key(c: &str) -> CityKey {
        CityKey::new(&format!("{c}ton"), "TESTLAND").unwrap()
    }

    fn gaz(cities: &[&str]) -> Gazetteer {
        cities
            .iter()
            .enumerate()
            .map(|(i, c)| (key(c), GeoPoint::new(i as f64, i as f64).unwrap()))
            .collect()
    }

    #[test]
    fn two_records_same_pair() {
        let records = vec![rec(2000, &["A", "B"]), rec(2000, &["A", "B"])];
        let net = build_network(&records, 2000, &gaz(&["A", "B"]));
        assert_eq!(net.nodes().len(), 2);
        assert!(net.nodes().iter().all(|n| n.papers == 2));
        assert_eq!(net.edges(), &[CityEdge { source: 0, target: 1, weight: 2 }]);
    }

    #[test]
    fn singleton_city_is_excluded_with_its_edges() {
        let records = vec![rec(2000, &["A", "B"]), rec(2000, &["A"])];
        let net = build_network(&records, 2000, &gaz(&["A", "B"]));
        assert_eq!(net.nodes().len(), 1);
        assert_eq!(net.nodes()[0].key, key("A"));
        assert_eq!(net.nodes()[0].papers, 2);
        assert!(net.edges().is_empty());
        assert_eq!(net.stats.excluded_cities, 1);
    }

    #[test]
    fn repeated_city_in_one_record() {
        let records = vec![rec(2000, &["A", "A", "B"]), rec(2000, &["A", "B"])];
        let net = build_network(&records, 2000, &gaz(&["A", "B"]));
        assert_eq!(net.nodes()[0].papers, 2);
        assert_eq!(net.weight(0, 1), Some(2));
        assert_eq!(net.weight(0, 0), None);
    }

    #[test]
    fn same_city_institutions_make_no_edge() {
        let mut r = rec(2000, &["A"]);
        r.addresses.push(AddressEntry::new("Other Inst, Aton, Testland"));
        let net = build_network(&[r.clone(), r], 2000, &gaz(&["A"]));
        assert_eq!(net.nodes().len(), 1);
        assert!(net.edges().is_empty());
    }

    #[test]
    fn ungeocoded_city_is_kept_and_flagged() {
        let records = vec![rec(2000, &["A", "Z"]), rec(2000, &["A", "Z"])];
        let net = build_network(&records, 2000, &gaz(&["A"]));
        assert_eq!(net.nodes().len(), 2);
        assert_eq!(net.stats.ungeocoded_cities, 1);
        assert_eq!(net.geocoded().collect::<Vec<_>>(), vec![0]);
        assert_eq!(net.graph().edge_count(), 1);
    }

    #[test]
    fn other_years_are_ignored() {
        let records = vec![rec(2000, &["A"]), rec(2001, &["A"])];
        let net = build_network(&records, 2000, &gaz(&["A"]));
        assert!(net.nodes().is_empty());
        assert_eq!(net.stats.records, 1);
    }

    #[test]
    fn empty_records_give_empty_network() {
        let net = build_network(&[], 1999, &Gazetteer::default());
        assert_eq!(net, CityYearNetwork::empty(1999));
    }

    #[test]
    fn slicing() {
        let sliced = slice_by_year(vec![rec(1998, &[]), rec(1998, &[]), rec(2002, &[])]);
        assert_eq!(sliced.len(), 2);
        assert_eq!(sliced[&1998].len(), 2);
        assert_eq!(sliced[&2002].len(), 1);
        assert!(slice_by_year(Vec::new()).is_empty());
        assert_eq!(slice_by_year(vec![rec(2001, &[]), rec(2001, &[])]).len(), 1);
    }

    #[test]
    fn pajek_export() {
        let records = vec![rec(2000, &["A", "B"]), rec(2000, &["A", "B", "C"]), rec(2000, &["C"])];
        let net = build_network(&records, 2000, &gaz(&["A", "B"]));
        let text = to_pajek(&net);
        assert_eq!(
            text,
            "*Vertices 3\n\
             1 \"ATON, TESTLAND\" 0.500000 0.500000 0.5\n\
             2 \"BTON, TESTLAND\" 0.502778 0.494444 0.5\n\
             3 \"CTON, TESTLAND\"\n\
             *Edges\n\
             1 2 2\n\
             1 3 1\n\
             2 3 1\n"
        );
    }
}
