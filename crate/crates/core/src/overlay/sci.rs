use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::basemap::Basemap;
use crate::records::PublicationRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SciEntry {
    pub category: String,
    /// Layout coordinates exactly as written in the basemap.
    pub x: String,
    pub y: String,
    pub count: u64,
}

/// Category counts of one year on a basemap. Records in several categories
/// count once in each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SciOverlay {
    pub year: i32,
    pub basemap_id: String,
    /// One entry per basemap category, in basemap order, zero counts included.
    pub entries: Vec<SciEntry>,
    /// Categories absent from the basemap, with their counts.
    pub unmatched: BTreeMap<String, u64>,
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

impl SciOverlay {
    /// Counts the categories of `year`'s records, falling back to the
    /// basemap's journal table for records without category tags.
    pub fn from_records(records: &[PublicationRecord], basemap: &Basemap, year: i32) -> Self {
        let mut counts = vec![0u64; basemap.labels().len()];
        let mut unmatched = BTreeMap::new();
        for record in records.iter().filter(|r| r.year == year) {
            let mut cats = basemap.categories_for(record);
            cats.sort();
            cats.dedup();
            for cat in cats {
                match basemap.position(&cat) {
                    Some(i) => counts[i] += 1,
                    None => *unmatched.entry(cat).or_insert(0) += 1,
                }
            }
        }
        let entries = basemap
            .labels()
            .iter()
            .zip(basemap.layout())
            .zip(counts)
            .map(|((label, point), count)| SciEntry {
                category: label.clone(),
                x: point.x.clone(),
                y: point.y.clone(),
                count,
            })
            .collect();
        Self {
            year,
            basemap_id: basemap.id.clone(),
            entries,
            unmatched,
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// `category,x,y,count` rows for categories with a non-zero count.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv_writer();
        w.write_record(["category", "x", "y", "count"])
            .expect("in-memory write");
        for e in self.entries.iter().filter(|e| e.count > 0) {
            w.write_record([&e.category, &e.x, &e.y, &e.count.to_string()])
                .expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    /// `category,count` rows for categories missing from the basemap.
    pub fn unmatched_csv(&self) -> Vec<u8> {
        let mut w = csv_writer();
        w.write_record(["category", "count"]).expect("in-memory write");
        for (cat, count) in &self.unmatched {
            w.write_record([cat.as_str(), &count.to_string()])
                .expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    /// Pajek network of all basemap categories at their layout positions,
    /// without edges.
    pub fn to_pajek_net(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "*Vertices {}", self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} \"{}\" {} {}",
                i + 1,
                e.category.replace('"', "'"),
                e.x,
                e.y
            );
        }
        out
    }

    /// Pajek vector of counts, aligned with [`to_pajek_net`](Self::to_pajek_net).
    pub fn to_pajek_vec(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "*Vertices {}", self.entries.len());
        for e in &self.entries {
            let _ = writeln!(out, "{}", e.count);
        }
        out
    }
}

/// The year's science overlay as CSV.
pub fn emit_sci(records: &[PublicationRecord], basemap: &Basemap, year: i32) -> Vec<u8> {
    SciOverlay::from_records(records, basemap, year).to_csv()
}
