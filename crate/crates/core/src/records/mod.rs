//! Bibliographic record ingestion.
//!
//! Records arrive as tagged-field plain-text exports (two-letter tags in
//! columns 1-2, indented continuation lines, `ER` closing a record and `EF`
//! closing the file). Each record keeps its addresses both raw and resolved to
//! a [`CityKey`], the unit every geographic indicator aggregates on.

mod address;
mod tagged;

pub use address::{extract_city, CityKey};
pub use tagged::{parse_records, ParseError, ParseOutcome};

use serde::Serialize;

/// One address line of a record, with its resolved city (if any).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AddressEntry {
    pub raw: String,
    /// `None` when the address could not be resolved to a city.
    pub city_key: Option<CityKey>,
}

impl AddressEntry {
    pub fn new(raw: impl Into<String>) -> Self {
        let raw = raw.into();
        let city_key = extract_city(&raw);
        Self { raw, city_key }
    }
}

/// One parsed bibliographic record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublicationRecord {
    /// Accession identifier (`UT`), empty when the export omits it.
    pub id: String,
    pub year: i32,
    pub addresses: Vec<AddressEntry>,
    /// Subject categories in export order, duplicates removed.
    pub categories: Vec<String>,
    pub journal: String,
}

impl PublicationRecord {
    /// Distinct resolved cities mentioned by this record, sorted.
    pub fn cities(&self) -> Vec<CityKey> {
        let mut keys: Vec<CityKey> = self
            .addresses
            .iter()
            .filter_map(|a| a.city_key.clone())
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }

    pub fn unresolved_addresses(&self) -> usize {
        self.addresses.iter().filter(|a| a.city_key.is_none()).count()
    }
}
