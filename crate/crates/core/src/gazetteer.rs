//! City coordinates keyed by [`CityKey`].

use std::collections::BTreeMap;
use std::io::Read;

use thiserror::Error;

use crate::geo::GeoPoint;
use crate::records::CityKey;

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("gazetteer CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("gazetteer header must be `city,country,lat,lon`, found `{0}`")]
    Header(String),
}

/// A row that was not loaded, with its 1-based line number.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedRow {
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    coords: BTreeMap<CityKey, GeoPoint>,
    /// Keys that appeared more than once; the last row won.
    pub duplicates: Vec<(u64, CityKey)>,
    pub rejected: Vec<RejectedRow>,
}

impl Gazetteer {
    pub fn get(&self, key: &CityKey) -> Option<GeoPoint> {
        self.coords.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn insert(&mut self, key: CityKey, point: GeoPoint) -> Option<GeoPoint> {
        self.coords.insert(key, point)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CityKey, &GeoPoint)> {
        self.coords.iter()
    }
}

impl FromIterator<(CityKey, GeoPoint)> for Gazetteer {
    fn from_iter<T: IntoIterator<Item = (CityKey, GeoPoint)>>(iter: T) -> Self {
        Self {
            coords: iter.into_iter().collect(),
            ..Self::default()
        }
    }
}

/// Reads a `city,country,lat,lon` CSV.
///
/// Rows with unparsable or out-of-range coordinates are rejected
/// individually; duplicate keys keep the last row.
pub fn load_gazetteer<R: Read>(input: R) -> Result<Gazetteer, GazetteerError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);

    let header = reader.headers()?.clone();
    let expected = ["city", "country", "lat", "lon"];
    if header.len() < 4
        || !header
            .iter()
            .zip(expected)
            .all(|(h, e)| h.trim_start_matches('\u{feff}').eq_ignore_ascii_case(e))
    {
        return Err(GazetteerError::Header(
            header.iter().collect::<Vec<_>>().join(","),
        ));
    }

    let mut gazetteer = Gazetteer::default();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let reject = |reason: String| RejectedRow { line, reason };

        if row.len() < 4 {
            gazetteer
                .rejected
                .push(reject(format!("expected 4 fields, found {}", row.len())));
            continue;
        }
        let Some(key) = CityKey::new(&row[0], &row[1]) else {
            gazetteer.rejected.push(reject("blank city or country".into()));
            continue;
        };
        let (Ok(lat), Ok(lon)) = (row[2].parse::<f64>(), row[3].parse::<f64>()) else {
            gazetteer
                .rejected
                .push(reject(format!("unparsable coordinates `{}`,`{}`", &row[2], &row[3])));
            continue;
        };
        let Some(point) = GeoPoint::new(lat, lon) else {
            gazetteer
                .rejected
                .push(reject(format!("coordinates out of range: lat={lat}, lon={lon}")));
            continue;
        };
        if gazetteer.insert(key.clone(), point).is_some() {
            gazetteer.duplicates.push((line, key));
        }
    }
    Ok(gazetteer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_read() {
        let g = load_gazetteer("city,country,lat,lon\nLAUSANNE,SWITZERLAND,46.52,6.63\n".as_bytes())
            .unwrap();
        let key = CityKey::new("LAUSANNE", "SWITZERLAND").unwrap();
        assert_eq!(g.get(&key), Some(GeoPoint { lat: 46.52, lon: 6.63 }));
    }

    #[test]
    fn duplicate_key_keeps_last_row() {
        let csv = "city,country,lat,lon\nBASEL,SWITZERLAND,1,1\nBasel,Switzerland,47.56,7.59\n";
        let g = load_gazetteer(csv.as_bytes()).unwrap();
        let key = CityKey::new("BASEL", "SWITZERLAND").unwrap();
        assert_eq!(g.get(&key), Some(GeoPoint { lat: 47.56, lon: 7.59 }));
        assert_eq!(g.duplicates, vec![(3, key)]);
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn out_of_range_row_is_rejected_with_line() {
        let csv = "city,country,lat,lon\nA,B,10,10\nNOWHERE,X,95,0\n";
        let g = load_gazetteer(csv.as_bytes()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.rejected.len(), 1);
        assert_eq!(g.rejected[0].line, 3);
    }

    #[test]
    fn bad_header() {
        assert!(matches!(
            load_gazetteer("name,lat,lon\nA,1,2\n".as_bytes()),
            Err(GazetteerError::Header(_))
        ));
    }
}
