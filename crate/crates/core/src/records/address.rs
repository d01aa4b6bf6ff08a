use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Postal abbreviations that can close a US address without an explicit
/// `USA` segment.
const US_STATES: [&str; 52] = [
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA", "HI", "IA", "ID", "IL",
    "IN", "KS", "KY", "LA", "MA", "MD", "ME", "MI", "MN", "MO", "MS", "MT", "NC", "ND", "NE",
    "NH", "NJ", "NM", "NV", "NY", "OH", "OK", "OR", "PA", "PR", "RI", "SC", "SD", "TN", "TX",
    "UT", "VA", "VT", "WA", "WI", "WV", "WY",
];

/// City-level identity of an address: uppercase city and country names.
///
/// Keys order by country first, then city.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CityKey {
    city: String,
    country: String,
}

impl CityKey {
    /// Builds a key from free-form parts, normalizing case and whitespace.
    /// Returns `None` when either part is blank.
    pub fn new(city: &str, country: &str) -> Option<Self> {
        let city = normalize(city);
        let country = normalize(country);
        if city.is_empty() || country.is_empty() {
            return None;
        }
        Some(Self { city, country })
    }

    pub fn city(&self) -> &str {
        &self.city
    }

    pub fn country(&self) -> &str {
        &self.country
    }
}

impl Ord for CityKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.country
            .cmp(&other.country)
            .then_with(|| self.city.cmp(&other.city))
    }
}

impl PartialOrd for CityKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.city, self.country)
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_uppercase()
}

/// Resolves an institutional address to its city.
///
/// The last comma segment names the country, except for US addresses which
/// end in `ST 12345 USA`, `ST 12345, USA` or just `ST 12345`. The city is the
/// segment before the country (or before the state/province segment) with
/// postcode tokens removed. Addresses with fewer than two segments are
/// unresolvable.
pub fn extract_city(raw: &str) -> Option<CityKey> {
    let body = strip_trailing_period(strip_author_brackets(raw.trim()));
    let segments: Vec<&str> = body
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if segments.len() < 2 {
        return None;
    }

    let last = segments[segments.len() - 1];
    let last_tokens: Vec<&str> = last.split_whitespace().collect();
    let is_us = last_tokens
        .last()
        .is_some_and(|t| t.eq_ignore_ascii_case("USA"))
        || is_state_zip(&last_tokens);
    let country = if is_us { "USA" } else { last };
    let mut city_idx = segments.len() - 2;

    // Step over state/province segments ("MA 01605", "ON M5S 1A8") toward
    // the city name.
    loop {
        let segment = segments[city_idx];
        let cleaned = strip_postcodes(segment);
        if !cleaned.is_empty() && !is_region_code(&cleaned) && !is_region_postcode(segment) {
            return CityKey::new(&cleaned, country);
        }
        if city_idx == 0 {
            return None;
        }
        city_idx -= 1;
    }
}

/// Removes a leading `[Author, A; Author, B]` group.
fn strip_author_brackets(s: &str) -> &str {
    if let Some(rest) = s.strip_prefix('[') {
        if let Some(end) = rest.find(']') {
            return rest[end + 1..].trim_start();
        }
    }
    s
}

fn strip_trailing_period(s: &str) -> &str {
    s.trim_end_matches(|c: char| c == '.' || c.is_whitespace())
}

/// Removes the `Name, X (reprint author), ` lead-in of reprint address lines.
pub(crate) fn strip_reprint_prefix(s: &str) -> &str {
    const MARKERS: [&str; 2] = ["(reprint author)", "(corresponding author)"];
    for marker in MARKERS {
        if let Some(pos) = s.find(marker) {
            let rest = &s[pos + marker.len()..];
            return rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        }
    }
    s
}

/// `CA`, `CA 94305`, `CA 94305-1234`.
fn is_state_zip(tokens: &[&str]) -> bool {
    match tokens {
        [state] => US_STATES.contains(state),
        [state, zip] => US_STATES.contains(state) && is_zip(zip),
        _ => false,
    }
}

fn is_zip(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_digit() || c == '-')
}

fn is_region_code(s: &str) -> bool {
    s.len() <= 2 && s.chars().all(|c| c.is_ascii_uppercase())
}

/// Australian-style `NSW 2006` or `Vic 3010`: a short state abbreviation
/// followed by a postcode.
fn is_region_postcode(segment: &str) -> bool {
    match segment.split_whitespace().collect::<Vec<_>>()[..] {
        [region, code] => {
            region.len() <= 3
                && region.chars().all(|c| c.is_ascii_alphabetic())
                && code.chars().all(|c| c.is_ascii_digit())
        }
        _ => false,
    }
}

/// Drops tokens carrying digits (`CH-1015`, `01605`, `WC1E`) and the letter
/// pair of Dutch-style `1012 CX` postcodes.
fn strip_postcodes(segment: &str) -> String {
    let mut kept = Vec::new();
    let mut after_numeric = false;
    for token in segment.split_whitespace() {
        if token.chars().any(|c| c.is_ascii_digit()) {
            after_numeric = token.chars().all(|c| c.is_ascii_digit());
            continue;
        }
        if after_numeric && token.len() == 2 && token.chars().all(|c| c.is_ascii_uppercase()) {
            after_numeric = false;
            continue;
        }
        after_numeric = false;
        kept.push(token);
    }
    kept.join(" ")
}
