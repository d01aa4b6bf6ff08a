use thiserror::Error;

use super::address::strip_reprint_prefix;
use super::{AddressEntry, PublicationRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("end-of-file tag at byte {offset} closes a record that has no ER tag")]
    UnterminatedRecord { offset: usize },
    #[error("input ends at byte {offset} inside a record that has no ER tag")]
    TruncatedRecord { offset: usize },
}

/// Records parsed from one export, with tallies of what was dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    pub records: Vec<PublicationRecord>,
    /// Blocks without a `PY` field.
    pub missing_year: usize,
    /// Blocks whose `PY` is not an integer year after 1800.
    pub invalid_year: usize,
}

impl ParseOutcome {
    pub fn dropped(&self) -> usize {
        self.missing_year + self.invalid_year
    }

    /// Number of `ER`-terminated blocks seen.
    pub fn blocks(&self) -> usize {
        self.records.len() + self.dropped()
    }
}

#[derive(Default)]
struct Block {
    id: Option<String>,
    year: Option<String>,
    addresses: Vec<String>,
    wc: Option<String>,
    sc: Option<String>,
    journal: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Id,
    Year,
    Address,
    Reprint,
    WebCategories,
    SubjectCategories,
    Journal,
    Other,
}

impl Field {
    fn from_tag(tag: &str) -> Self {
        match tag {
            "UT" => Field::Id,
            "PY" => Field::Year,
            "C1" => Field::Address,
            "RP" => Field::Reprint,
            "WC" => Field::WebCategories,
            "SC" => Field::SubjectCategories,
            "SO" => Field::Journal,
            _ => Field::Other,
        }
    }
}

/// Parses a tagged-field export into records.
///
/// Invalid UTF-8 is replaced rather than rejected. Unknown tags are skipped.
/// A record missing `PY`, or with a non-integer `PY`, is dropped and counted.
pub fn parse_records(input: &[u8]) -> Result<ParseOutcome, ParseError> {
    let mut outcome = ParseOutcome::default();
    let mut block = Block::default();
    let mut open = false;
    let mut field = Field::Other;

    let mut offset = 0usize;
    for raw_line in input.split_inclusive(|&b| b == b'\n') {
        let line_offset = offset;
        offset += raw_line.len();

        let text = String::from_utf8_lossy(raw_line);
        let line = text.trim_end_matches(['\n', '\r']);
        let line = if line_offset == 0 {
            line.trim_start_matches('\u{feff}')
        } else {
            line
        };
        if line.trim().is_empty() {
            continue;
        }

        if let Some((tag, value)) = split_tag(line) {
            match tag {
                "ER" => {
                    finish_block(std::mem::take(&mut block), &mut outcome);
                    open = false;
                    field = Field::Other;
                }
                "EF" => {
                    if open {
                        return Err(ParseError::UnterminatedRecord {
                            offset: line_offset,
                        });
                    }
                    return Ok(outcome);
                }
                // File-level header lines.
                "FN" | "VR" if !open => field = Field::Other,
                _ => {
                    open = true;
                    field = Field::from_tag(tag);
                    push_value(&mut block, field, value);
                }
            }
        } else if open {
            push_value(&mut block, field, line.trim());
        }
    }

    if open {
        return Err(ParseError::TruncatedRecord { offset });
    }
    Ok(outcome)
}

/// Splits `"PY 2009"` into `("PY", "2009")`. Continuation lines start with
/// whitespace and never match.
fn split_tag(line: &str) -> Option<(&str, &str)> {
    let bytes = line.as_bytes();
    if bytes.len() < 2 {
        return None;
    }
    let tag_ok = bytes[0].is_ascii_uppercase()
        && (bytes[1].is_ascii_uppercase() || bytes[1].is_ascii_digit());
    if !tag_ok {
        return None;
    }
    match bytes.get(2) {
        None => Some((&line[..2], "")),
        Some(b' ') | Some(b'\t') => Some((&line[..2], line[3..].trim())),
        Some(_) => None,
    }
}

fn push_value(block: &mut Block, field: Field, value: &str) {
    fn append(slot: &mut Option<String>, value: &str, sep: &str) {
        match slot {
            Some(existing) if !value.is_empty() => {
                existing.push_str(sep);
                existing.push_str(value);
            }
            Some(_) => {}
            None => *slot = Some(value.to_string()),
        }
    }

    match field {
        Field::Id => append(&mut block.id, value, ""),
        Field::Year => append(&mut block.year, value, " "),
        Field::Journal => append(&mut block.journal, value, " "),
        Field::WebCategories => append(&mut block.wc, value, " "),
        Field::SubjectCategories => append(&mut block.sc, value, " "),
        // One address per line, tagged or continued.
        Field::Address if !value.is_empty() => block.addresses.push(value.to_string()),
        Field::Reprint if !value.is_empty() => {
            let stripped = strip_reprint_prefix(value);
            if !stripped.is_empty() {
                block.addresses.push(stripped.to_string());
            }
        }
        _ => {}
    }
}

fn finish_block(block: Block, outcome: &mut ParseOutcome) {
    let Some(year_text) = block.year else {
        outcome.missing_year += 1;
        return;
    };
    let year = match year_text.trim().parse::<i32>() {
        Ok(y) if y > 1800 => y,
        _ => {
            outcome.invalid_year += 1;
            return;
        }
    };

    let mut addresses: Vec<AddressEntry> = Vec::with_capacity(block.addresses.len());
    for raw in block.addresses {
        let raw = raw.trim_end_matches(['.', ' ']).to_string();
        if raw.is_empty() || addresses.iter().any(|a| a.raw == raw) {
            continue;
        }
        addresses.push(AddressEntry::new(raw));
    }

    // Web of Science categories are the journal-level subject categories;
    // research areas (SC) stand in only when WC is absent.
    let category_text = block.wc.or(block.sc).unwrap_or_default();
    let mut categories: Vec<String> = Vec::new();
    for cat in category_text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        if !categories.iter().any(|c| c == cat) {
            categories.push(cat.to_string());
        }
    }

    outcome.records.push(PublicationRecord {
        id: block.id.unwrap_or_default(),
        year,
        addresses,
        categories,
        journal: block.journal.unwrap_or_default(),
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_ADDRESSES: &str = "FN Thomson Reuters Web of Science\nVR 1.0\n\
PT J\n\
UT WOS:000001\n\
SO CELL\n\
C1 Univ Massachusetts, Sch Med, Worcester, MA 01605 USA.\n   \
EPFL, CH-1015 Lausanne, Switzerland.\n\
WC Biochemistry & Molecular Biology; Cell Biology\n\
PY 2009\n\
ER\n\nEF\n";

    #[test]
    fn block_with_two_addresses_and_categories() {
        let out = parse_records(TWO_ADDRESSES.as_bytes()).unwrap();
        assert_eq!(out.records.len(), 1);
        let rec = &out.records[0];
        assert_eq!(rec.year, 2009);
        assert_eq!(rec.id, "WOS:000001");
        assert_eq!(rec.journal, "CELL");
        assert_eq!(rec.addresses.len(), 2);
        assert_eq!(
            rec.categories,
            vec!["Biochemistry & Molecular Biology", "Cell Biology"]
        );
        assert_eq!(rec.cities().len(), 2);
    }

    #[test]
    fn missing_year_is_dropped_and_counted() {
        let input = "PT J\nUT WOS:1\nC1 Univ X, Paris, France\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.missing_year, 1);
        assert_eq!(out.blocks(), 1);
    }

    #[test]
    fn non_integer_year_is_dropped() {
        let input = "PY 20x9\nER\nPY 1700\nER\nPY 2001\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.invalid_year, 2);
    }

    #[test]
    fn empty_input_ending_in_ef() {
        assert_eq!(parse_records(b"EF\n").unwrap(), ParseOutcome::default());
        assert_eq!(parse_records(b"").unwrap(), ParseOutcome::default());
        assert_eq!(
            parse_records(b"FN Thomson Reuters Web of Science\nVR 1.0\nEF").unwrap(),
            ParseOutcome::default()
        );
    }

    #[test]
    fn ef_inside_record_reports_offset() {
        let input = b"PY 2001\nER\nPY 2002\nEF\n";
        assert_eq!(
            parse_records(input),
            Err(ParseError::UnterminatedRecord { offset: 19 })
        );
    }

    #[test]
    fn truncated_record_reports_end_offset() {
        let input = b"PY 2001\nSO X\n";
        assert_eq!(
            parse_records(input),
            Err(ParseError::TruncatedRecord { offset: 13 })
        );
    }

    #[test]
    fn duplicate_addresses_collapse() {
        let input = "PY 2005\nC1 Univ A, Basel, Switzerland.\n   Univ A, Basel, Switzerland\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert_eq!(out.records[0].addresses.len(), 1);
    }

    #[test]
    fn reprint_address_is_parsed_like_c1() {
        let input = "PY 2005\nRP Smith, J (reprint author), Univ A, Basel, Switzerland.\n\
C1 Univ B, Bern, Switzerland.\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        let rec = &out.records[0];
        assert_eq!(rec.addresses.len(), 2);
        assert_eq!(rec.addresses[0].raw, "Univ A, Basel, Switzerland");
        assert_eq!(rec.cities()[0].city(), "BASEL");
    }

    #[test]
    fn sc_used_only_without_wc() {
        let input = "PY 2005\nSC Chemistry\nER\nPY 2005\nSC Chemistry\nWC Chemistry, Physical\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert_eq!(out.records[0].categories, vec!["Chemistry"]);
        assert_eq!(out.records[1].categories, vec!["Chemistry, Physical"]);
    }

    #[test]
    fn categories_continue_across_lines() {
        let input = "PY 2005\nWC Biochemistry & Molecular Biology; Cell\n   Biology; Genetics & Heredity\nER\nEF\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert_eq!(
            out.records[0].categories,
            vec![
                "Biochemistry & Molecular Biology",
                "Cell Biology",
                "Genetics & Heredity"
            ]
        );
    }

    #[test]
    fn invalid_utf8_is_replaced() {
        let input = b"PY 2003\nC1 Univ Z\xfcrich, Zurich, Switzerland\nER\nEF\n";
        let out = parse_records(input).unwrap();
        assert_eq!(out.records.len(), 1);
        assert!(out.records[0].addresses[0].raw.contains('\u{fffd}'));
    }

    #[test]
    fn crlf_line_endings() {
        let input = "PY 2003\r\nC1 Univ A, Basel, Switzerland\r\nER\r\nEF\r\n";
        let out = parse_records(input.as_bytes()).unwrap();
        assert_eq!(out.records[0].cities()[0].to_string(), "BASEL, SWITZERLAND");
    }
}
