//! Subject-category basemap bundles.
//!
//! A bundle is a directory holding:
//!
//! * `categories.txt`: ordered labels, one per line;
//! * `cosine.csv`: square similarity matrix, header row = labels (rows may
//!   carry their label as a leading column);
//! * `layout.csv`: `label,x,y` map positions;
//! * `journal_categories.csv` (optional): `journal,categories` with
//!   semicolon-separated categories, used for records without category tags.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::diversity::{cognitive_distances, DistanceMatrix, MATRIX_TOLERANCE};
use crate::records::PublicationRecord;

pub const CATEGORIES_FILE: &str = "categories.txt";
pub const COSINE_FILE: &str = "cosine.csv";
pub const LAYOUT_FILE: &str = "layout.csv";
pub const JOURNALS_FILE: &str = "journal_categories.csv";

/// One problem found in a basemap bundle.
#[derive(Debug, Clone, PartialEq)]
pub enum BasemapIssue {
    MissingFile(String),
    Unreadable { file: String, message: String },
    DuplicateLabel { file: String, label: String },
    CosineHeader { index: usize, expected: String, found: String },
    CosineShape { row: usize, expected: usize, found: usize },
    CosineValue { row: usize, col: usize, text: String },
    Asymmetric { a: String, b: String, ab: f64, ba: f64 },
    OutOfRange { a: String, b: String, value: f64 },
    Diagonal { label: String, value: f64 },
    LayoutMissing(String),
    LayoutUnknown(String),
    LayoutValue { label: String, text: String },
}

impl fmt::Display for BasemapIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BasemapIssue::*;
        match self {
            MissingFile(file) => write!(f, "missing file {file}"),
            Unreadable { file, message } => write!(f, "{file}: {message}"),
            DuplicateLabel { file, label } => write!(f, "{file}: duplicate label `{label}`"),
            CosineHeader {
                index,
                expected,
                found,
            } => write!(
                f,
                "{COSINE_FILE}: column {index} is `{found}`, {CATEGORIES_FILE} has `{expected}`"
            ),
            CosineShape {
                row,
                expected,
                found,
            } => write!(f, "{COSINE_FILE}: row {row} has {found} values, expected {expected}"),
            CosineValue { row, col, text } => {
                write!(f, "{COSINE_FILE}: unparsable value `{text}` at ({row}, {col})")
            }
            Asymmetric { a, b, ab, ba } => {
                write!(f, "{COSINE_FILE}: asymmetric pair ({a}, {b}): {ab} vs {ba}")
            }
            OutOfRange { a, b, value } => {
                write!(f, "{COSINE_FILE}: value {value} at ({a}, {b}) outside [0, 1]")
            }
            Diagonal { label, value } => {
                write!(f, "{COSINE_FILE}: diagonal of `{label}` is {value}, expected 1")
            }
            LayoutMissing(label) => write!(f, "{LAYOUT_FILE}: no position for `{label}`"),
            LayoutUnknown(label) => {
                write!(f, "{LAYOUT_FILE}: `{label}` is not in {CATEGORIES_FILE}")
            }
            LayoutValue { label, text } => {
                write!(f, "{LAYOUT_FILE}: unparsable coordinate `{text}` for `{label}`")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum BasemapError {
    #[error("basemap directory {0} does not exist")]
    NotFound(String),
    #[error("basemap is inconsistent:\n{}", format_issues(.0))]
    Inconsistent(Vec<BasemapIssue>),
}

fn format_issues(issues: &[BasemapIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A category's map position, kept as written in `layout.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutPoint {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone)]
pub struct Basemap {
    pub id: String,
    labels: Vec<String>,
    cosine: Vec<f64>,
    layout: Vec<LayoutPoint>,
    journals: HashMap<String, Vec<String>>,
}

impl Basemap {
    /// Loads and validates a bundle.
    pub fn load(dir: &Path) -> Result<Self, BasemapError> {
        if !dir.is_dir() {
            return Err(BasemapError::NotFound(dir.display().to_string()));
        }
        let (raw, issues) = read_bundle(dir);
        if !issues.is_empty() {
            return Err(BasemapError::Inconsistent(issues));
        }
        let id = dir
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let layout = raw
            .labels
            .iter()
            .map(|l| raw.layout[l].clone())
            .collect();
        Ok(Self {
            id,
            labels: raw.labels,
            cosine: raw.cosine,
            layout,
            journals: raw.journals,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn layout(&self) -> &[LayoutPoint] {
        &self.layout
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `1 − cosine` distances between categories.
    pub fn distances(&self) -> DistanceMatrix {
        cognitive_distances(self.labels.clone(), &self.cosine)
            .expect("cosine matrix validated at load")
    }

    /// The record's own categories, or its journal's when it has none.
    pub fn categories_for(&self, record: &PublicationRecord) -> Vec<String> {
        if !record.categories.is_empty() {
            return record.categories.clone();
        }
        self.journals
            .get(&record.journal.trim().to_uppercase())
            .cloned()
            .unwrap_or_default()
    }
}

/// Checks a bundle without loading it for use. An empty list means the
/// bundle is consistent.
pub fn validate_basemap(dir: &Path) -> Vec<BasemapIssue> {
    if !dir.is_dir() {
        return vec![BasemapIssue::MissingFile(dir.display().to_string())];
    }
    read_bundle(dir).1
}

#[derive(Default)]
struct RawBundle {
    labels: Vec<String>,
    cosine: Vec<f64>,
    layout: BTreeMap<String, LayoutPoint>,
    journals: HashMap<String, Vec<String>>,
}

fn read_text(dir: &Path, file: &str, issues: &mut Vec<BasemapIssue>) -> Option<String> {
    let path = dir.join(file);
    if !path.exists() {
        issues.push(BasemapIssue::MissingFile(file.to_string()));
        return None;
    }
    match fs::read(&path) {
        Ok(bytes) => Some(
            String::from_utf8_lossy(&bytes)
                .trim_start_matches('\u{feff}')
                .to_string(),
        ),
        Err(e) => {
            issues.push(BasemapIssue::Unreadable {
                file: file.to_string(),
                message: e.to_string(),
            });
            None
        }
    }
}

fn csv_rows(text: &str, file: &str, issues: &mut Vec<BasemapIssue>) -> Vec<csv::StringRecord> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for row in reader.records() {
        match row {
            Ok(r) => rows.push(r),
            Err(e) => {
                issues.push(BasemapIssue::Unreadable {
                    file: file.to_string(),
                    message: e.to_string(),
                });
                break;
            }
        }
    }
    rows
}

fn read_bundle(dir: &Path) -> (RawBundle, Vec<BasemapIssue>) {
    let mut issues = Vec::new();
    let mut raw = RawBundle::default();

    if let Some(text) = read_text(dir, CATEGORIES_FILE, &mut issues) {
        let mut seen = HashSet::new();
        for label in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if !seen.insert(label.to_string()) {
                issues.push(BasemapIssue::DuplicateLabel {
                    file: CATEGORIES_FILE.into(),
                    label: label.to_string(),
                });
            }
            raw.labels.push(label.to_string());
        }
    }
    let n = raw.labels.len();

    if let Some(text) = read_text(dir, COSINE_FILE, &mut issues) {
        raw.cosine = read_cosine(&text, &raw.labels, &mut issues);
    }

    if let Some(text) = read_text(dir, LAYOUT_FILE, &mut issues) {
        let rows = csv_rows(&text, LAYOUT_FILE, &mut issues);
        let known: HashSet<&str> = raw.labels.iter().map(String::as_str).collect();
        let has_header = rows
            .first()
            .is_some_and(|r| r.get(0).is_some_and(|c| c.eq_ignore_ascii_case("label")));
        for row in rows.iter().skip(usize::from(has_header)) {
            let label = row.get(0).unwrap_or("").to_string();
            let (x, y) = (row.get(1).unwrap_or(""), row.get(2).unwrap_or(""));
            for text in [x, y] {
                if text.parse::<f64>().is_err() {
                    issues.push(BasemapIssue::LayoutValue {
                        label: label.clone(),
                        text: text.to_string(),
                    });
                }
            }
            if !known.contains(label.as_str()) {
                issues.push(BasemapIssue::LayoutUnknown(label));
                continue;
            }
            let point = LayoutPoint {
                x: x.to_string(),
                y: y.to_string(),
            };
            if raw.layout.insert(label.clone(), point).is_some() {
                issues.push(BasemapIssue::DuplicateLabel {
                    file: LAYOUT_FILE.into(),
                    label,
                });
            }
        }
        for label in &raw.labels {
            if !raw.layout.contains_key(label) {
                issues.push(BasemapIssue::LayoutMissing(label.clone()));
            }
        }
    }

    if dir.join(JOURNALS_FILE).exists() {
        if let Some(text) = read_text(dir, JOURNALS_FILE, &mut issues) {
            let rows = csv_rows(&text, JOURNALS_FILE, &mut issues);
            let has_header = rows
                .first()
                .is_some_and(|r| r.get(0).is_some_and(|c| c.eq_ignore_ascii_case("journal")));
            for row in rows.iter().skip(usize::from(has_header)) {
                let journal = row.get(0).unwrap_or("").trim().to_uppercase();
                if journal.is_empty() {
                    continue;
                }
                let cats = row
                    .get(1)
                    .unwrap_or("")
                    .split(';')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(String::from)
                    .collect();
                raw.journals.insert(journal, cats);
            }
        }
    }

    if raw.cosine.len() == n * n && n > 0 {
        check_cosine(&raw.labels, &raw.cosine, &mut issues);
    }
    (raw, issues)
}

fn read_cosine(text: &str, labels: &[String], issues: &mut Vec<BasemapIssue>) -> Vec<f64> {
    let rows = csv_rows(text, COSINE_FILE, issues);
    let n = labels.len();
    let Some((header, body)) = rows.split_first() else {
        issues.push(BasemapIssue::CosineShape {
            row: 0,
            expected: n,
            found: 0,
        });
        return Vec::new();
    };
    // An optional blank corner cell precedes the labels when rows are labelled.
    let header: Vec<&str> = header.iter().collect();
    let header = if header.len() == n + 1 && header[0].is_empty() {
        &header[1..]
    } else {
        &header[..]
    };
    if header.len() != n {
        issues.push(BasemapIssue::CosineShape {
            row: 0,
            expected: n,
            found: header.len(),
        });
    }
    for (index, (expected, found)) in labels.iter().zip(header).enumerate() {
        if expected != found {
            issues.push(BasemapIssue::CosineHeader {
                index,
                expected: expected.clone(),
                found: found.to_string(),
            });
        }
    }
    if body.len() != n {
        issues.push(BasemapIssue::CosineShape {
            row: body.len(),
            expected: n,
            found: body.len(),
        });
    }

    let mut values = Vec::with_capacity(n * n);
    for (r, row) in body.iter().enumerate() {
        let cells: Vec<&str> = row.iter().collect();
        let cells = if cells.len() == n + 1 {
            &cells[1..]
        } else {
            &cells[..]
        };
        if cells.len() != n {
            issues.push(BasemapIssue::CosineShape {
                row: r + 1,
                expected: n,
                found: cells.len(),
            });
            continue;
        }
        for (c, cell) in cells.iter().enumerate() {
            match cell.parse::<f64>() {
                Ok(v) => values.push(v),
                Err(_) => {
                    issues.push(BasemapIssue::CosineValue {
                        row: r + 1,
                        col: c + 1,
                        text: cell.to_string(),
                    });
                    values.push(f64::NAN);
                }
            }
        }
    }
    values
}

fn check_cosine(labels: &[String], cosine: &[f64], issues: &mut Vec<BasemapIssue>) {
    let n = labels.len();
    for i in 0..n {
        let diag = cosine[i * n + i];
        if (diag - 1.0).abs() > MATRIX_TOLERANCE {
            issues.push(BasemapIssue::Diagonal {
                label: labels[i].clone(),
                value: diag,
            });
        }
        for j in 0..n {
            let v = cosine[i * n + j];
            if v.is_finite() && !(0.0..=1.0).contains(&v) {
                issues.push(BasemapIssue::OutOfRange {
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                    value: v,
                });
            }
            let mirrored = cosine[j * n + i];
            if j > i && (v - mirrored).abs() > MATRIX_TOLERANCE {
                issues.push(BasemapIssue::Asymmetric {
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                    ab: v,
                    ba: mirrored,
                });
            }
        }
    }
}
