//! Distance-weighted diversity and globalization.
//!
//! Rao–Stirling diversity `D = Σ_{i≠j} p_i p_j d_ij` is the distance a pair of
//! units drawn from the distribution is expected to span. The globalization
//! measure `C = Σ_{i≠j} p_ij d_ij` is the same quantity for observed links.
//! Both sums run over ordered pairs. Their ratio `C / D` compares observed to
//! expected collaboration distance.

use serde::Serialize;
use thiserror::Error;

use crate::geo::{great_circle_km, GeoPoint};
use crate::network::CityYearNetwork;
use crate::records::PublicationRecord;

/// Largest absolute asymmetry or diagonal deviation tolerated in inputs.
pub const MATRIX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiversityError {
    #[error("labels of distribution and distance matrix differ")]
    LabelMismatch,
    #[error("matrix has {values} entries, expected {n}×{n}")]
    NotSquare { n: usize, values: usize },
    #[error("matrix is asymmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} is out of range")]
    OutOfRange { i: usize, j: usize, value: f64 },
    #[error("diagonal entry {i} = {value} is not {expected}")]
    Diagonal { i: usize, value: f64, expected: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceUnit {
    Dimensionless,
    Kilometers,
}

/// Symmetric, zero-diagonal, non-negative distances between labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
    unit: DistanceUnit,
}

impl DistanceMatrix {
    /// Validates and wraps a row-major `n × n` matrix.
    pub fn new(labels: Vec<String>, values: Vec<f64>, unit: DistanceUnit) -> Result<Self, DiversityError> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(DiversityError::NotSquare {
                n,
                values: values.len(),
            });
        }
        for i in 0..n {
            let diag = values[i * n + i];
            if diag.abs() > MATRIX_TOLERANCE {
                return Err(DiversityError::Diagonal {
                    i,
                    value: diag,
                    expected: 0.0,
                });
            }
            for j in 0..n {
                let v = values[i * n + j];
                let in_range = v.is_finite()
                    && v >= 0.0
                    && (unit != DistanceUnit::Dimensionless || v <= 1.0);
                if !in_range {
                    return Err(DiversityError::OutOfRange { i, j, value: v });
                }
                if j > i && (v - values[j * n + i]).abs() > MATRIX_TOLERANCE {
                    return Err(DiversityError::Asymmetric { i, j });
                }
            }
        }
        Ok(Self {
            labels,
            values,
            unit,
        })
    }

    /// Great-circle distances between labelled points.
    pub fn from_points(labels: Vec<String>, points: &[GeoPoint]) -> Self {
        assert_eq!(labels.len(), points.len());
        let n = points.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = great_circle_km(points[i], points[j]);
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        Self {
            labels,
            values,
            unit: DistanceUnit::Kilometers,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> DistanceUnit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.labels.len() + j]
    }
}

/// Relative frequencies over labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MassDistribution {
    labels: Vec<String>,
    p: Vec<f64>,
}

impl MassDistribution {
    /// Normalizes counts to frequencies. All-zero counts give an empty
    /// (all-zero) distribution.
    pub fn from_counts(labels: Vec<String>, counts: &[f64]) -> Self {
        assert_eq!(labels.len(), counts.len());
        let total: f64 = counts.iter().sum();
        let p = if total > 0.0 {
            counts.iter().map(|c| c / total).collect()
        } else {
            vec![0.0; counts.len()]
        };
        Self { labels, p }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// True when no label carries mass.
    pub fn is_empty(&self) -> bool {
        self.p.iter().all(|&v| v == 0.0)
    }
}

/// Relative link frequencies over ordered label pairs: symmetric, zero
/// diagonal, summing to one unless empty.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkDistribution {
    labels: Vec<String>,
    p: Vec<f64>,
}

impl LinkDistribution {
    /// Builds the distribution from unordered weighted pairs `(i, j, w)`,
    /// `i != j`. Each pair contributes `w / (2 Σw)` to both `(i, j)` and
    /// `(j, i)`.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize, f64)]) -> Self {
        let n = labels.len();
        let total: f64 = pairs.iter().map(|&(_, _, w)| w).sum();
        let mut p = vec![0.0; n * n];
        if total > 0.0 {
            for &(i, j, w) in pairs {
                assert!(i != j, "self-link ({i}, {i})");
                let share = w / (2.0 * total);
                p[i * n + j] += share;
                p[j * n + i] += share;
            }
        }
        Self { labels, p }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.labels.len() + j]
    }

    pub fn is_empty(&self) -> bool {
        self.p.iter().all(|&v| v == 0.0)
    }
}

/// `D`, `C` and their ratio for one year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiversityResult {
    pub diversity: f64,
    pub globalization: f64,
    pub coherence: Option<f64>,
}

/// Rao–Stirling diversity `Σ_{i≠j} p_i p_j d_ij`.
pub fn rao_stirling(p: &MassDistribution, d: &DistanceMatrix) -> Result<f64, DiversityError> {
    if p.labels != d.labels {
        return Err(DiversityError::LabelMismatch);
    }
    let n = p.p.len();
    let mut total = 0.0;
    for i in 0..n {
        let pi = p.p[i];
        if pi == 0.0 {
            continue;
        }
        let row = &d.values[i * n..(i + 1) * n];
        let mut acc = 0.0;
        for (j, (&pj, &dij)) in p.p.iter().zip(row).enumerate() {
            if j != i {
                acc += pj * dij;
            }
        }
        total += pi * acc;
    }
    Ok(total)
}

/// Globalization `Σ_{i≠j} p_ij d_ij`: mean distance spanned by a link.
pub fn globalization(p: &LinkDistribution, d: &DistanceMatrix) -> Result<f64, DiversityError> {
    if p.labels != d.labels {
        return Err(DiversityError::LabelMismatch);
    }
    let n = p.labels.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += p.p[i * n + j] * d.values[i * n + j];
            }
        }
    }
    Ok(total)
}

/// `C / D`, undefined when `D` is not positive.
pub fn coherence(diversity: f64, globalization: f64) -> Option<f64> {
    (diversity > 0.0).then(|| globalization / diversity)
}

/// Cognitive distances `1 − cosine` from a category similarity matrix.
///
/// The similarity must be symmetric with entries in `[0, 1]` and a unit
/// diagonal.
pub fn cognitive_distances(labels: Vec<String>, cosine: &[f64]) -> Result<DistanceMatrix, DiversityError> {
    let n = labels.len();
    if cosine.len() != n * n {
        return Err(DiversityError::NotSquare {
            n,
            values: cosine.len(),
        });
    }
    for i in 0..n {
        let diag = cosine[i * n + i];
        if (diag - 1.0).abs() > MATRIX_TOLERANCE {
            return Err(DiversityError::Diagonal {
                i,
                value: diag,
                expected: 1.0,
            });
        }
        for j in 0..n {
            let v = cosine[i * n + j];
            if !(0.0..=1.0).contains(&v) {
                return Err(DiversityError::OutOfRange { i, j, value: v });
            }
            if j > i && (v - cosine[j * n + i]).abs() > MATRIX_TOLERANCE {
                return Err(DiversityError::Asymmetric { i, j });
            }
        }
    }
    let values = (0..n * n)
        .map(|k| if k / n == k % n { 0.0 } else { 1.0 - cosine[k] })
        .collect();
    DistanceMatrix::new(labels, values, DistanceUnit::Dimensionless)
}

/// Whole-counted category frequencies: every record adds one to each of its
/// categories found in `categories`. Other categories are ignored.
pub fn category_mass(records: &[PublicationRecord], categories: &[String]) -> MassDistribution {
    let index: std::collections::HashMap<&str, usize> = categories
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let mut counts = vec![0.0; categories.len()];
    for record in records {
        let mut seen = Vec::with_capacity(record.categories.len());
        for cat in &record.categories {
            if let Some(&i) = index.get(cat.as_str()) {
                if !seen.contains(&i) {
                    seen.push(i);
                    counts[i] += 1.0;
                }
            }
        }
    }
    MassDistribution::from_counts(categories.to_vec(), &counts)
}

/// Labels of the geocoded cities of a network, in node order.
fn geocoded_labels(net: &CityYearNetwork) -> (Vec<usize>, Vec<String>) {
    let nodes: Vec<usize> = net.geocoded().collect();
    let labels = nodes
        .iter()
        .map(|&i| net.nodes()[i].key.to_string())
        .collect();
    (nodes, labels)
}

/// Per-city paper counts over the geocoded cities of a network.
pub fn city_mass(net: &CityYearNetwork) -> MassDistribution {
    let (nodes, labels) = geocoded_labels(net);
    let counts: Vec<f64> = nodes
        .iter()
        .map(|&i| f64::from(net.nodes()[i].papers))
        .collect();
    MassDistribution::from_counts(labels, &counts)
}

/// Edge weights between geocoded cities as a link distribution.
pub fn link_mass(net: &CityYearNetwork) -> LinkDistribution {
    let (nodes, labels) = geocoded_labels(net);
    let mut position = vec![None; net.nodes().len()];
    for (pos, &i) in nodes.iter().enumerate() {
        position[i] = Some(pos);
    }
    let pairs: Vec<(usize, usize, f64)> = net
        .edges()
        .iter()
        .filter_map(|e| {
            Some((
                position[e.source]?,
                position[e.target]?,
                f64::from(e.weight),
            ))
        })
        .collect();
    LinkDistribution::from_pairs(labels, &pairs)
}

/// Great-circle distances between the geocoded cities of a network.
pub fn geographic_distances(net: &CityYearNetwork) -> DistanceMatrix {
    let (nodes, labels) = geocoded_labels(net);
    let points: Vec<GeoPoint> = nodes
        .iter()
        .filter_map(|&i| net.nodes()[i].coord)
        .collect();
    DistanceMatrix::from_points(labels, &points)
}

/// Geographic `D`, `C` and `C / D` of a network, over its geocoded cities.
/// `None` when no city is geocoded.
pub fn geographic_diversity(net: &CityYearNetwork) -> Option<DiversityResult> {
    let mass = city_mass(net);
    if mass.is_empty() {
        return None;
    }
    let distances = geographic_distances(net);
    let links = link_mass(net);
    let diversity = rao_stirling(&mass, &distances).ok()?;
    let globalization = globalization(&links, &distances).ok()?;
    Some(DiversityResult {
        diversity,
        globalization,
        coherence: coherence(diversity, globalization),
    })
}
