//! Power-law exponents of degree distributions by log-log least squares.
//!
//! Fits `ln p_k = -γ ln k + ln α` over the raw relative frequencies `p_k`.
//! Low degrees below `k_min` (the "hook" left by new entrants with one or a
//! few links) are left out of the regression.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

/// Hook trim used unless configured otherwise: degree-1 nodes are dropped.
pub const DEFAULT_K_MIN: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Exponent, positive for decaying distributions.
    pub gamma: f64,
    /// Natural-log intercept `ln α`.
    pub log_alpha: f64,
    pub r2: f64,
    pub k_min: usize,
    pub points_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("only {0} usable degree classes; a fit needs at least 3")]
    TooFewPoints(usize),
    #[error("all usable points share one degree")]
    ZeroVariance,
}

/// Fits a power law to a degree histogram (`k → n_k`).
///
/// `p_k` is normalized over all `k ≥ 1`; zero-count classes and `k < k_min`
/// are then omitted. A flat distribution gets `r2 = 0`.
pub fn fit_power_law(hist: &BTreeMap<usize, usize>, k_min: usize) -> Result<PowerLawFit, FitError> {
    let k_min = k_min.max(1);
    let total: usize = hist.range(1..).map(|(_, &c)| c).sum();
    let points: Vec<(f64, f64)> = hist
        .range(k_min..)
        .filter(|(_, &c)| c > 0)
        .map(|(&k, &c)| ((k as f64).ln(), (c as f64 / total as f64).ln()))
        .collect();
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }

    let count = points.len() as f64;
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / count;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &points {
        let (dx, dy) = (x - x_mean, y - y_mean);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(FitError::ZeroVariance);
    }

    let flat = points.iter().all(|p| p.1 == points[0].1);
    let slope = if flat { 0.0 } else { sxy / sxx };
    let intercept = y_mean - slope * x_mean;
    let r2 = if flat || syy == 0.0 {
        0.0
    } else {
        let ss_res: f64 = points
            .iter()
            .map(|&(x, y)| (y - (intercept + slope * x)).powi(2))
            .sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };

    Ok(PowerLawFit {
        gamma: -slope,
        log_alpha: intercept,
        r2,
        k_min,
        points_used: points.len(),
    })
}
