//! Erdős–Rényi reference values for small-world testing.
//!
//! A network is small-world when its clustering is far above that of a random
//! graph with the same size and mean degree while its mean distance stays
//! comparable. The proximity ratio
//! `W = (CC / CC_rg) / (d / d_rg)` condenses both conditions into one number.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::generators::gnm;
use crate::metrics::{clustering_coefficient, mean_distance};

pub const DEFAULT_RUNS: usize = 100;

/// Closed-form random-graph expectations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticBaseline {
    /// `z / n`; `None` unless `n >= 2` and `z > 0`.
    pub cc_rg: Option<f64>,
    /// `ln n / ln z`; `None` unless additionally `z > 1`.
    pub d_rg: Option<f64>,
}

pub fn analytic_baseline(n: usize, z: f64) -> AnalyticBaseline {
    if n < 2 || z.is_nan() || z <= 0.0 || z.is_infinite() {
        return AnalyticBaseline {
            cc_rg: None,
            d_rg: None,
        };
    }
    let n = n as f64;
    AnalyticBaseline {
        cc_rg: Some(z / n),
        d_rg: (z > 1.0).then(|| n.ln() / z.ln()),
    }
}

/// Means of clustering and mean distance over simulated `G(n, m)` graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulatedBaseline {
    pub cc_rg: Option<f64>,
    pub d_rg: Option<f64>,
    pub runs: usize,
    pub seed: u64,
    /// Runs whose largest component was a single node, left out of `d_rg`.
    pub runs_without_distance: usize,
}

/// Simulates `runs` uniform random graphs with exactly `m` edges.
///
/// Run `i` draws from a ChaCha stream keyed by `(seed, i)`, so the result does
/// not depend on how runs are scheduled across threads.
///
/// # Panics
///
/// If `m` exceeds the number of node pairs.
pub fn simulate_baseline(n: usize, m: usize, runs: usize, seed: u64) -> SimulatedBaseline {
    let samples: Vec<(Option<f64>, Option<f64>)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(run as u64);
            let g = gnm(n, m, &mut rng);
            (clustering_coefficient(&g), mean_distance(&g))
        })
        .collect();

    let mean = |values: &mut dyn Iterator<Item = f64>| {
        let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
        (count > 0).then(|| sum / count as f64)
    };
    let cc_rg = mean(&mut samples.iter().filter_map(|s| s.0));
    let d_rg = mean(&mut samples.iter().filter_map(|s| s.1));
    SimulatedBaseline {
        cc_rg,
        d_rg,
        runs,
        seed,
        runs_without_distance: samples.iter().filter(|s| s.1.is_none()).count(),
    }
}

/// Walsh's proximity ratio `(cc / cc_rg) / (d_mean / d_rg)`.
///
/// `None` when any input is missing, zero, negative or non-finite.
pub fn walsh_ratio(
    cc: Option<f64>,
    d_mean: Option<f64>,
    cc_rg: Option<f64>,
    d_rg: Option<f64>,
) -> Option<f64> {
    let usable = |x: Option<f64>| x.filter(|v| v.is_finite() && *v > 0.0);
    let (cc, d, cc_rg, d_rg) = (usable(cc)?, usable(d_mean)?, usable(cc_rg)?, usable(d_rg)?);
    let w = (cc / cc_rg) / (d / d_rg);
    w.is_finite().then_some(w)
}
