use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use diffusion_scope_bench::synthetic_export;
use diffusion_scope_core::diversity::{rao_stirling, DistanceMatrix, DistanceUnit, MassDistribution};
use diffusion_scope_core::generators::watts_strogatz;
use diffusion_scope_core::metrics::{clustering_coefficient, mean_distance};
use diffusion_scope_core::null_model::simulate_baseline;
use diffusion_scope_core::parse_records;
use rand::SeedableRng;

fn graph_metrics(c: &mut Criterion) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = watts_strogatz(1000, 10, 0.1, &mut rng);
    c.bench_function("clustering_ws1000", |b| b.iter(|| clustering_coefficient(black_box(&g))));
    c.bench_function("mean_distance_ws1000", |b| b.iter(|| mean_distance(black_box(&g))));
}

fn null_model(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_baseline");
    group.sample_size(10);
    group.bench_function("gnm_1000_5000_x20", |b| {
        b.iter(|| simulate_baseline(black_box(1000), 5000, 20, 1))
    });
    group.finish();
}

fn parsing(c: &mut Criterion) {
    let text = synthetic_export(5000, 3);
    c.bench_function("parse_5000_records", |b| {
        b.iter(|| parse_records(black_box(text.as_bytes())).unwrap())
    });
}

fn diversity(c: &mut Criterion) {
    let n = 221;
    let labels: Vec<String> = (0..n).map(|i| format!("C{i}")).collect();
    let values: Vec<f64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                0.0
            } else {
                ((i * j) % 97) as f64 / 97.0 * 0.5 + 0.25
            }
        })
        .collect();
    let d = DistanceMatrix::new(labels.clone(), values, DistanceUnit::Dimensionless).unwrap();
    let counts: Vec<f64> = (0..n).map(|i| (i % 13) as f64).collect();
    let p = MassDistribution::from_counts(labels, &counts);
    c.bench_function("rao_stirling_221", |b| b.iter(|| rao_stirling(black_box(&p), &d)));
}

criterion_group!(benches, graph_metrics, null_model, parsing, diversity);
criterion_main!(benches);
