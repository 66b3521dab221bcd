use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ternary_grassmann::kernels::{CovarianceGrid, KernelMethod, KernelOptions, SpectralDensity};
use ternary_grassmann::{run_suite, ExecutionMode, PhaseRule};

const MODES: [(&str, ExecutionMode); 2] = [
    ("sequential", ExecutionMode::Sequential),
    ("parallel", ExecutionMode::Parallel),
];

fn covariance_grid(c: &mut Criterion) {
    let grid: Vec<f64> = (1..=12).map(|k| k as f64 / 12.0).collect();
    let m = SpectralDensity::fbm(0.75).unwrap();
    let opts = KernelOptions::default();
    let mut group = c.benchmark_group("covariance_12x12");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new("quadrature", name), &mode, |b, &mode| {
            b.iter(|| {
                CovarianceGrid::compute(&m, &grid, &grid, KernelMethod::Quadrature, &opts, mode)
                    .unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("series_200", name), &mode, |b, &mode| {
            b.iter(|| {
                CovarianceGrid::compute(&m, &grid, &grid, KernelMethod::Series(200), &opts, mode)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn law_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("laws_200_trials");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| run_suite(black_box(1), 200, mode, PhaseRule::Canonical))
        });
    }
    group.finish();
}

criterion_group!(benches, covariance_grid, law_suite);
criterion_main!(benches);
