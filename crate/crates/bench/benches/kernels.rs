use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spin1_bench::layered_circuit;
use spin1_core::experiment::{run_spectrum, run_tunneling, ExperimentConfig};
use spin1_core::spectral::{dft, uniform_grid, TimeSeries};
use spin1_core::QuantumState;

fn apply_circuit(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_circuit");
    for n in [3usize, 8, 12, 16] {
        let circuit = layered_circuit(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &circuit, |b, circuit| {
            b.iter(|| {
                let mut s = QuantumState::zero(n).unwrap();
                s.apply_circuit(circuit).unwrap();
                s
            })
        });
    }
    group.finish();
}

fn transform(c: &mut Criterion) {
    let t = uniform_grid(-8.0 * PI, 8.0 * PI, PI / 24.0).unwrap();
    let v = t.iter().map(|x| 0.5 + 0.25 * (3.5 * x).cos()).collect();
    let series = TimeSeries::new(t, v).unwrap();
    let grid = series.natural_omega_grid();
    c.bench_function("dft_385x383", |b| b.iter(|| dft(&series, &grid).unwrap()));
}

fn experiments(c: &mut Criterion) {
    let tunneling = ExperimentConfig::tunneling();
    c.bench_function("run_tunneling_exact", |b| {
        b.iter(|| run_tunneling(&tunneling).unwrap())
    });
    let spectrum = ExperimentConfig::spectrum();
    c.bench_function("run_spectrum_exact", |b| {
        b.iter(|| run_spectrum(&spectrum).unwrap())
    });
}

criterion_group!(benches, apply_circuit, transform, experiments);
criterion_main!(benches);
