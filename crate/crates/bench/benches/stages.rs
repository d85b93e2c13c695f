use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tracedist::{
    estimate_trace_distance, hermitian_eig, qpe_kernel, ClockConfig, ClockInit, GeneratorSource, RunConfig,
    UnitaryMode, Variant,
};
use tracedist_bench::{hermitian, qubit_pair};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    for dim in [4, 16, 64] {
        let h = hermitian(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &h, |b, h| {
            b.iter(|| hermitian_eig(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("qpe_kernel");
    for m in [6, 10, 14] {
        for init in [ClockInit::Uniform, ClockInit::ImprovedSine] {
            let cfg = ClockConfig::new(m, 1.0, init).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{init:?}"), m), &cfg, |b, cfg| {
                b.iter(|| qpe_kernel(black_box(0.3217), cfg))
            });
        }
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let (a, b) = qubit_pair(0.7);
    let mut group = c.benchmark_group("estimate_trace_distance");
    for (mode, m) in [
        (UnitaryMode::Exact, 10),
        (UnitaryMode::Trotter, 8),
        (UnitaryMode::LmrChannel, 5),
    ] {
        let cfg = RunConfig {
            unitary_mode: mode,
            ..RunConfig::with_clock(m)
        };
        group.bench_function(format!("{}/M={m}", mode.name()), |bench| {
            bench.iter(|| estimate_trace_distance(&a, &b, &cfg, Variant::Full).unwrap())
        });
    }
    group.finish();
}

fn channel(c: &mut Criterion) {
    let (a, b) = qubit_pair(0.4);
    let src = GeneratorSource::Omega { rho: a, rho2: b };
    c.bench_function("controlled_step/omega", |bench| {
        bench.iter(|| src.controlled_step(black_box(0.01)).unwrap())
    });
}

criterion_group!(benches, eigensolver, kernel, pipeline, channel);
criterion_main!(benches);
