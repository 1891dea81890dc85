use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use std::hint::black_box;

use ntmoments::error_terms::DeltaEvaluator;
use ntmoments::moments::delta_diff_sq_sum;
use ntmoments::probes::count_close_quadruples;
use ntmoments::tables::{ArithTable, TableKind};
use ntmoments::voronoi::delta_series;
use ntmoments::zeta::{QuadratureConfig, ZetaEvaluator};

fn bench_sieves(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    let limit = 1_000_000u64;
    group.throughput(Throughput::Elements(limit));
    group.sample_size(10);
    group.bench_function("divisor_1e6", |b| {
        b.iter(|| ArithTable::build(TableKind::Divisor, black_box(limit)).unwrap())
    });
    group.bench_function("two_squares_1e6", |b| {
        b.iter(|| ArithTable::build(TableKind::TwoSquares, black_box(limit)).unwrap())
    });
    group.bench_function("tau_2e4", |b| {
        b.iter(|| ArithTable::build(TableKind::RamanujanTau, black_box(20_000)).unwrap())
    });
    group.finish();
}

fn bench_zeta(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let eval = ZetaEvaluator::new(1.0e6, &cfg);
    let mut group = c.benchmark_group("zeta_half_sq");
    for t in [1.0e3, 1.0e5, 1.0e6] {
        group.bench_function(format!("t_{t:.0e}"), |b| {
            b.iter(|| eval.zeta_half_sq(black_box(t)))
        });
    }
    group.finish();
}

fn bench_voronoi(c: &mut Criterion) {
    let table = ArithTable::build(TableKind::Divisor, 10_000).unwrap();
    let mut group = c.benchmark_group("voronoi_delta_series");
    for n in [100usize, 10_000] {
        group.throughput(Throughput::Elements(n as u64));
        group.bench_function(format!("n_{n}"), |b| {
            b.iter(|| delta_series(black_box(123_456.5), n, &table).unwrap())
        });
    }
    group.finish();
}

fn bench_moment(c: &mut Criterion) {
    let table = ArithTable::build(TableKind::Divisor, 220_000).unwrap();
    let eval = DeltaEvaluator::new(&table).unwrap();
    let mut group = c.benchmark_group("moment");
    group.sample_size(20);
    group.throughput(Throughput::Elements(100_000));
    group.bench_function("delta_diff_sq_T1e5", |b| {
        b.iter(|| delta_diff_sq_sum(black_box(100_000), 32, &eval).unwrap())
    });
    group.finish();
}

fn bench_quadruples(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadruples");
    group.bench_function("exact_n64", |b| {
        b.iter(|| count_close_quadruples(black_box(64), 2, 0.0).unwrap())
    });
    group.bench_function("threshold_n64", |b| {
        b.iter(|| count_close_quadruples(black_box(64), 2, 2.4e-4).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_sieves,
    bench_zeta,
    bench_voronoi,
    bench_moment,
    bench_quadruples
);
criterion_main!(benches);
