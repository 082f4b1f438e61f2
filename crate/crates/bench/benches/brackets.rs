use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fns_bench::fixture;
use fns_core::calculus::{fn_bracket, schouten};
use fns_core::cotangent::h_map;
use fns_core::Chart;

fn bench_fn_bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("fn_bracket");
    for dim in 1..=3 {
        let (k, l) = (fixture(dim, 1, 1, 1), fixture(dim, 1, 1, 2));
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, _| {
            b.iter(|| fn_bracket(black_box(&k), black_box(&l)).unwrap())
        });
    }
    group.finish();
}

fn bench_schouten(c: &mut Criterion) {
    let mut group = c.benchmark_group("schouten");
    for l in 1..=3 {
        let (u, v) = (fixture(3, 0, l, 3), fixture(3, 0, 2, 4));
        group.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, _| {
            b.iter(|| schouten(black_box(&u), black_box(&v)).unwrap())
        });
    }
    group.finish();
}

fn bench_h_map(c: &mut Criterion) {
    let mut group = c.benchmark_group("h_map");
    for dim in 1..=3 {
        let a = fixture(dim, 1, 2, 5);
        let cot = Chart::cotangent(a.chart());
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, _| {
            b.iter(|| h_map(&cot, black_box(&a)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fn_bracket, bench_schouten, bench_h_map);
criterion_main!(benches);
