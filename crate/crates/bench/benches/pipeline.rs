use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use grseg_bench::{catalog, longest_regular};
use grseg_core::grcore::submodules;
use grseg_core::segments::{assemble_segments, SegmentConfig};
use grseg_core::{decompose, Budgets, GrEngine};

fn measures(c: &mut Criterion) {
    let k = catalog("kronecker", 10);
    let h = longest_regular(&k);
    c.bench_function("measure kronecker H_5 cold", |b| {
        b.iter(|| GrEngine::default().measure(black_box(&h)).unwrap())
    });
    let warm = GrEngine::default();
    warm.measure(&h).unwrap();
    c.bench_function("measure kronecker H_5 memoised", |b| b.iter(|| warm.measure(black_box(&h)).unwrap()));
    let small = longest_regular(&catalog("a21", 6));
    c.bench_function("submodule lattice a21 regular", |b| {
        b.iter(|| submodules(black_box(&small), &Budgets::default()).unwrap().len())
    });
    let sum = h.direct_sum(&k.entries[k.h1().unwrap()].module).unwrap();
    c.bench_function("decompose kronecker sum", |b| b.iter(|| decompose(black_box(&sum), &Budgets::default()).unwrap()));
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    g.bench_function("catalog kronecker L=10", |b| b.iter(|| catalog("kronecker", 10).len()));
    g.bench_function("catalog a22_sink_source L=12", |b| b.iter(|| catalog("a22_sink_source", 12).len()));
    let c22 = catalog("a22_sink_source", 12);
    g.bench_function("segments a22_sink_source L=12", |b| {
        b.iter(|| assemble_segments(black_box(&c22), SegmentConfig::default()).unwrap().segments.len())
    });
    g.finish();
}

criterion_group!(benches, measures, pipeline);
criterion_main!(benches);
