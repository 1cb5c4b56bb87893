use apoly_core::knots::{eliminate_two_bridge, torus_a};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn two_bridge(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate_two_bridge");
    for (p, q) in [(3u64, 1u64), (5, 3), (7, 3), (9, 5), (11, 3), (13, 5)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{p}/{q}")), &(p, q), |b, &(p, q)| {
            b.iter(|| eliminate_two_bridge(black_box(p), black_box(q)).unwrap())
        });
    }
    group.finish();
}

fn torus(c: &mut Criterion) {
    c.bench_function("torus_a(7,9)", |b| b.iter(|| torus_a(black_box(7), black_box(9)).unwrap()));
}

criterion_group!(benches, two_bridge, torus);
criterion_main!(benches);
