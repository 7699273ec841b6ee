use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bloch_ellipsoid::classification::classify;
use bloch_ellipsoid::ellipsoid::ellipsoid_of;
use bloch_ellipsoid::oracle::{brute_max_radius_with, min_product_expectation_with};
use bloch_ellipsoid::sampling::{mixed_operator, stream_rng};
use bloch_ellipsoid::witness::{flip_witness, is_finer_with, wp_witness, FinerSearch, PureState};
use bloch_ellipsoid::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_brute_radius(c: &mut Criterion) {
    let e = ellipsoid_of(&wp_witness(0.3));
    let mut g = c.benchmark_group("brute_max_radius");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| brute_max_radius_with(black_box(&e), 10_000, 50, exec))
        });
    }
    g.finish();
}

fn bench_product_minimum(c: &mut Criterion) {
    let w = wp_witness(0.3);
    let mut g = c.benchmark_group("min_product_expectation");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| min_product_expectation_with(black_box(&w), 256, 1, exec))
        });
    }
    g.finish();
}

fn bench_finer(c: &mut Criterion) {
    // A product state detects nothing and admits no certificate, so the
    // search runs its full sampling budget.
    let product = PureState::from_real([1.0, 0.0, 0.0, 0.0])
        .unwrap()
        .projector();
    let (w1, w2) = (flip_witness(), product);
    let mut g = c.benchmark_group("is_finer");
    g.sample_size(20);
    for (name, exec) in MODES {
        let search = FinerSearch {
            exec,
            ..FinerSearch::new(1, 20_000)
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &search, |b, s| {
            b.iter(|| is_finer_with(black_box(&w1), black_box(&w2), s))
        });
    }
    g.finish();
}

fn bench_batch_classify(c: &mut Criterion) {
    let ops: Vec<_> = (0..2_000u64)
        .map(|i| mixed_operator(&mut stream_rng(5, i)).1)
        .collect();
    let mut g = c.benchmark_group("batch_classify");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| exec.map_slice(black_box(&ops), |op| classify(op).ok()))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_brute_radius,
    bench_product_minimum,
    bench_finer,
    bench_batch_classify
);
criterion_main!(benches);
