use std::hint::black_box;

use bicomb::rational::ratio;
use bicomb::spaces::Euclidean;
use bicomb::{w1_atomic, w1_uniform, AtomicMeasure};
use bicomb_bench::{line, points};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn uniform(c: &mut Criterion) {
    let plane = Euclidean::new(2).unwrap();
    let mut group = c.benchmark_group("w1_uniform");
    for n in [7usize, 50, 200] {
        let xs = points(&plane, n, 1);
        let ys = points(&plane, n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| w1_uniform(&plane, black_box(&xs), black_box(&ys)).unwrap())
        });
    }
    group.finish();
}

fn atomic(c: &mut Criterion) {
    let space = line();
    let mut group = c.benchmark_group("w1_atomic");
    for n in [5usize, 20, 60] {
        let weighted = |seed| {
            let pts = points(&space, n, seed);
            let total = (n * (n + 1) / 2) as i64;
            let atoms = pts
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, ratio(i as i64 + 1, total)))
                .collect();
            AtomicMeasure::new(&space, atoms).unwrap()
        };
        let (mu, nu) = (weighted(3), weighted(4));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| w1_atomic(&space, black_box(&mu), black_box(&nu)))
        });
    }
    group.finish();
}

criterion_group!(benches, uniform, atomic);
criterion_main!(benches);
