use std::hint::black_box;

use bicomb::counterexample::verify_counterexample;
use bicomb::dynamics::{banach_density_estimate, fixed_point_solve, FixedPointParams, VisitSet};
use bicomb::rational::ratio;
use bicomb::spaces::{Euclidean, IsometryDescriptor, SparseSeq, StarSeq};
use bicomb::{GeodesicSpace, TargetSet};
use criterion::{criterion_group, criterion_main, Criterion};

fn density(c: &mut Criterion) {
    let visits = VisitSet::from_indices(20_000, (0..20_000).step_by(3));
    c.bench_function("banach_density 10k x 10k", |b| {
        b.iter(|| banach_density_estimate(black_box(&visits), 10_000, 10_000).unwrap())
    });
}

fn solver(c: &mut Criterion) {
    let plane = Euclidean::new(2).unwrap();
    let rot = plane.bind(&IsometryDescriptor::rotation_turns(ratio(1, 3))).unwrap();
    let target = TargetSet::ball(vec![0.0, 0.0], 1.0).unwrap();
    let params = FixedPointParams {
        schedule: vec![3, 30, 300],
        ..FixedPointParams::default()
    };
    c.bench_function("fixpoint rotation 300", |b| {
        b.iter(|| fixed_point_solve(&plane, &rot, &vec![1.0, 0.0], &target, black_box(&params)).unwrap())
    });

    let seq = StarSeq::new(-10, 10).unwrap();
    let shift = seq.bind(&IsometryDescriptor::shift(1)).unwrap();
    let target = TargetSet::ball(SparseSeq::zero(), 1.0).unwrap();
    c.bench_function("fixpoint shift 1000", |b| {
        b.iter(|| fixed_point_solve(&seq, &shift, &SparseSeq::unit(0), &target, black_box(&FixedPointParams::default())).unwrap())
    });
}

fn counterexample(c: &mut Criterion) {
    let mut group = c.benchmark_group("counterexample");
    group.sample_size(10);
    group.bench_function("verify 1000", |b| b.iter(|| verify_counterexample(black_box(1000), 20, 7)));
    group.finish();
}

criterion_group!(benches, density, solver, counterexample);
criterion_main!(benches);
