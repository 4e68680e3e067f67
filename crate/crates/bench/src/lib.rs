//! Shared fixtures for the benchmarks.

use bicomb::space::seeded_rng;
use bicomb::spaces::{Euclidean, SpiderTree};
use bicomb::GeodesicSpace;

pub fn line() -> Euclidean {
    Euclidean::new(1).expect("dimension 1")
}

pub fn spider(legs: usize) -> SpiderTree {
    SpiderTree::new(vec![1.0; legs]).expect("positive lengths")
}

/// `n` seeded sample points of `space`.
pub fn points<S: GeodesicSpace>(space: &S, n: usize, seed: u64) -> Vec<S::Point> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| space.sample_point(&mut rng)).collect()
}
