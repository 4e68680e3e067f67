#![allow(dead_code)]

use bicomb::rational::ratio;
use bicomb::spaces::{SpiderTree, TreePoint};
use bicomb::{AtomicMeasure, GeodesicSpace};
use num_rational::BigRational;
use rand::Rng;

/// Mass vectors whose common denominator is at most 3, so that the
/// doubling stage of the barycenter only evaluates `b_n` for `n <= 6`.
pub fn small_masses<R: Rng + ?Sized>(rng: &mut R) -> Vec<BigRational> {
    match rng.gen_range(0..5) {
        0 => vec![ratio(1, 1)],
        1 => vec![ratio(1, 2), ratio(1, 2)],
        2 => vec![ratio(1, 3), ratio(2, 3)],
        3 => vec![ratio(2, 3), ratio(1, 3)],
        _ => vec![ratio(1, 3); 3],
    }
}

/// Random measure with `masses` on distinct sampled points.
pub fn measure_with<S: GeodesicSpace, R: Rng + ?Sized>(
    space: &S,
    rng: &mut R,
    masses: Vec<BigRational>,
) -> AtomicMeasure<S::Point> {
    let mut points: Vec<S::Point> = Vec::new();
    while points.len() < masses.len() {
        let p = space.sample_point(rng);
        if points.iter().all(|q| space.key(q) != space.key(&p)) {
            points.push(p);
        }
    }
    AtomicMeasure::new(space, points.into_iter().zip(masses).collect()).expect("valid masses")
}

pub fn small_measure<S: GeodesicSpace, R: Rng + ?Sized>(space: &S, rng: &mut R) -> AtomicMeasure<S::Point> {
    let masses = small_masses(rng);
    measure_with(space, rng, masses)
}

/// Up to four atoms with masses `w_i / sum w`, `w_i` in `1..=6`.
pub fn rational_measure<S: GeodesicSpace, R: Rng + ?Sized>(space: &S, rng: &mut R, max_atoms: usize) -> AtomicMeasure<S::Point> {
    let n = rng.gen_range(1..=max_atoms);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    measure_with(space, rng, weights.iter().map(|&w| ratio(w, total)).collect())
}

/// Small measure on the union of two legs, i.e. on a geodesic segment,
/// where the doubling stage of the barycenter settles at `k = 2`.
pub fn geodesic_tree_measure<R: Rng + ?Sized>(tree: &SpiderTree, rng: &mut R) -> AtomicMeasure<TreePoint> {
    let legs = tree.lengths().len();
    let first = rng.gen_range(0..legs);
    let second = (first + rng.gen_range(1..legs)) % legs;
    let masses = small_masses(rng);
    let mut points: Vec<TreePoint> = Vec::new();
    while points.len() < masses.len() {
        let leg = if rng.gen_bool(0.5) { first } else { second };
        let p = tree.point(leg, rng.gen_range(0.0..=tree.lengths()[leg])).expect("on the leg");
        if points.iter().all(|q| tree.key(q) != tree.key(&p)) {
            points.push(p);
        }
    }
    AtomicMeasure::new(tree, points.into_iter().zip(masses).collect()).expect("valid masses")
}
