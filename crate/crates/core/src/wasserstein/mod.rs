//! Exact Wasserstein-1 distances between finitely supported measures.

pub mod assignment;
pub mod flow;
mod measure;

pub use flow::TransportPlan;
pub use measure::{pushforward, quantize, AtomDoc, AtomicMeasure, MeasureDoc};

use crate::error::{Error, Result};
use crate::space::GeodesicSpace;

fn cost_matrix<S: GeodesicSpace>(space: &S, xs: &[&S::Point], ys: &[&S::Point]) -> Vec<Vec<f64>> {
    xs.iter()
        .map(|x| ys.iter().map(|y| space.distance(x, y)).collect())
        .collect()
}

/// `W1((1/n) sum delta_{x_i}, (1/n) sum delta_{y_i}) = (1/n) min_tau sum d(x_k, y_tau(k))`,
/// solved as an assignment problem.
pub fn w1_uniform<S: GeodesicSpace>(space: &S, xs: &[S::Point], ys: &[S::Point]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::UnequalCounts {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.is_empty() {
        return Err(Error::Empty("point sets"));
    }
    let xs: Vec<_> = xs.iter().collect();
    let ys: Vec<_> = ys.iter().collect();
    let a = assignment::solve(&cost_matrix(space, &xs, &ys));
    Ok(a.cost / xs.len() as f64)
}

/// Optimal transport plan between two atomic measures.
pub fn transport_plan<S: GeodesicSpace>(
    space: &S,
    mu: &AtomicMeasure<S::Point>,
    nu: &AtomicMeasure<S::Point>,
) -> TransportPlan {
    let xs: Vec<_> = mu.support().collect();
    let ys: Vec<_> = nu.support().collect();
    let supply: Vec<_> = mu.masses().cloned().collect();
    let demand: Vec<_> = nu.masses().cloned().collect();
    flow::min_cost_transport(&supply, &demand, &cost_matrix(space, &xs, &ys))
}

/// Exact `W1(mu, nu)` by minimum-cost flow with rational masses.
pub fn w1_atomic<S: GeodesicSpace>(
    space: &S,
    mu: &AtomicMeasure<S::Point>,
    nu: &AtomicMeasure<S::Point>,
) -> f64 {
    transport_plan(space, mu, nu).cost
}

/// `W1` through the common-denominator expansion of both measures into
/// uniform tuples of equal length, refusing expansions beyond `cap` atoms.
pub fn w1_via_expansion<S: GeodesicSpace>(
    space: &S,
    mu: &AtomicMeasure<S::Point>,
    nu: &AtomicMeasure<S::Point>,
    cap: u64,
) -> Result<f64> {
    let n = num_integer::lcm(mu.common_denominator(), nu.common_denominator());
    let lift = |m: &AtomicMeasure<S::Point>| -> Result<Vec<S::Point>> {
        let reps = (&n / m.common_denominator())
            .try_into()
            .unwrap_or(u64::MAX);
        let base = m.expand(cap)?;
        let needed = (base.len() as u128) * reps as u128;
        if needed > cap as u128 {
            return Err(Error::ExpansionCap { needed, cap });
        }
        Ok(base
            .iter()
            .flat_map(|p| std::iter::repeat_n(p, reps as usize))
            .cloned()
            .collect())
    };
    w1_uniform(space, &lift(mu)?, &lift(nu)?)
}

/// Default cap on common-denominator expansions.
pub const EXPANSION_CAP: u64 = 10_000;
