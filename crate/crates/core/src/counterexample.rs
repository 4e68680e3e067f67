//! The bounded space `conv(A)`, `A = { T^k(e_0) : k in Z }`, inside
//! `(l1(Z), ||.||_*)`, on which the shift `T` moves every point.
//!
//! Every claim is checked with exact rational arithmetic on sampled hull
//! points, plus the closed-form sequence of uniform averages whose
//! displacement tends to zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, ratio, sqrt_to_f64, to_f64};
use crate::report::PropertyReport;
use crate::space::{seeded_rng, sorted_triple};
use crate::spaces::{star_norm_dense, strict_convexity_check, SparseSeq};

/// Half-width of the offset range used by random hull samples.
const OFFSET_RANGE: i64 = 1000;

/// Tolerance for the floating Busemann check on hull samples.
const BUSEMANN_TOL: f64 = 1e-9;

/// `x = sum alpha_i T^{l_i}(e_0)` with `alpha` in the simplex and distinct
/// offsets `l_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullSample {
    #[serde(serialize_with = "ratios")]
    pub coeffs: Vec<BigRational>,
    pub offsets: Vec<i64>,
    pub point: SparseSeq,
}

fn ratios<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl HullSample {
    /// `sum alpha_i^2`, so that `||x||_*^2 = 1 + sum alpha_i^2`.
    pub fn coeff_square_sum(&self) -> BigRational {
        self.coeffs.iter().map(|a| a * a).sum()
    }

    /// The hull sample of `T^m(x)`.
    pub fn shifted(&self, m: i64) -> HullSample {
        HullSample {
            coeffs: self.coeffs.clone(),
            offsets: self.offsets.iter().map(|l| l + m).collect(),
            point: self.point.shift(m),
        }
    }
}

pub fn hull_point(coeffs: &[BigRational], offsets: &[i64]) -> Result<HullSample> {
    if coeffs.is_empty() {
        return Err(Error::Simplex("no coefficients".into()));
    }
    if coeffs.len() != offsets.len() {
        return Err(Error::InvalidArgument(format!(
            "{} coefficients for {} offsets",
            coeffs.len(),
            offsets.len()
        )));
    }
    if let Some(a) = coeffs.iter().find(|a| a.is_negative()) {
        return Err(Error::Simplex(format!("negative coefficient {a}")));
    }
    let total = rational::sum(coeffs);
    if !total.is_one() {
        return Err(Error::Simplex(format!("coefficients sum to {total}")));
    }
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("repeated offset".into()));
    }
    let point = SparseSeq::from_entries(
        offsets
            .iter()
            .zip(coeffs)
            .filter(|(_, a)| !a.is_zero())
            .map(|(&l, a)| (l, a.clone())),
    )?;
    Ok(HullSample {
        coeffs: coeffs.to_vec(),
        offsets: offsets.to_vec(),
        point,
    })
}

/// A random hull sample with support size in `1..=max_support`, positive
/// integer weights up to 20, normalised.
pub fn random_hull_sample<R: Rng + ?Sized>(rng: &mut R, max_support: usize) -> HullSample {
    let size = rng.gen_range(1..=max_support.max(1));
    let offsets: Vec<i64> = sample(rng, (2 * OFFSET_RANGE + 1) as usize, size)
        .into_iter()
        .map(|i| i as i64 - OFFSET_RANGE)
        .collect();
    let weights: Vec<i64> = (0..size).map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = weights.iter().sum();
    let coeffs: Vec<BigRational> = weights.iter().map(|&w| ratio(w, total)).collect();
    hull_point(&coeffs, &offsets).expect("valid by construction")
}

/// Uniform average of `e_0, ..., e_{n-1}`.
pub fn uniform_hull_point(n: usize) -> Result<HullSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let coeffs = vec![ratio(1, n as i64); n];
    let offsets: Vec<i64> = (0..n as i64).collect();
    hull_point(&coeffs, &offsets)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Displacement {
    pub n: usize,
    /// `||T x_n - x_n||_1`, exactly `2/n`.
    #[serde(serialize_with = "rational::serde_ratio::serialize")]
    pub ell1: BigRational,
    /// `||T x_n - x_n||_*^2`, exactly `6/n^2`.
    #[serde(serialize_with = "rational::serde_ratio::serialize")]
    pub star_sq: BigRational,
    pub star: f64,
}

/// Displacement of the shift on the uniform hull point `x_n`.
pub fn displacement_decay(n: usize) -> Result<Displacement> {
    let x = uniform_hull_point(n)?.point;
    let d = x.shift(1).sub(&x);
    let star_sq = d.star_norm_sq();
    Ok(Displacement {
        n,
        ell1: d.l1_norm(),
        star: sqrt_to_f64(&star_sq),
        star_sq,
    })
}

/// Horizons at which the exact decay `||T x_n - x_n||_* = sqrt(6)/n` is
/// checked.
pub const DECAY_HORIZONS: [usize; 7] = [1, 2, 3, 10, 100, 1000, 10_000];

/// Runs the seven checks on `samples` random hull samples with support at
/// most `max_support`:
///
/// 1. strict convexity of the star norm;
/// 2. `||x||_1 <= ||x||_* <= sqrt(2) ||x||_1`;
/// 3. `||x||_*^2 = 1 + sum alpha_i^2` and `1 <= ||x||_* <= sqrt(2)`;
/// 4. `T x` is the hull sample with shifted offsets;
/// 5. `||x||_* >= 1`, so the zero sequence is not in the hull;
/// 6. `||T x - x||_* > 0` on every sample while `sqrt(6)/n -> 0`;
/// 7. Busemann convexity along segments between hull samples.
pub fn verify_counterexample(samples: usize, max_support: usize, seed: u64) -> Vec<PropertyReport> {
    let mut rng = seeded_rng(seed);
    let mut hull: Vec<HullSample> = Vec::with_capacity(samples + 1);
    hull.push(hull_point(&[BigRational::one()], &[0]).expect("e_0 is a hull point"));
    while hull.len() < samples.max(1) {
        hull.push(random_hull_sample(&mut rng, max_support));
    }

    let mut reports = vec![strict_convexity_check(samples, seed)];

    let mut equiv = PropertyReport::new("norm-equivalence", 0.0, seed);
    for h in &hull {
        let l1 = h.point.l1_norm();
        let l1_sq = &l1 * &l1;
        let star_sq = h.point.star_norm_sq();
        let two = BigRational::from_integer(BigInt::from(2));
        let ok = l1_sq <= star_sq && star_sq <= &two * &l1_sq;
        equiv.observe(if ok { 0.0 } else { f64::INFINITY }, || format!("{:?}", h.point));
    }
    reports.push(equiv);

    let mut bound = PropertyReport::new("hull-norm-bound", 0.0, seed);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let two = BigRational::from_integer(BigInt::from(2));
    for h in &hull {
        let star_sq = h.point.star_norm_sq();
        let identity = star_sq == BigRational::one() + h.coeff_square_sum();
        let within = star_sq >= BigRational::one() && star_sq <= two;
        let v = sqrt_to_f64(&star_sq);
        lo = lo.min(v);
        hi = hi.max(v);
        bound.observe(if identity && within { 0.0 } else { f64::INFINITY }, || {
            format!("alpha={:?} offsets={:?}", h.coeffs, h.offsets)
        });
    }
    reports.push(bound.detail("min_star_norm", lo).detail("max_star_norm", hi));

    let mut invariance = PropertyReport::new("shift-invariance", 0.0, seed);
    for h in &hull {
        let image = h.point.shift(1);
        let rebuilt = hull_point(&h.coeffs, &h.shifted(1).offsets).map(|s| s.point);
        let ok = rebuilt.is_ok_and(|r| r == image) && image.star_norm_sq() == h.point.star_norm_sq();
        invariance.observe(if ok { 0.0 } else { f64::INFINITY }, || format!("{:?}", h.point));
    }
    reports.push(invariance);

    let mut zero = PropertyReport::new("zero-excluded", 0.0, seed);
    for h in &hull {
        let ok = h.point.star_norm_sq() >= BigRational::one();
        zero.observe(if ok { 0.0 } else { f64::INFINITY }, || format!("{:?}", h.point));
    }
    reports.push(zero);

    let mut displacement = PropertyReport::new("displacement", 0.0, seed);
    let mut min_disp = f64::INFINITY;
    for h in &hull {
        let d_sq = h.point.shift(1).sub(&h.point).star_norm_sq();
        min_disp = min_disp.min(sqrt_to_f64(&d_sq));
        displacement.observe(if d_sq.is_positive() { 0.0 } else { f64::INFINITY }, || {
            format!("fixed point {:?}", h.point)
        });
    }
    for n in DECAY_HORIZONS {
        let d = displacement_decay(n).expect("n >= 1");
        let n_sq = BigRational::from_integer(BigInt::from(n) * BigInt::from(n));
        let exact = d.star_sq * &n_sq == BigRational::from_integer(BigInt::from(6))
            && d.ell1 == ratio(2, n as i64);
        displacement.observe(if exact { 0.0 } else { f64::INFINITY }, || {
            format!("decay at n = {n} is {}", d.star)
        });
    }
    let last = *DECAY_HORIZONS.last().unwrap();
    reports.push(
        displacement
            .detail("min_sampled_displacement", min_disp)
            .detail("decay_horizon", last as f64)
            .detail("decay_displacement", 6f64.sqrt() / last as f64),
    );

    let floats: Vec<Vec<(i64, f64)>> = hull
        .iter()
        .map(|h| h.point.entries().iter().map(|(i, q)| (*i, to_f64(q))).collect())
        .collect();
    let mut busemann = PropertyReport::new("busemann-on-hull", BUSEMANN_TOL, seed);
    for _ in 0..samples {
        let mut pick = || &floats[rng.gen_range(0..floats.len())];
        let (x, y, u, v) = (pick(), pick(), pick(), pick());
        let [t1, t2, t3] = sorted_triple(&mut rng);
        let gap = |t: f64| {
            let mut diff: BTreeMap<i64, f64> = BTreeMap::new();
            for (seq, w) in [(x, 1.0 - t), (y, t), (u, t - 1.0), (v, -t)] {
                for &(i, a) in seq {
                    *diff.entry(i).or_default() += w * a;
                }
            }
            star_norm_dense(&diff.into_values().collect::<Vec<_>>())
        };
        let (d1, d2, d3) = (gap(t1), gap(t2), gap(t3));
        let chord = d1 + (d3 - d1) * (t2 - t1) / (t3 - t1);
        busemann.observe(d2 - chord, || format!("t=({t1}, {t2}, {t3})"));
    }
    reports.push(busemann);
    reports
}

/// Floating view of a hull sample's coefficients, for display.
pub fn coeffs_f64(h: &HullSample) -> Vec<f64> {
    h.coeffs.iter().map(to_f64).collect()
}
