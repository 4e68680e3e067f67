use num_rational::BigRational;
use rand::Rng;

use super::{IsometryDescriptor, PointRef, SparseSeq};
use crate::error::{Error, Result};
use super::hull::min_norm_point;
use crate::rational::{from_f64, ratio, to_f64};
use crate::report::PropertyReport;
use crate::space::{seeded_rng, GeodesicSpace, HullDistance, Isometry, PointKey, SpaceKind};

/// `l1(Z)` renormed by `||x||_* = sqrt((sum |x_k|)^2 + sum |x_k|^2)`, with
/// exact rational points and linear geodesics.
///
/// `window` only bounds the indices used by random sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSeq {
    window: (i64, i64),
}

impl StarSeq {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSpace(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Self { window: (lo, hi) })
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }
}

/// Powers of the shift `T: (x_k) -> (x_{k-1})`; compositions collapse into a
/// single power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftIso(pub i64);

impl Isometry<SparseSeq> for ShiftIso {
    fn apply(&self, p: &SparseSeq) -> SparseSeq {
        p.shift(self.0)
    }
}

impl GeodesicSpace for StarSeq {
    type Point = SparseSeq;
    type Iso = ShiftIso;

    fn kind(&self) -> SpaceKind {
        SpaceKind::StarSeq
    }

    fn distance(&self, x: &SparseSeq, y: &SparseSeq) -> f64 {
        x.sub(y).star_norm()
    }

    fn geodesic(&self, x: &SparseSeq, y: &SparseSeq, t: f64) -> SparseSeq {
        x.lerp(y, &from_f64(t))
    }

    fn midpoint(&self, x: &SparseSeq, y: &SparseSeq) -> SparseSeq {
        x.lerp(y, &ratio(1, 2))
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> SparseSeq {
        let (lo, hi) = self.window;
        let width = (hi - lo + 1) as usize;
        let size = rng.gen_range(1..=4usize.min(width));
        let mut indices: Vec<i64> = Vec::with_capacity(size);
        while indices.len() < size {
            let i = rng.gen_range(lo..=hi);
            if !indices.contains(&i) {
                indices.push(i);
            }
        }
        let entries = indices.into_iter().map(|i| {
            let q = rng.gen_range(1..=8);
            let mut p = rng.gen_range(-8..=8);
            if p == 0 {
                p = 1;
            }
            (i, ratio(p, q))
        });
        SparseSeq::from_entries(entries).expect("distinct indices")
    }

    fn key(&self, p: &SparseSeq) -> PointKey {
        PointKey::Exact(p.canonical())
    }

    fn bind(&self, iso: &IsometryDescriptor) -> Result<ShiftIso> {
        let incompatible = |reason: &str| Error::IncompatibleIsometry {
            iso: iso.to_string(),
            space: SpaceKind::StarSeq,
            reason: reason.into(),
        };
        match iso {
            IsometryDescriptor::Identity => Ok(ShiftIso(0)),
            IsometryDescriptor::Shift { power } => Ok(ShiftIso(*power)),
            IsometryDescriptor::Composition { parts } => parts
                .iter()
                .try_fold(ShiftIso(0), |acc, p| Ok(ShiftIso(acc.0 + self.bind(p)?.0))),
            IsometryDescriptor::Rotation { .. } | IsometryDescriptor::Translation { .. } => {
                Err(incompatible("only shifts act on star-seq"))
            }
            IsometryDescriptor::LegPermutation { .. } => {
                Err(incompatible("leg permutations act on trees only"))
            }
        }
    }

    fn default_isometries(&self) -> Vec<(String, IsometryDescriptor)> {
        vec![
            ("identity".to_owned(), IsometryDescriptor::Identity),
            ("shift".to_owned(), IsometryDescriptor::shift(1)),
            ("shift-back2".to_owned(), IsometryDescriptor::shift(-2)),
        ]
    }

    fn linear_mean(&self, atoms: &[(SparseSeq, BigRational)]) -> Option<SparseSeq> {
        Some(
            atoms
                .iter()
                .fold(SparseSeq::zero(), |acc, (p, m)| acc.add(&p.scale(m))),
        )
    }

    /// The Euclidean projection in coordinates gives a hull point whose
    /// star distance is the upper bound; `||v||_* >= sqrt(2) ||v||_2` turns
    /// the Euclidean distance into the lower bound.
    fn hull_distance(&self, points: &[SparseSeq], candidate: &SparseSeq) -> HullDistance {
        let mut indices: Vec<i64> = points
            .iter()
            .chain(std::iter::once(candidate))
            .flat_map(|p| p.entries().iter().map(|(i, _)| *i))
            .collect();
        indices.sort_unstable();
        indices.dedup();
        let dense = |p: &SparseSeq| -> Vec<f64> {
            indices.iter().map(|&i| to_f64(&p.get(i))).collect()
        };
        let c = dense(candidate);
        let shifted: Vec<Vec<f64>> = points
            .iter()
            .map(|p| dense(p).iter().zip(&c).map(|(a, b)| a - b).collect())
            .collect();
        let (_, x) = min_norm_point(&shifted);
        let l2 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        HullDistance {
            lower: std::f64::consts::SQRT_2 * l2,
            upper: star_norm_dense(&x),
        }
    }

    fn to_ref(&self, p: &SparseSeq) -> PointRef {
        PointRef::Seq(p.clone())
    }

    fn from_ref(&self, p: &PointRef) -> Result<SparseSeq> {
        match p {
            PointRef::Seq(s) => Ok(s.clone()),
            other => Err(Error::KindMismatch {
                expected: SpaceKind::StarSeq,
                found: other.kind(),
            }),
        }
    }
}

/// `||x||_*` of a dense window of a sequence, in floating point.
pub fn star_norm_dense(x: &[f64]) -> f64 {
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    let l2: f64 = x.iter().map(|v| v * v).sum();
    (l1 * l1 + l2).sqrt()
}

/// Samples pairs of distinct `*`-unit vectors and `lambda` in `(0.05, 0.95)`
/// and records the gap `1 - ||(1 - lambda) x + lambda y||_*`. The report
/// passes iff every gap is strictly positive; the smallest gap is stored
/// under `min_gap`.
pub fn strict_convexity_check(samples: usize, seed: u64) -> PropertyReport {
    const WIDTH: usize = 8;
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("strict-convexity", 0.0, seed);
    let mut min_gap = f64::INFINITY;
    let unit = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let v: Vec<f64> = (0..WIDTH)
            .map(|_| if rng.gen_bool(0.5) { rng.gen_range(-1.0..1.0) } else { 0.0 })
            .collect();
        let n = star_norm_dense(&v);
        if n > 1e-3 {
            return v.into_iter().map(|c| c / n).collect::<Vec<f64>>();
        }
    };
    for _ in 0..samples {
        let (x, y) = loop {
            let x = unit(&mut rng);
            let y = unit(&mut rng);
            if x != y {
                break (x, y);
            }
        };
        let lambda = rng.gen_range(0.05..0.95);
        let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| (1.0 - lambda) * a + lambda * b).collect();
        let gap = 1.0 - star_norm_dense(&z);
        min_gap = min_gap.min(gap);
        let violation = if gap > 0.0 { 0.0 } else { f64::MIN_POSITIVE - gap };
        report.observe(violation, || format!("x={x:?} y={y:?} lambda={lambda}"));
    }
    report.set_detail("min_gap", min_gap);
    report
}
