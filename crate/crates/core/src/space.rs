//! The metric-space-with-bicombing contract and sampled verifiers for the
//! axioms a conical geodesic bicombing has to satisfy.

use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::PropertyReport;
use crate::spaces::{IsometryDescriptor, PointRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Euclidean,
    StarSeq,
    Tree,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::StarSeq => "star-seq",
            SpaceKind::Tree => "tree",
        })
    }
}

/// Grid used to identify floating payloads that differ only by rounding.
pub const FLOAT_KEY_RESOLUTION: f64 = 1e-12;

/// Canonical, hashable identity of a point. Floating payloads are snapped to
/// a `1e-12` grid, rational payloads compare exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKey {
    Grid(Vec<i64>),
    Exact(String),
}

impl PointKey {
    pub fn from_floats(values: impl IntoIterator<Item = f64>) -> Self {
        PointKey::Grid(
            values
                .into_iter()
                .map(|v| {
                    let snapped = (v / FLOAT_KEY_RESOLUTION).round();
                    // -0.0 and 0.0 must collide
                    if snapped == 0.0 { 0 } else { snapped as i64 }
                })
                .collect(),
        )
    }
}

/// A map of a space into itself that is expected to be an isometry.
pub trait Isometry<P> {
    fn apply(&self, p: &P) -> P;

    fn apply_n(&self, p: &P, n: usize) -> P
    where
        P: Clone,
    {
        let mut q = p.clone();
        for _ in 0..n {
            q = self.apply(&q);
        }
        q
    }
}

/// Lower and upper bounds on a point-to-hull distance; equal when the space
/// computes it exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullDistance {
    pub lower: f64,
    pub upper: f64,
}

impl HullDistance {
    pub fn exact(d: f64) -> Self {
        Self { lower: d, upper: d }
    }
}

/// A metric space equipped with a conical geodesic bicombing.
pub trait GeodesicSpace: Sync {
    type Point: Clone + fmt::Debug + PartialEq + Send + Sync;
    type Iso: Isometry<Self::Point> + fmt::Debug + Clone + Sync;

    fn kind(&self) -> SpaceKind;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> f64;

    /// `sigma_xy(t)`. Callers guarantee `t` in `[0, 1]`; use
    /// [`geodesic_point`] for a checked entry point.
    fn geodesic(&self, x: &Self::Point, y: &Self::Point, t: f64) -> Self::Point;

    fn midpoint(&self, x: &Self::Point, y: &Self::Point) -> Self::Point {
        self.geodesic(x, y, 0.5)
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Point;

    fn key(&self, p: &Self::Point) -> PointKey;

    fn bind(&self, iso: &IsometryDescriptor) -> Result<Self::Iso>;

    /// Isometries every instance of this space carries, used by the sampled
    /// isometry and equivariance checks.
    fn default_isometries(&self) -> Vec<(String, IsometryDescriptor)>;

    /// Mass-weighted average for spaces with a linear structure, `None`
    /// otherwise.
    fn linear_mean(&self, _atoms: &[(Self::Point, BigRational)]) -> Option<Self::Point> {
        None
    }

    /// Bracket on the distance from `candidate` to the closed convex hull of
    /// `points`. `points` is nonempty.
    fn hull_distance(&self, points: &[Self::Point], candidate: &Self::Point) -> HullDistance;

    fn to_ref(&self, p: &Self::Point) -> PointRef;

    #[allow(clippy::wrong_self_convention)]
    fn from_ref(&self, p: &PointRef) -> Result<Self::Point>;
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Checked `sigma_xy(t)`.
pub fn geodesic_point<S: GeodesicSpace>(
    space: &S,
    x: &S::Point,
    y: &S::Point,
    t: f64,
) -> Result<S::Point> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange(t));
    }
    Ok(space.geodesic(x, y, t))
}

/// Symmetry, identity of indiscernibles on the diagonal and the triangle
/// inequality on sampled triples.
pub fn check_metric_axioms<S: GeodesicSpace>(
    space: &S,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("metric", tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let z = space.sample_point(&mut rng);
        let dxy = space.distance(&x, &y);
        let dyx = space.distance(&y, &x);
        let dxz = space.distance(&x, &z);
        let dzy = space.distance(&z, &y);
        let violation = (dxy - dyx)
            .abs()
            .max(dxy - dxz - dzy)
            .max(space.distance(&x, &x))
            .max(-dxy);
        report.observe(violation, || format!("x={x:?} y={y:?} z={z:?}"));
    }
    report
}

/// `|d(sigma_xy(s), sigma_xy(t)) - |s - t| d(x, y)|` together with the
/// endpoint conditions.
pub fn check_geodesic_speed<S: GeodesicSpace>(
    space: &S,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("constant-speed", tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let s: f64 = rng.gen();
        let t: f64 = rng.gen();
        let d = space.distance(&x, &y);
        let a = space.geodesic(&x, &y, s);
        let b = space.geodesic(&x, &y, t);
        let speed = (space.distance(&a, &b) - (s - t).abs() * d).abs();
        let ends = space
            .distance(&space.geodesic(&x, &y, 0.0), &x)
            .max(space.distance(&space.geodesic(&x, &y, 1.0), &y));
        report.observe(speed.max(ends), || {
            format!("x={x:?} y={y:?} s={s} t={t}")
        });
    }
    report
}

/// `d(sigma_xy(t), sigma_x'y'(t)) <= (1 - t) d(x, x') + t d(y, y')`.
pub fn check_conical<S: GeodesicSpace>(
    space: &S,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("conical", tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let x2 = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let y2 = space.sample_point(&mut rng);
        let t: f64 = rng.gen();
        let lhs = space.distance(&space.geodesic(&x, &y, t), &space.geodesic(&x2, &y2, t));
        let rhs = (1.0 - t) * space.distance(&x, &x2) + t * space.distance(&y, &y2);
        report.observe(lhs - rhs, || {
            format!("x={x:?} x'={x2:?} y={y:?} y'={y2:?} t={t}")
        });
    }
    report
}

/// `sigma_xy(1/2) = sigma_yx(1/2)`.
pub fn check_midpoint_property<S: GeodesicSpace>(
    space: &S,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("midpoint", tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let gap = space.distance(&space.midpoint(&x, &y), &space.midpoint(&y, &x));
        report.observe(gap, || format!("x={x:?} y={y:?}"));
    }
    report
}

/// Convexity of `t -> d(sigma(t), tau(t))` at three sampled parameters.
pub fn check_busemann<S: GeodesicSpace>(
    space: &S,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new("busemann", tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let x2 = space.sample_point(&mut rng);
        let y2 = space.sample_point(&mut rng);
        let [t1, t2, t3] = sorted_triple(&mut rng);
        let f = |t: f64| space.distance(&space.geodesic(&x, &y, t), &space.geodesic(&x2, &y2, t));
        let chord = ((t3 - t2) * f(t1) + (t2 - t1) * f(t3)) / (t3 - t1);
        report.observe(f(t2) - chord, || {
            format!("sigma=({x:?},{y:?}) tau=({x2:?},{y2:?}) t=({t1},{t2},{t3})")
        });
    }
    report
}

/// Three strictly increasing parameters in `[0, 1]`.
pub fn sorted_triple<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let mut t: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        t.sort_by(|a, b| a.total_cmp(b));
        if t[0] < t[1] && t[1] < t[2] {
            return t;
        }
    }
}

/// Distance preservation of a bound isometry on sampled pairs.
pub fn check_isometry<S: GeodesicSpace>(
    space: &S,
    name: &str,
    iso: &S::Iso,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new(format!("isometry:{name}"), tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let gap = (space.distance(&iso.apply(&x), &iso.apply(&y)) - space.distance(&x, &y)).abs();
        report.observe(gap, || format!("x={x:?} y={y:?}"));
    }
    report
}

/// `d(phi(sigma_xy(t)), sigma_{phi x, phi y}(t))` on sampled inputs.
pub fn check_equivariance<S: GeodesicSpace>(
    space: &S,
    name: &str,
    iso: &S::Iso,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let mut rng = seeded_rng(seed);
    let mut report = PropertyReport::new(format!("equivariance:{name}"), tol, seed);
    for _ in 0..samples {
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let t: f64 = rng.gen();
        let lhs = iso.apply(&space.geodesic(&x, &y, t));
        let rhs = space.geodesic(&iso.apply(&x), &iso.apply(&y), t);
        report.observe(space.distance(&lhs, &rhs), || format!("x={x:?} y={y:?} t={t}"));
    }
    report
}

/// Random points of `A_depth`, where `A_1 = A` and
/// `A_{k+1} = { sigma_xy(t) : x, y in A_k }`.
pub fn convex_hull_sample<S: GeodesicSpace, R: Rng + ?Sized>(
    space: &S,
    generators: &[S::Point],
    depth: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<S::Point>> {
    if generators.is_empty() {
        return Err(Error::Empty("convex hull generators"));
    }
    if depth == 0 || count == 0 {
        return Err(Error::InvalidArgument(
            "convex hull depth and count must be at least 1".into(),
        ));
    }
    Ok((0..count)
        .map(|_| hull_draw(space, generators, depth, rng))
        .collect())
}

fn hull_draw<S: GeodesicSpace, R: Rng + ?Sized>(
    space: &S,
    generators: &[S::Point],
    depth: usize,
    rng: &mut R,
) -> S::Point {
    if depth == 1 {
        return generators[rng.gen_range(0..generators.len())].clone();
    }
    let x = hull_draw(space, generators, depth - 1, rng);
    let y = hull_draw(space, generators, depth - 1, rng);
    let t: f64 = rng.gen();
    space.geodesic(&x, &y, t)
}
