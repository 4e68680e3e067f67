//! Orbits of a single isometry, visit statistics and the fixed-point
//! pipeline built on Cesàro averages and the barycenter map.

use serde::{Deserialize, Serialize};

use crate::barycenter::{beta, BaryConfig};
use crate::error::{Error, Result};
use crate::space::{GeodesicSpace, Isometry};
use crate::spaces::PointRef;
use crate::wasserstein::{pushforward, w1_atomic, AtomicMeasure};

/// Slack on ball membership, so that points on the sphere computed with
/// rounding still count as inside.
pub const BALL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum TargetSet<P> {
    Ball { center: P, radius: f64 },
    /// Finite set; a point is inside when within `tolerance` of a member.
    Points { points: Vec<P>, tolerance: f64 },
}

impl<P: Clone> TargetSet<P> {
    pub fn ball(center: P, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidArgument(format!("ball radius {radius} is negative")));
        }
        Ok(TargetSet::Ball { center, radius })
    }

    pub fn points(points: Vec<P>, tolerance: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("target point set"));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance {tolerance} is negative")));
        }
        Ok(TargetSet::Points { points, tolerance })
    }

    pub fn contains<S: GeodesicSpace<Point = P>>(&self, space: &S, p: &P) -> bool {
        match self {
            TargetSet::Ball { center, radius } => space.distance(center, p) <= radius + BALL_SLACK,
            TargetSet::Points { points, tolerance } => {
                points.iter().any(|q| space.distance(q, p) <= *tolerance)
            }
        }
    }

    /// `2 r` for a ball (an upper bound on its diameter), the largest
    /// pairwise distance for a finite set.
    pub fn diameter<S: GeodesicSpace<Point = P>>(&self, space: &S) -> f64 {
        match self {
            TargetSet::Ball { radius, .. } => 2.0 * radius,
            TargetSet::Points { points, .. } => points
                .iter()
                .enumerate()
                .flat_map(|(i, a)| points[i + 1..].iter().map(move |b| (a, b)))
                .map(|(a, b)| space.distance(a, b))
                .fold(0.0, f64::max),
        }
    }

    pub fn to_doc<S: GeodesicSpace<Point = P>>(&self, space: &S) -> TargetDoc {
        match self {
            TargetSet::Ball { center, radius } => TargetDoc::Ball {
                center: space.to_ref(center),
                radius: *radius,
            },
            TargetSet::Points { points, tolerance } => TargetDoc::Points {
                points: points.iter().map(|p| space.to_ref(p)).collect(),
                tolerance: *tolerance,
            },
        }
    }

    pub fn from_doc<S: GeodesicSpace<Point = P>>(space: &S, doc: &TargetDoc) -> Result<Self> {
        match doc {
            TargetDoc::Ball { center, radius } => Self::ball(space.from_ref(center)?, *radius),
            TargetDoc::Points { points, tolerance } => Self::points(
                points.iter().map(|p| space.from_ref(p)).collect::<Result<_>>()?,
                *tolerance,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TargetDoc {
    Ball { center: PointRef, radius: f64 },
    Points { points: Vec<PointRef>, tolerance: f64 },
}

/// `x_0, phi(x_0), ..., phi^{N-1}(x_0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTrace<P> {
    points: Vec<P>,
}

impl<P: Clone> OrbitTrace<P> {
    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn horizon(&self) -> usize {
        self.points.len()
    }

    pub fn base(&self) -> &P {
        &self.points[0]
    }

    /// `D = { k : phi^k(x_0) in target }` within the horizon.
    pub fn visits<S: GeodesicSpace<Point = P>>(&self, space: &S, target: &TargetSet<P>) -> VisitSet {
        VisitSet {
            hits: self.points.iter().map(|p| target.contains(space, p)).collect(),
        }
    }
}

pub fn orbit<S: GeodesicSpace>(
    _space: &S,
    iso: &S::Iso,
    x0: &S::Point,
    horizon: usize,
) -> Result<OrbitTrace<S::Point>> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("orbit horizon must be at least 1".into()));
    }
    let mut points = Vec::with_capacity(horizon);
    points.push(x0.clone());
    for i in 1..horizon {
        let next = iso.apply(&points[i - 1]);
        points.push(next);
    }
    Ok(OrbitTrace { points })
}

/// Indicator of a set of times `D` within `0..horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitSet {
    hits: Vec<bool>,
}

impl VisitSet {
    pub fn from_indices(horizon: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut hits = vec![false; horizon];
        for i in indices {
            if i < horizon {
                hits[i] = true;
            }
        }
        Self { hits }
    }

    pub fn horizon(&self) -> usize {
        self.hits.len()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.hits.get(k).copied().unwrap_or(false)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.hits.iter().enumerate().filter(|(_, h)| **h).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.hits.iter().filter(|h| **h).count()
    }

    /// Sorted elements of `D - D = { d - d' : d >= d' }` below `bound`.
    pub fn differences(&self, bound: usize) -> Vec<usize> {
        let idx: Vec<usize> = self.indices().collect();
        let mut seen = vec![false; bound];
        for (a, &hi) in idx.iter().enumerate() {
            for &lo in &idx[..=a] {
                if hi - lo < bound {
                    seen[hi - lo] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect()
    }
}

/// `max_{0 <= l <= L} |D ∩ [l, l + K)| / K`, a finite-horizon lower estimate
/// of the upper Banach density of `D`.
pub fn banach_density_estimate(visits: &VisitSet, window: usize, shifts: usize) -> Result<f64> {
    banach_density_from(visits, 0, window, shifts)
}

/// As [`banach_density_estimate`] with every window moved right by `start`,
/// i.e. over the family `{start + l, ..., start + l + K - 1}`.
pub fn banach_density_from(
    visits: &VisitSet,
    start: usize,
    window: usize,
    shifts: usize,
) -> Result<f64> {
    if window == 0 {
        return Err(Error::InvalidArgument("density window must be at least 1".into()));
    }
    let needed = start + window + shifts;
    if needed > visits.horizon() {
        return Err(Error::HorizonTooShort {
            needed,
            available: visits.horizon(),
        });
    }
    let mut prefix = Vec::with_capacity(visits.horizon() + 1);
    prefix.push(0usize);
    for &h in &visits.hits {
        prefix.push(prefix.last().unwrap() + usize::from(h));
    }
    let best = (start..=start + shifts)
        .map(|l| prefix[l + window] - prefix[l])
        .max()
        .unwrap_or(0);
    Ok(best as f64 / window as f64)
}

/// Uniform measure on `phi^{start}(x_0), ..., phi^{start+len-1}(x_0)`;
/// repeated points merge.
pub fn empirical_measure<S: GeodesicSpace>(
    space: &S,
    trace: &OrbitTrace<S::Point>,
    start: usize,
    len: usize,
) -> Result<AtomicMeasure<S::Point>> {
    if len == 0 {
        return Err(Error::Empty("empirical measure window"));
    }
    if start + len > trace.horizon() {
        return Err(Error::HorizonTooShort {
            needed: start + len,
            available: trace.horizon(),
        });
    }
    AtomicMeasure::uniform(space, &trace.points[start..start + len])
}

/// `W1(phi_* mu, mu)`; zero exactly when `mu` is invariant.
pub fn invariance_residual<S: GeodesicSpace>(
    space: &S,
    iso: &S::Iso,
    mu: &AtomicMeasure<S::Point>,
) -> f64 {
    w1_atomic(space, &pushforward(space, iso, mu), mu)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixedPointParams {
    /// Strictly increasing horizons `N_1 < N_2 < ...`.
    pub schedule: Vec<usize>,
    pub tol: f64,
    pub bary: BaryConfig,
}

impl Default for FixedPointParams {
    fn default() -> Self {
        Self {
            schedule: vec![10, 100, 1000],
            tol: 1e-6,
            bary: BaryConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    Diverged,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub horizon: usize,
    /// `d(phi(x_N), x_N)`.
    pub residual: f64,
    /// `W1(phi_* mu_N, mu_N)` of the Cesàro measure.
    pub invariance: f64,
    /// Distance to the previous iterate of the schedule.
    pub cauchy_gap: Option<f64>,
    pub k_used: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport<P> {
    pub status: SolveStatus,
    pub point: P,
    pub residual_series: Vec<ResidualEntry>,
    pub density: f64,
    /// Window length and shift horizon used for `density`.
    pub density_window: (usize, usize),
}

/// Runs the Cesàro/barycenter pipeline along the schedule.
///
/// `Converged` needs a positive density estimate for `target`, a final
/// residual below `tol` and a final Cauchy gap below `tol`. `Diverged` means
/// the residual stayed at or above `tol` without decreasing over the
/// schedule. Everything else is `Inconclusive`.
pub fn fixed_point_solve<S: GeodesicSpace>(
    space: &S,
    iso: &S::Iso,
    x0: &S::Point,
    target: &TargetSet<S::Point>,
    params: &FixedPointParams,
) -> Result<FixedPointReport<S::Point>> {
    let schedule = &params.schedule;
    if schedule.is_empty() || schedule[0] == 0 || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "schedule must be a nonempty, strictly increasing list of positive horizons".into(),
        ));
    }
    if !(params.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let horizon = *schedule.last().unwrap();
    let trace = orbit(space, iso, x0, horizon)?;
    let visits = trace.visits(space, target);
    let window = (horizon / 2).max(1);
    let shifts = horizon - window;
    let density = banach_density_estimate(&visits, window, shifts)?;

    let mut series = Vec::with_capacity(schedule.len());
    let mut previous: Option<S::Point> = None;
    for &n in schedule {
        let mu = empirical_measure(space, &trace, 0, n)?;
        let outcome = beta(space, &mu, &params.bary)
            .map_err(|e| e.context(format!("barycenter of the Cesàro measure at N = {n}")))?;
        let x = outcome.point;
        series.push(ResidualEntry {
            horizon: n,
            residual: space.distance(&iso.apply(&x), &x),
            invariance: invariance_residual(space, iso, &mu),
            cauchy_gap: previous.as_ref().map(|p| space.distance(p, &x)),
            k_used: outcome.k_used,
        });
        previous = Some(x);
    }

    let first = &series[0];
    let last = series.last().unwrap();
    let status = if density > 0.0
        && last.residual < params.tol
        && last.cauchy_gap.is_some_and(|g| g < params.tol)
    {
        SolveStatus::Converged
    } else if last.residual >= params.tol && last.residual >= first.residual {
        SolveStatus::Diverged
    } else {
        SolveStatus::Inconclusive
    };
    Ok(FixedPointReport {
        status,
        point: previous.unwrap(),
        residual_series: series,
        density,
        density_window: (window, shifts),
    })
}

/// Evidence that an orbit is bounded, from the syndeticity of `D - D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCertificate {
    /// Smallest `k0 >= 1` such that every run of `k0` consecutive integers
    /// in `[0, search_horizon]` meets `D - D`.
    pub k0: usize,
    /// `max { d(x_0, phi^k(x_0)) : 0 <= k <= k0 }`.
    pub c: f64,
    pub diam_b: f64,
    pub bound: f64,
    /// Largest `d(x_0, phi^k(x_0))` over the whole trace.
    pub max_distance: f64,
    pub search_horizon: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Scans `D - D` for bounded gaps and checks `d(x_0, phi^k(x_0)) <=
/// diam(B) + C` along the trace.
///
/// Gaps are only trusted when the scanned range holds at least two blocks
/// of length `k0`; otherwise the certificate fails.
pub fn orbit_bound_certificate<S: GeodesicSpace>(
    space: &S,
    trace: &OrbitTrace<S::Point>,
    b: &TargetSet<S::Point>,
    search_horizon: usize,
) -> Result<OrbitCertificate> {
    if search_horizon == 0 {
        return Err(Error::InvalidArgument("search horizon must be at least 1".into()));
    }
    if trace.horizon() <= search_horizon {
        return Err(Error::HorizonTooShort {
            needed: search_horizon + 1,
            available: trace.horizon(),
        });
    }
    let visits = trace.visits(space, b);
    if visits.count() == 0 {
        return Err(Error::EmptyVisitSet);
    }
    let diffs = visits.differences(search_horizon + 1);
    let inner_gap = diffs.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(1);
    let tail_gap = search_horizon - diffs.last().copied().unwrap_or(0) + 1;
    let k0 = inner_gap.max(tail_gap);

    let x0 = trace.base();
    let dists: Vec<f64> = trace.points().iter().map(|p| space.distance(x0, p)).collect();
    let c = dists[..=k0.min(dists.len() - 1)].iter().copied().fold(0.0, f64::max);
    let diam_b = b.diameter(space);
    let bound = diam_b + c;
    let max_distance = dists.iter().copied().fold(0.0, f64::max);

    let reason = if 2 * k0 > search_horizon {
        Some(format!(
            "D - D has a gap of {k0} within a scan of {search_horizon}; no bounded gaps observed"
        ))
    } else if max_distance > bound + BALL_SLACK {
        Some(format!("orbit reaches {max_distance}, above diam(B) + C = {bound}"))
    } else {
        None
    };
    Ok(OrbitCertificate {
        k0,
        c,
        diam_b,
        bound,
        max_distance,
        search_horizon,
        certified: reason.is_none(),
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::spaces::{Euclidean, IsometryDescriptor, SparseSeq, StarSeq};

    fn plane() -> Euclidean {
        Euclidean::new(2).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn cube_roots_of_unity() {
        let e = plane();
        let rot = e.bind(&IsometryDescriptor::rotation_turns(ratio(1, 3))).unwrap();
        let tr = orbit(&e, &rot, &vec![1.0, 0.0], 3).unwrap();
        let s = 3f64.sqrt() / 2.0;
        assert!(close(&tr.points()[1], &[-0.5, s]));
        assert!(close(&tr.points()[2], &[-0.5, -s]));
    }

    #[test]
    fn shift_orbit() {
        let s = StarSeq::new(0, 10).unwrap();
        let t = s.bind(&IsometryDescriptor::shift(1)).unwrap();
        let tr = orbit(&s, &t, &SparseSeq::unit(0), 3).unwrap();
        assert_eq!(tr.points(), &[SparseSeq::unit(0), SparseSeq::unit(1), SparseSeq::unit(2)]);
    }

    #[test]
    fn translation_orbit() {
        let e = plane();
        let t = e.bind(&IsometryDescriptor::translation(vec![1.0, 0.0])).unwrap();
        let tr = orbit(&e, &t, &vec![0.0, 0.0], 3).unwrap();
        assert_eq!(tr.points(), &[vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]);
        assert!(orbit(&e, &t, &vec![0.0, 0.0], 0).is_err());
    }

    #[test]
    fn density_of_multiples_of_three() {
        let d = VisitSet::from_indices(600, (0..600).step_by(3));
        assert_eq!(banach_density_estimate(&d, 300, 300).unwrap(), 1.0 / 3.0);
        let all = VisitSet::from_indices(20, 0..20);
        assert_eq!(banach_density_estimate(&all, 10, 10).unwrap(), 1.0);
        assert!(matches!(
            banach_density_estimate(&d, 300, 301),
            Err(Error::HorizonTooShort { needed: 601, available: 600 })
        ));
    }

    #[test]
    fn translation_visits_are_sparse() {
        let e = plane();
        let t = e.bind(&IsometryDescriptor::translation(vec![1.0, 0.0])).unwrap();
        let tr = orbit(&e, &t, &vec![0.0, 0.0], 2000).unwrap();
        let ball = TargetSet::ball(vec![0.0, 0.0], 1.0).unwrap();
        let d = tr.visits(&e, &ball);
        let est = banach_density_estimate(&d, 1000, 1000).unwrap();
        assert!(est <= 2.0 / 1000.0);
    }

    #[test]
    fn empirical_measures() {
        let s = StarSeq::new(0, 10).unwrap();
        let t = s.bind(&IsometryDescriptor::shift(1)).unwrap();
        let tr = orbit(&s, &t, &SparseSeq::unit(0), 10).unwrap();
        let mu = empirical_measure(&s, &tr, 0, 4).unwrap();
        let units: Vec<SparseSeq> = (0..4).map(SparseSeq::unit).collect();
        assert_eq!(mu, AtomicMeasure::uniform(&s, &units).unwrap());
        assert_eq!(empirical_measure(&s, &tr, 3, 1).unwrap(), AtomicMeasure::dirac(SparseSeq::unit(3)));
        assert!(empirical_measure(&s, &tr, 0, 0).is_err());
        assert!(empirical_measure(&s, &tr, 8, 3).is_err());
    }

    #[test]
    fn rotation_cycle_merges_and_is_invariant() {
        let e = plane();
        let rot = e.bind(&IsometryDescriptor::rotation_turns(ratio(1, 3))).unwrap();
        let tr = orbit(&e, &rot, &vec![1.0, 0.0], 30).unwrap();
        let mu = empirical_measure(&e, &tr, 0, 30).unwrap();
        assert_eq!(mu.len(), 3);
        assert!(mu.masses().all(|m| *m == ratio(1, 3)));
        assert!(invariance_residual(&e, &rot, &mu) < 1e-12);
    }

    #[test]
    fn shift_cesaro_residual() {
        let s = StarSeq::new(0, 10).unwrap();
        let t = s.bind(&IsometryDescriptor::shift(1)).unwrap();
        let tr = orbit(&s, &t, &SparseSeq::unit(0), 20).unwrap();
        for k in [1usize, 2, 5, 10] {
            let mu = empirical_measure(&s, &tr, 0, k).unwrap();
            let r = invariance_residual(&s, &t, &mu);
            assert!((r - 6f64.sqrt() / k as f64).abs() < 1e-12, "k={k}: {r}");
        }
    }

    #[test]
    fn rotation_solver_finds_origin() {
        let e = plane();
        let rot = e.bind(&IsometryDescriptor::rotation_turns(ratio(1, 3))).unwrap();
        let params = FixedPointParams {
            schedule: vec![3, 30, 300],
            tol: 1e-10,
            bary: BaryConfig::default(),
        };
        let ball = TargetSet::ball(vec![0.0, 0.0], 1.0).unwrap();
        let rep = fixed_point_solve(&e, &rot, &vec![1.0, 0.0], &ball, &params).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert!(rep.point.iter().all(|v| v.abs() < 1e-10));
        assert_eq!(rep.density, 1.0);
    }

    #[test]
    fn identity_solver_returns_start() {
        let e = plane();
        let id = e.bind(&IsometryDescriptor::Identity).unwrap();
        let x0 = vec![0.3, -2.0];
        let ball = TargetSet::ball(x0.clone(), 0.5).unwrap();
        let params = FixedPointParams {
            schedule: vec![1, 5],
            ..FixedPointParams::default()
        };
        let rep = fixed_point_solve(&e, &id, &x0, &ball, &params).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert_eq!(rep.point, x0);
        assert_eq!(rep.residual_series[1].residual, 0.0);
    }

    #[test]
    fn shift_solver_is_never_converged() {
        let s = StarSeq::new(0, 10).unwrap();
        let t = s.bind(&IsometryDescriptor::shift(1)).unwrap();
        let params = FixedPointParams {
            schedule: vec![10, 20, 40],
            ..FixedPointParams::default()
        };
        let ball = TargetSet::ball(SparseSeq::zero(), 1.0).unwrap();
        let rep = fixed_point_solve(&s, &t, &SparseSeq::unit(0), &ball, &params).unwrap();
        assert_ne!(rep.status, SolveStatus::Converged);
        assert_eq!(rep.density, 0.0);
        for e in &rep.residual_series {
            assert!((e.residual - 6f64.sqrt() / e.horizon as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn schedule_validation() {
        let e = plane();
        let id = e.bind(&IsometryDescriptor::Identity).unwrap();
        let ball = TargetSet::ball(vec![0.0, 0.0], 1.0).unwrap();
        for schedule in [vec![], vec![0, 3], vec![5, 5], vec![9, 3]] {
            let params = FixedPointParams {
                schedule,
                ..FixedPointParams::default()
            };
            assert!(fixed_point_solve(&e, &id, &vec![0.0, 0.0], &ball, &params).is_err());
        }
    }

    #[test]
    fn certificate_for_fifth_turn() {
        let e = plane();
        let rot = e.bind(&IsometryDescriptor::rotation_turns(ratio(1, 5))).unwrap();
        let x0 = vec![1.0, 0.0];
        let tr = orbit(&e, &rot, &x0, 201).unwrap();
        let b = TargetSet::ball(x0.clone(), 0.1).unwrap();
        let cert = orbit_bound_certificate(&e, &tr, &b, 200).unwrap();
        assert_eq!(cert.k0, 5);
        assert!(cert.certified);
        assert!(cert.c <= 2.0 + 1e-12);
        assert!(cert.max_distance <= cert.bound);
    }

    #[test]
    fn certificate_for_identity() {
        let e = plane();
        let id = e.bind(&IsometryDescriptor::Identity).unwrap();
        let tr = orbit(&e, &id, &vec![1.0, 1.0], 50).unwrap();
        let b = TargetSet::ball(vec![1.0, 1.0], 0.1).unwrap();
        let cert = orbit_bound_certificate(&e, &tr, &b, 40).unwrap();
        assert_eq!(cert.k0, 1);
        assert_eq!(cert.c, 0.0);
        assert_eq!(cert.max_distance, 0.0);
        assert!(cert.certified);
    }

    #[test]
    fn certificate_fails_for_translation() {
        let e = plane();
        let t = e.bind(&IsometryDescriptor::translation(vec![1.0, 0.0])).unwrap();
        let tr = orbit(&e, &t, &vec![0.0, 0.0], 201).unwrap();
        let b = TargetSet::ball(vec![0.0, 0.0], 1.0).unwrap();
        let cert = orbit_bound_certificate(&e, &tr, &b, 200).unwrap();
        assert!(!cert.certified);

        let far = TargetSet::ball(vec![-50.0, 0.0], 1.0).unwrap();
        assert!(matches!(
            orbit_bound_certificate(&e, &tr, &far, 200),
            Err(Error::EmptyVisitSet)
        ));
    }

    #[test]
    fn differences_of_visits() {
        let d = VisitSet::from_indices(20, [2, 5, 11]);
        assert_eq!(d.differences(20), vec![0, 3, 6, 9]);
    }
}
