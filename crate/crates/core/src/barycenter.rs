//! Barycenters of finite tuples and of rational atomic measures, built from
//! the midpoint map by iterated deletion.
//!
//! `b_2(x, y)` is the midpoint. For `n >= 3` the tuple `x` is replaced by
//! `(b_{n-1}(x minus x_1), ..., b_{n-1}(x minus x_n))` until its diameter
//! drops below the tuple tolerance. The barycenter of `(1/n) sum delta_{x_i}`
//! is the limit of `b_{nk}` applied to `k` concatenated copies of `x`.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::PropertyReport;
use crate::rational::{from_f64, to_f64};
use crate::space::{convex_hull_sample, seeded_rng, GeodesicSpace, PointKey, SpaceKind};
use crate::spaces::{star_norm_dense, PointRef, SparseSeq};
use crate::wasserstein::AtomicMeasure;

/// How [`beta`] evaluates a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Closed-form weighted mean on linear spaces, the recursion elsewhere.
    #[default]
    Auto,
    /// Always run the deletion recursion.
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaryConfig {
    pub tuple_tol: f64,
    pub limit_tol: f64,
    /// Iterations allowed at each level of the recursion.
    pub max_iterations: usize,
    /// Largest `k` probed by the doubling schedule.
    pub max_k: u64,
    /// Largest expanded tuple length `n k`.
    pub max_expanded: u64,
    /// Recursive `b_n` calls allowed per barycenter; the recursion is
    /// exponential in `n`, so this bounds the running time.
    pub max_evaluations: u64,
    pub strategy: Strategy,
}

impl Default for BaryConfig {
    fn default() -> Self {
        Self {
            tuple_tol: 1e-10,
            limit_tol: 1e-8,
            max_iterations: 1000,
            max_k: 8,
            max_expanded: 10_000,
            max_evaluations: 50_000_000,
            strategy: Strategy::Auto,
        }
    }
}

impl BaryConfig {
    pub fn recursive() -> Self {
        Self {
            strategy: Strategy::Recursive,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tuple_tol > 0.0) || !(self.limit_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        if self.max_iterations == 0 || self.max_k == 0 || self.max_expanded == 0 || self.max_evaluations == 0 {
            return Err(Error::InvalidArgument("iteration caps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaOutcome<P> {
    pub point: P,
    /// Last `k` of the doubling schedule.
    pub k_used: u64,
    /// Distance between the last two probes of the schedule.
    pub residual: f64,
}

/// The operations the deletion recursion needs from a space.
trait Workspace {
    type P: Clone;
    fn distance(&self, x: &Self::P, y: &Self::P) -> f64;
    fn midpoint(&self, x: &Self::P, y: &Self::P) -> Self::P;
    fn key(&self, p: &Self::P) -> PointKey;
}

/// Recursion depth and the multiset of keys.
type MemoKey = (u32, Vec<(PointKey, u64)>);

struct Native<'a, S>(&'a S);

impl<S: GeodesicSpace> Workspace for Native<'_, S> {
    type P = S::Point;

    fn distance(&self, x: &S::Point, y: &S::Point) -> f64 {
        self.0.distance(x, y)
    }

    fn midpoint(&self, x: &S::Point, y: &S::Point) -> S::Point {
        self.0.midpoint(x, y)
    }

    fn key(&self, p: &S::Point) -> PointKey {
        self.0.key(p)
    }
}

/// Star-seq points restricted to the finite union of their supports, in
/// double precision. Exact rationals would double their denominators at
/// every midpoint of the recursion.
struct DenseStar;

impl Workspace for DenseStar {
    type P = Vec<f64>;

    fn distance(&self, x: &Vec<f64>, y: &Vec<f64>) -> f64 {
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        star_norm_dense(&diff)
    }

    fn midpoint(&self, x: &Vec<f64>, y: &Vec<f64>) -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| 0.5 * a + 0.5 * b).collect()
    }

    fn key(&self, p: &Vec<f64>) -> PointKey {
        PointKey::from_floats(p.iter().copied())
    }
}

/// Converts star-seq points to dense coordinates on their joint support and
/// back. Values come back as the exact rationals of the doubles.
struct DenseFrame {
    indices: Vec<i64>,
}

impl DenseFrame {
    fn new<'a>(points: impl IntoIterator<Item = &'a SparseSeq>) -> Self {
        let mut indices: Vec<i64> = points
            .into_iter()
            .flat_map(|p| p.entries().iter().map(|(i, _)| *i))
            .collect();
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    fn dense(&self, p: &SparseSeq) -> Vec<f64> {
        self.indices.iter().map(|&i| to_f64(&p.get(i))).collect()
    }

    fn sparse(&self, v: &[f64]) -> SparseSeq {
        SparseSeq::from_entries(
            self.indices
                .iter()
                .zip(v)
                .filter(|(_, x)| **x != 0.0)
                .map(|(&i, &x)| (i, from_f64(x))),
        )
        .expect("frame indices are distinct")
    }
}


/// One evaluation context; the memo is keyed by the recursion depth and the
/// sorted `(point key, multiplicity)` list of a tuple.
struct Evaluator<'a, W: Workspace> {
    space: W,
    cfg: &'a BaryConfig,
    memo: HashMap<MemoKey, W::P>,
    evaluations: u64,
}

impl<'a, W: Workspace> Evaluator<'a, W> {
    fn new(space: W, cfg: &'a BaryConfig) -> Self {
        Self {
            space,
            cfg,
            memo: HashMap::new(),
            evaluations: 0,
        }
    }

    /// Merges equal points and sorts by key, fixing a canonical order.
    fn group(&self, items: impl IntoIterator<Item = (W::P, u64)>) -> Vec<(W::P, u64)> {
        let mut groups: Vec<(PointKey, W::P, u64)> = Vec::new();
        for (p, m) in items {
            let key = self.space.key(&p);
            match groups.binary_search_by(|g| g.0.cmp(&key)) {
                Ok(i) => groups[i].2 += m,
                Err(i) => groups.insert(i, (key, p, m)),
            }
        }
        groups.into_iter().map(|(_, p, m)| (p, m)).collect()
    }

    fn diameter<'p>(&self, points: impl Iterator<Item = &'p W::P> + Clone) -> f64
    where
        W::P: 'p,
    {
        let mut d = 0.0f64;
        for (i, a) in points.clone().enumerate() {
            for b in points.clone().skip(i + 1) {
                d = d.max(self.space.distance(a, b));
            }
        }
        d
    }

    /// Evaluates `b_n` on distinct points with multiplicities, `depth`
    /// levels below the outermost call.
    ///
    /// Only sub-multisets of the outermost tuple recur, so only those
    /// (`pristine` calls) go through the memo.
    ///
    /// Inner levels aim for a tolerance four times tighter per level so the
    /// outer iteration is not stalled by their error. When floating point
    /// runs out first, an iteration that stops shrinking is accepted once it
    /// is inside the configured tolerance.
    fn eval(&mut self, input: &[(&W::P, u64)], depth: u32, pristine: bool) -> Result<W::P> {
        self.evaluations += 1;
        if self.evaluations > self.cfg.max_evaluations {
            return Err(Error::EvaluationBudget {
                budget: self.cfg.max_evaluations,
            });
        }
        if input.len() == 1 {
            return Ok(input[0].0.clone());
        }
        let n: u64 = input.iter().map(|g| g.1).sum();
        if n == 2 {
            return Ok(self.space.midpoint(input[0].0, input[1].0));
        }
        let key = pristine.then(|| {
            let key: Vec<(PointKey, u64)> =
                input.iter().map(|(p, m)| (self.space.key(p), *m)).collect();
            (depth, key)
        });
        if let Some(p) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok(p.clone());
        }

        let target = self.cfg.tuple_tol * 0.25f64.powi(depth as i32);
        let mut owned: Option<Vec<(W::P, u64)>> = None;
        let mut diameter = self.diameter(input.iter().map(|g| g.0));
        let mut iterations = 0;
        while diameter >= target {
            if iterations == self.cfg.max_iterations {
                return Err(Error::IterationCap {
                    level: n,
                    iterations,
                    diameter,
                    tolerance: self.cfg.tuple_tol,
                });
            }
            let view: Vec<(&W::P, u64)> = match &owned {
                Some(v) => v.iter().map(|(p, m)| (p, *m)).collect(),
                None => input.to_vec(),
            };
            let mut next = Vec::with_capacity(view.len());
            let mut deleted = Vec::with_capacity(view.len());
            for i in 0..view.len() {
                deleted.clear();
                deleted.extend(view.iter().enumerate().filter_map(|(j, &(p, m))| {
                    let m = if i == j { m - 1 } else { m };
                    (m > 0).then_some((p, m))
                }));
                next.push((
                    self.eval(&deleted, depth + 1, pristine && iterations == 0)?,
                    view[i].1,
                ));
            }
            drop(deleted);
            drop(view);
            let previous = diameter;
            diameter = self.diameter(next.iter().map(|g| &g.0));
            owned = Some(next);
            iterations += 1;
            if diameter < self.cfg.tuple_tol && diameter >= previous {
                break;
            }
        }

        let p = match owned {
            Some(mut v) => v.swap_remove(0).0,
            None => input[0].0.clone(),
        };
        if let Some(key) = key {
            self.memo.insert(key, p.clone());
        }
        Ok(p)
    }

    fn eval_owned(&mut self, groups: &[(W::P, u64)]) -> Result<W::P> {
        let view: Vec<(&W::P, u64)> = groups.iter().map(|(p, m)| (p, *m)).collect();
        self.eval(&view, 0, true)
    }

    /// The `k`-doubling schedule on `(point, multiplicity)` atoms.
    fn limit(&mut self, atoms: &[(W::P, u64)], n: u64) -> Result<(W::P, u64, f64)> {
        let mut previous: Option<W::P> = None;
        let mut k = 1u64;
        loop {
            if n.saturating_mul(k) > self.cfg.max_expanded {
                return Err(Error::ExpansionCap {
                    needed: n as u128 * k as u128,
                    cap: self.cfg.max_expanded,
                });
            }
            let groups = self.group(atoms.iter().map(|(p, m)| (p.clone(), m * k)));
            let point = self
                .eval_owned(&groups)
                .map_err(|e| e.context(format!("b_{} at k = {k}", n * k)))?;
            let gap = previous
                .as_ref()
                .map_or(f64::INFINITY, |q| self.space.distance(&point, q));
            if gap < self.cfg.limit_tol {
                return Ok((point, k, gap));
            }
            if k.saturating_mul(2) > self.cfg.max_k {
                return Err(Error::LimitNotReached { k, gap });
            }
            previous = Some(point);
            k *= 2;
        }
    }
}

fn star_points<S: GeodesicSpace>(space: &S, points: &[&S::Point]) -> Option<Vec<SparseSeq>> {
    if space.kind() != SpaceKind::StarSeq {
        return None;
    }
    points
        .iter()
        .map(|p| match space.to_ref(p) {
            PointRef::Seq(s) => Some(s),
            _ => None,
        })
        .collect()
}

/// `b_n` of an ordered tuple. The result does not depend on the order.
pub fn bn<S: GeodesicSpace>(space: &S, tuple: &[S::Point], cfg: &BaryConfig) -> Result<S::Point> {
    if tuple.is_empty() {
        return Err(Error::Empty("barycenter tuple"));
    }
    cfg.validate()?;
    if let Some(seqs) = star_points(space, &tuple.iter().collect::<Vec<_>>()) {
        let frame = DenseFrame::new(&seqs);
        let mut ev = Evaluator::new(DenseStar, cfg);
        let groups = ev.group(seqs.iter().map(|p| (frame.dense(p), 1)));
        let v = ev.eval_owned(&groups)?;
        return space.from_ref(&PointRef::Seq(frame.sparse(&v)));
    }
    let mut ev = Evaluator::new(Native(space), cfg);
    let groups = ev.group(tuple.iter().map(|p| (p.clone(), 1)));
    ev.eval_owned(&groups)
}

/// Barycenter of a rational atomic measure.
pub fn beta<S: GeodesicSpace>(
    space: &S,
    mu: &AtomicMeasure<S::Point>,
    cfg: &BaryConfig,
) -> Result<BetaOutcome<S::Point>> {
    cfg.validate()?;
    if cfg.strategy == Strategy::Auto {
        if let Some(point) = space.linear_mean(mu.atoms()) {
            return Ok(BetaOutcome {
                point,
                k_used: 1,
                residual: 0.0,
            });
        }
    }
    if mu.len() == 1 {
        return Ok(BetaOutcome {
            point: mu.atoms()[0].0.clone(),
            k_used: 1,
            residual: 0.0,
        });
    }

    let (n, mults) = mu.multiplicities();
    let n = n.to_u64().ok_or_else(|| Error::ExpansionCap {
        needed: n.to_u128().unwrap_or(u128::MAX),
        cap: cfg.max_expanded,
    })?;
    let mults: Vec<u64> = mults.iter().map(|m| m.to_u64().expect("bounded by n")).collect();

    let support: Vec<&S::Point> = mu.support().collect();
    let (point, k_used, residual) = if let Some(seqs) = star_points(space, &support) {
        let frame = DenseFrame::new(&seqs);
        let atoms: Vec<(Vec<f64>, u64)> = seqs.iter().map(|p| frame.dense(p)).zip(mults).collect();
        let (v, k, gap) = Evaluator::new(DenseStar, cfg).limit(&atoms, n)?;
        (space.from_ref(&PointRef::Seq(frame.sparse(&v)))?, k, gap)
    } else {
        let atoms: Vec<(S::Point, u64)> = support.into_iter().cloned().zip(mults).collect();
        Evaluator::new(Native(space), cfg).limit(&atoms, n)?
    };
    Ok(BetaOutcome {
        point,
        k_used,
        residual,
    })
}

/// Mass-weighted average on linear spaces (exact on star-seq).
pub fn banach_mean<S: GeodesicSpace>(space: &S, mu: &AtomicMeasure<S::Point>) -> Result<S::Point> {
    space
        .linear_mean(mu.atoms())
        .ok_or(Error::NotLinear(space.kind()))
}

/// Distance from `candidate` to the convex hull of `spt(mu)`.
///
/// The margin is the upper bound reported by the space; `depth` and
/// `samples` additionally probe the iterated geodesic hull at random and
/// record the closest sampled point, an upper bound that needs no
/// structure beyond the bicombing.
pub fn locality_certificate<S: GeodesicSpace>(
    space: &S,
    mu: &AtomicMeasure<S::Point>,
    candidate: &S::Point,
    depth: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PropertyReport {
    let support: Vec<S::Point> = mu.support().cloned().collect();
    let hull = space.hull_distance(&support, candidate);
    let mut report = PropertyReport::new("locality", tol, seed)
        .detail("hull_distance_lower", hull.lower)
        .detail("hull_distance_upper", hull.upper);
    report.observe(hull.upper, || format!("candidate {candidate:?}"));
    if depth > 0 && samples > 0 {
        let mut rng = seeded_rng(seed);
        if let Ok(points) = convex_hull_sample(space, &support, depth, samples, &mut rng) {
            let closest = points
                .iter()
                .map(|p| space.distance(p, candidate))
                .fold(f64::INFINITY, f64::min);
            report.set_detail("sampled_hull_distance", closest);
        }
    }
    report
}
