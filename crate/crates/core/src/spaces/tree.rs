use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{IsometryDescriptor, PointRef};
use crate::error::{Error, Result};
use crate::space::{GeodesicSpace, HullDistance, Isometry, PointKey, SpaceKind, FLOAT_KEY_RESOLUTION};

/// A metric star: `legs` segments of the given lengths glued at a common
/// center. Geodesics are unique; between different legs they pass through
/// the center.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiderTree {
    lengths: Vec<f64>,
}

/// A point on a leg at distance `r` from the center. The center itself is
/// always stored as leg 0, `r = 0`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreePoint {
    pub leg: usize,
    pub r: f64,
}

impl TreePoint {
    pub const CENTER: TreePoint = TreePoint { leg: 0, r: 0.0 };

    fn canonical(leg: usize, r: f64) -> Self {
        if r <= 0.0 {
            Self::CENTER
        } else {
            TreePoint { leg, r }
        }
    }

    pub fn is_center(&self) -> bool {
        self.r == 0.0
    }
}

impl fmt::Debug for TreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_center() {
            f.write_str("center")
        } else {
            write!(f, "(leg {}, {})", self.leg, self.r)
        }
    }
}

impl SpiderTree {
    pub fn new(lengths: Vec<f64>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSpace("a tree needs at least one leg".into()));
        }
        if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::InvalidSpace(format!("leg length {l} is not positive")));
        }
        Ok(Self { lengths })
    }

    /// `legs` legs of common length `length`.
    pub fn uniform(legs: usize, length: f64) -> Result<Self> {
        Self::new(vec![length; legs])
    }

    pub fn legs(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Validated point constructor.
    pub fn point(&self, leg: usize, r: f64) -> Result<TreePoint> {
        let len = *self
            .lengths
            .get(leg)
            .ok_or_else(|| Error::InvalidPoint(format!("leg {leg} does not exist")))?;
        if !(r.is_finite() && r >= 0.0 && r <= len) {
            return Err(Error::InvalidPoint(format!(
                "distance {r} from the center is outside [0, {len}] on leg {leg}"
            )));
        }
        Ok(TreePoint::canonical(leg, r))
    }

    pub fn endpoint(&self, leg: usize) -> TreePoint {
        TreePoint::canonical(leg, self.lengths[leg])
    }

    /// Whether the geodesic from `x` to `y` stays on a single leg.
    fn same_ray(x: &TreePoint, y: &TreePoint) -> bool {
        x.leg == y.leg || x.is_center() || y.is_center()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegPermutation(Vec<usize>);

impl LegPermutation {
    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl Isometry<TreePoint> for LegPermutation {
    fn apply(&self, p: &TreePoint) -> TreePoint {
        TreePoint::canonical(self.0[p.leg], p.r)
    }
}

impl GeodesicSpace for SpiderTree {
    type Point = TreePoint;
    type Iso = LegPermutation;

    fn kind(&self) -> SpaceKind {
        SpaceKind::Tree
    }

    fn distance(&self, x: &TreePoint, y: &TreePoint) -> f64 {
        if Self::same_ray(x, y) {
            (x.r - y.r).abs()
        } else {
            x.r + y.r
        }
    }

    fn geodesic(&self, x: &TreePoint, y: &TreePoint, t: f64) -> TreePoint {
        if Self::same_ray(x, y) {
            let leg = if x.is_center() { y.leg } else { x.leg };
            return TreePoint::canonical(leg, (1.0 - t) * x.r + t * y.r);
        }
        let s = t * (x.r + y.r);
        if s < x.r {
            TreePoint::canonical(x.leg, x.r - s)
        } else {
            TreePoint::canonical(y.leg, (s - x.r).min(y.r))
        }
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> TreePoint {
        let leg = rng.gen_range(0..self.legs());
        let len = self.lengths[leg];
        match rng.gen_range(0..20) {
            0 | 1 => TreePoint::CENTER,
            2..=4 => TreePoint::canonical(leg, len),
            _ => TreePoint::canonical(leg, rng.gen_range(0.0..len)),
        }
    }

    fn key(&self, p: &TreePoint) -> PointKey {
        let r = (p.r / FLOAT_KEY_RESOLUTION).round() as i64;
        if r == 0 {
            PointKey::Grid(vec![0, 0])
        } else {
            PointKey::Grid(vec![p.leg as i64, r])
        }
    }

    fn bind(&self, iso: &IsometryDescriptor) -> Result<LegPermutation> {
        let incompatible = |reason: String| Error::IncompatibleIsometry {
            iso: iso.to_string(),
            space: SpaceKind::Tree,
            reason,
        };
        match iso {
            IsometryDescriptor::Identity => Ok(LegPermutation((0..self.legs()).collect())),
            IsometryDescriptor::LegPermutation { perm } => {
                if perm.len() != self.legs() {
                    return Err(incompatible(format!(
                        "permutation has {} entries, tree has {} legs",
                        perm.len(),
                        self.legs()
                    )));
                }
                let mut seen = vec![false; perm.len()];
                for &p in perm {
                    if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                        return Err(incompatible(format!("{perm:?} is not a permutation")));
                    }
                }
                if let Some(i) = (0..perm.len()).find(|&i| self.lengths[i] != self.lengths[perm[i]]) {
                    return Err(incompatible(format!(
                        "leg {i} (length {}) cannot map to leg {} (length {})",
                        self.lengths[i], perm[i], self.lengths[perm[i]]
                    )));
                }
                Ok(LegPermutation(perm.clone()))
            }
            IsometryDescriptor::Composition { parts } => {
                let mut acc: Vec<usize> = (0..self.legs()).collect();
                for p in parts {
                    let next = self.bind(p)?;
                    acc = acc.iter().map(|&leg| next.0[leg]).collect();
                }
                Ok(LegPermutation(acc))
            }
            _ => Err(incompatible("only leg permutations act on trees".into())),
        }
    }

    fn default_isometries(&self) -> Vec<(String, IsometryDescriptor)> {
        let n = self.legs();
        let mut v = vec![("identity".to_owned(), IsometryDescriptor::Identity)];
        for i in 0..n {
            for j in i + 1..n {
                if self.lengths[i] == self.lengths[j] {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.swap(i, j);
                    v.push((format!("swap{i}{j}"), IsometryDescriptor::leg_permutation(perm)));
                }
            }
        }
        if n > 2 && self.lengths.iter().all(|l| *l == self.lengths[0]) {
            let cycle = (0..n).map(|i| (i + 1) % n).collect();
            v.push(("cycle".to_owned(), IsometryDescriptor::leg_permutation(cycle)));
        }
        v
    }

    /// The hull is the subtree spanned by `points`: a segment of one leg, or
    /// a star around the center reaching the farthest point on every leg.
    fn hull_distance(&self, points: &[TreePoint], candidate: &TreePoint) -> HullDistance {
        let legs: Vec<usize> = points.iter().filter(|p| !p.is_center()).map(|p| p.leg).collect();
        let single_leg = !legs.is_empty()
            && legs.len() == points.len()
            && legs.iter().all(|&l| l == legs[0]);
        let d = if single_leg {
            let leg = legs[0];
            let lo = points.iter().map(|p| p.r).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p.r).fold(0.0, f64::max);
            if candidate.is_center() || candidate.leg == leg {
                (lo - candidate.r).max(candidate.r - hi).max(0.0)
            } else {
                candidate.r + lo
            }
        } else if candidate.is_center() {
            0.0
        } else {
            let reach = points
                .iter()
                .filter(|p| !p.is_center() && p.leg == candidate.leg)
                .map(|p| p.r)
                .fold(0.0, f64::max);
            (candidate.r - reach).max(0.0)
        };
        HullDistance::exact(d)
    }

    fn to_ref(&self, p: &TreePoint) -> PointRef {
        PointRef::Tree(*p)
    }

    fn from_ref(&self, p: &PointRef) -> Result<TreePoint> {
        match p {
            PointRef::Tree(t) => self.point(t.leg, t.r),
            other => Err(Error::KindMismatch {
                expected: SpaceKind::Tree,
                found: other.kind(),
            }),
        }
    }
}
