use num_rational::BigRational;
use rand::Rng;

use super::hull::min_norm_point;
use super::{IsometryDescriptor, PointRef};
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::space::{GeodesicSpace, HullDistance, Isometry, PointKey, SpaceKind};

/// `R^dim` with the Euclidean norm and linear geodesics.
#[derive(Debug, Clone, PartialEq)]
pub struct Euclidean {
    dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("euclidean dimension must be at least 1".into()));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EuclideanIso {
    Identity,
    /// Row-major 2x2 orthogonal matrix.
    Planar([[f64; 2]; 2]),
    Translation(Vec<f64>),
    Compose(Vec<EuclideanIso>),
}

impl Isometry<Vec<f64>> for EuclideanIso {
    fn apply(&self, p: &Vec<f64>) -> Vec<f64> {
        match self {
            EuclideanIso::Identity => p.clone(),
            EuclideanIso::Planar(m) => vec![
                m[0][0] * p[0] + m[0][1] * p[1],
                m[1][0] * p[0] + m[1][1] * p[1],
            ],
            EuclideanIso::Translation(v) => p.iter().zip(v).map(|(a, b)| a + b).collect(),
            EuclideanIso::Compose(parts) => parts.iter().fold(p.clone(), |q, iso| iso.apply(&q)),
        }
    }
}

/// `(cos, sin)` of `2 pi turns`, in closed form when `turns` is a multiple of
/// 1/12 or 1/8.
pub fn rotation_cos_sin(turns: &BigRational) -> (f64, f64) {
    let frac = turns - turns.floor();
    let twelfths = &frac * BigRational::from_integer(12.into());
    if twelfths.is_integer() {
        let s3 = 3f64.sqrt() / 2.0;
        let j = to_f64(&twelfths) as usize % 12;
        let cos = [1.0, s3, 0.5, 0.0, -0.5, -s3, -1.0, -s3, -0.5, 0.0, 0.5, s3][j];
        let sin = [0.0, 0.5, s3, 1.0, s3, 0.5, 0.0, -0.5, -s3, -1.0, -s3, -0.5][j];
        return (cos, sin);
    }
    let eighths = &frac * BigRational::from_integer(8.into());
    if eighths.is_integer() {
        // odd multiples of 1/8 only; even ones were caught above
        let h = 2f64.sqrt() / 2.0;
        return match to_f64(&eighths) as usize % 8 {
            1 => (h, h),
            3 => (-h, h),
            5 => (-h, -h),
            _ => (h, -h),
        };
    }
    let angle = std::f64::consts::TAU * to_f64(&frac);
    (angle.cos(), angle.sin())
}

impl GeodesicSpace for Euclidean {
    type Point = Vec<f64>;
    type Iso = EuclideanIso;

    fn kind(&self) -> SpaceKind {
        SpaceKind::Euclidean
    }

    fn distance(&self, x: &Vec<f64>, y: &Vec<f64>) -> f64 {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    fn geodesic(&self, x: &Vec<f64>, y: &Vec<f64>, t: f64) -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| (1.0 - t) * a + t * b).collect()
    }

    fn midpoint(&self, x: &Vec<f64>, y: &Vec<f64>) -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim).map(|_| rng.gen_range(-5.0..5.0)).collect()
    }

    fn key(&self, p: &Vec<f64>) -> PointKey {
        PointKey::from_floats(p.iter().copied())
    }

    fn bind(&self, iso: &IsometryDescriptor) -> Result<EuclideanIso> {
        let incompatible = |reason: &str| Error::IncompatibleIsometry {
            iso: iso.to_string(),
            space: SpaceKind::Euclidean,
            reason: reason.into(),
        };
        match iso {
            IsometryDescriptor::Identity => Ok(EuclideanIso::Identity),
            IsometryDescriptor::Rotation { turns, angle } => {
                if self.dim != 2 {
                    return Err(incompatible("rotations are only defined in dimension 2"));
                }
                let (c, s) = match (turns, angle) {
                    (Some(t), None) => rotation_cos_sin(t),
                    (None, Some(a)) => (a.cos(), a.sin()),
                    _ => return Err(incompatible("give exactly one of `turns` and `angle`")),
                };
                Ok(EuclideanIso::Planar([[c, -s], [s, c]]))
            }
            IsometryDescriptor::Translation { vector } => {
                if vector.len() != self.dim {
                    return Err(incompatible("translation vector has the wrong dimension"));
                }
                Ok(EuclideanIso::Translation(vector.clone()))
            }
            IsometryDescriptor::Composition { parts } => Ok(EuclideanIso::Compose(
                parts.iter().map(|p| self.bind(p)).collect::<Result<_>>()?,
            )),
            IsometryDescriptor::Shift { .. } => Err(incompatible("shift acts on star-seq only")),
            IsometryDescriptor::LegPermutation { .. } => {
                Err(incompatible("leg permutations act on trees only"))
            }
        }
    }

    fn default_isometries(&self) -> Vec<(String, IsometryDescriptor)> {
        let mut v = vec![("identity".to_owned(), IsometryDescriptor::Identity)];
        let mut unit = vec![0.0; self.dim];
        unit[0] = 1.0;
        v.push(("translate".to_owned(), IsometryDescriptor::translation(unit.clone())));
        if self.dim == 2 {
            v.push((
                "rot3".to_owned(),
                IsometryDescriptor::rotation_turns(crate::rational::ratio(1, 3)),
            ));
            v.push((
                "rot5".to_owned(),
                IsometryDescriptor::rotation_turns(crate::rational::ratio(1, 5)),
            ));
            v.push((
                "rot-translate".to_owned(),
                IsometryDescriptor::Composition {
                    parts: vec![
                        IsometryDescriptor::rotation_angle(0.7),
                        IsometryDescriptor::translation(unit),
                    ],
                },
            ));
        }
        v
    }

    fn linear_mean(&self, atoms: &[(Vec<f64>, BigRational)]) -> Option<Vec<f64>> {
        let mut acc = vec![0.0; self.dim];
        for (p, m) in atoms {
            let w = to_f64(m);
            for (a, x) in acc.iter_mut().zip(p) {
                *a += w * x;
            }
        }
        Some(acc)
    }

    fn hull_distance(&self, points: &[Vec<f64>], candidate: &Vec<f64>) -> HullDistance {
        let shifted: Vec<Vec<f64>> = points
            .iter()
            .map(|p| p.iter().zip(candidate).map(|(a, c)| a - c).collect())
            .collect();
        let (_, x) = min_norm_point(&shifted);
        HullDistance::exact(x.iter().map(|v| v * v).sum::<f64>().sqrt())
    }

    fn to_ref(&self, p: &Vec<f64>) -> PointRef {
        PointRef::Coords(p.clone())
    }

    fn from_ref(&self, p: &PointRef) -> Result<Vec<f64>> {
        match p {
            PointRef::Coords(c) if c.len() == self.dim => {
                if c.iter().all(|v| v.is_finite()) {
                    Ok(c.clone())
                } else {
                    Err(Error::InvalidPoint("non-finite coordinate".into()))
                }
            }
            PointRef::Coords(c) => Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.dim,
                c.len()
            ))),
            other => Err(Error::KindMismatch {
                expected: SpaceKind::Euclidean,
                found: other.kind(),
            }),
        }
    }
}
