use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, serde_ratio};
use crate::space::{GeodesicSpace, Isometry, PointKey};
use crate::spaces::{PointRef, SpaceDoc};

/// A finitely supported probability measure with positive rational masses.
///
/// Atoms are merged by [`PointKey`] and kept sorted by key, so two measures
/// that are equal as measures have identical atom lists.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<P> {
    atoms: Vec<(P, BigRational)>,
}

impl<P: Clone> AtomicMeasure<P> {
    pub fn new<S: GeodesicSpace<Point = P>>(space: &S, atoms: Vec<(P, BigRational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("a measure needs at least one atom".into()));
        }
        if let Some((_, m)) = atoms.iter().find(|(_, m)| !m.is_positive()) {
            return Err(Error::InvalidMeasure(format!("mass {m} is not positive")));
        }
        let total = rational::sum(atoms.iter().map(|(_, m)| m));
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("masses sum to {total}, not 1")));
        }
        Ok(Self::merged(space, atoms))
    }

    /// Merges atoms that share a key; masses are assumed valid.
    fn merged<S: GeodesicSpace<Point = P>>(space: &S, atoms: Vec<(P, BigRational)>) -> Self {
        let mut by_key: BTreeMap<PointKey, (P, BigRational)> = BTreeMap::new();
        for (p, m) in atoms {
            by_key
                .entry(space.key(&p))
                .and_modify(|(_, acc)| *acc += &m)
                .or_insert((p, m));
        }
        Self {
            atoms: by_key.into_values().collect(),
        }
    }

    pub fn dirac(p: P) -> Self {
        Self {
            atoms: vec![(p, BigRational::one())],
        }
    }

    /// `(1/n) (delta_{x_1} + ... + delta_{x_n})`; repeated points merge.
    pub fn uniform<S: GeodesicSpace<Point = P>>(space: &S, points: &[P]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("uniform measure support"));
        }
        let m = BigRational::new(BigInt::one(), BigInt::from(points.len()));
        Ok(Self::merged(
            space,
            points.iter().map(|p| (p.clone(), m.clone())).collect(),
        ))
    }

    pub fn atoms(&self) -> &[(P, BigRational)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &P> {
        self.atoms.iter().map(|(p, _)| p)
    }

    pub fn masses(&self) -> impl Iterator<Item = &BigRational> {
        self.atoms.iter().map(|(_, m)| m)
    }

    /// Least common denominator `n` of the masses, so that the measure is
    /// `(1/n) sum delta_{x_i}` with each atom repeated `n * mass` times.
    pub fn common_denominator(&self) -> BigInt {
        rational::common_denominator(self.masses())
    }

    /// Integer multiplicities `n * mass_i` for the common denominator `n`.
    pub fn multiplicities(&self) -> (BigInt, Vec<BigInt>) {
        let n = self.common_denominator();
        let mults = self
            .masses()
            .map(|m| (m * BigRational::from_integer(n.clone())).to_integer())
            .collect();
        (n, mults)
    }

    /// Uniform representation `(x_1, ..., x_n)`, refusing to build more than
    /// `cap` entries.
    pub fn expand(&self, cap: u64) -> Result<Vec<P>> {
        let (n, mults) = self.multiplicities();
        let needed = n.to_u128().unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(Error::ExpansionCap { needed, cap });
        }
        let mut out = Vec::with_capacity(needed as usize);
        for ((p, _), k) in self.atoms.iter().zip(mults) {
            let k = k.to_usize().expect("bounded by cap");
            out.extend(std::iter::repeat_n(p, k).cloned());
        }
        Ok(out)
    }

    pub fn map_points<S: GeodesicSpace<Point = P>>(&self, space: &S, f: impl Fn(&P) -> P) -> Self {
        Self::merged(
            space,
            self.atoms.iter().map(|(p, m)| (f(p), m.clone())).collect(),
        )
    }

    pub fn to_docs<S: GeodesicSpace<Point = P>>(&self, space: &S) -> Vec<AtomDoc> {
        self.atoms
            .iter()
            .map(|(p, m)| AtomDoc {
                point: space.to_ref(p),
                mass: m.clone(),
            })
            .collect()
    }

    pub fn from_docs<S: GeodesicSpace<Point = P>>(space: &S, atoms: &[AtomDoc]) -> Result<Self> {
        let atoms = atoms
            .iter()
            .map(|a| Ok((space.from_ref(&a.point)?, a.mass.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, atoms)
    }
}

/// The image measure `f_* mu`. Colliding images merge.
pub fn pushforward<S: GeodesicSpace>(
    space: &S,
    iso: &S::Iso,
    mu: &AtomicMeasure<S::Point>,
) -> AtomicMeasure<S::Point> {
    mu.map_points(space, |p| iso.apply(p))
}

/// Rounds a weighted sample to masses that are multiples of `1/q` using
/// largest-remainder rounding. Atoms that round to zero are dropped, so the
/// support of the result is contained in the input support.
pub fn quantize<S: GeodesicSpace>(
    space: &S,
    points: &[(S::Point, f64)],
    q: u64,
) -> Result<AtomicMeasure<S::Point>> {
    if points.is_empty() {
        return Err(Error::Empty("quantize input"));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("denominator must be at least 1".into()));
    }
    if let Some((_, w)) = points.iter().find(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::InvalidMeasure(format!("weight {w} is negative or not finite")));
    }
    let total: f64 = points.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return Err(Error::InvalidMeasure("weights have zero total".into()));
    }
    let scaled: Vec<f64> = points.iter().map(|(_, w)| w / total * q as f64).collect();
    let mut units: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let assigned: u64 = units.iter().sum();
    let mut order: Vec<usize> = (0..points.len()).collect();
    // largest remainder first, ties to the earlier atom
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(q.saturating_sub(assigned) as usize) {
        units[i] += 1;
    }
    let denom = BigInt::from(q);
    let atoms = points
        .iter()
        .zip(units)
        .filter(|(_, u)| *u > 0)
        .map(|((p, _), u)| (p.clone(), BigRational::new(BigInt::from(u), denom.clone())))
        .collect();
    AtomicMeasure::new(space, atoms)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub point: PointRef,
    #[serde(with = "serde_ratio")]
    pub mass: BigRational,
}

/// `{"space": ..., "atoms": [{"point": ..., "mass": "p/q"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDoc {
    pub space: SpaceDoc,
    pub atoms: Vec<AtomDoc>,
}
