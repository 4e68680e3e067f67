use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, parse_ratio};

/// A finitely supported element of `l1(Z)` with exact rational entries.
///
/// Entries are kept sorted by index with zeros removed, so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseSeq {
    entries: Vec<(i64, BigRational)>,
}

impl SparseSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit sequence `e_index`.
    pub fn unit(index: i64) -> Self {
        Self {
            entries: vec![(index, BigRational::from_integer(1.into()))],
        }
    }

    /// Builds a sequence from `(index, value)` pairs; repeated indices are an
    /// error, zero values are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, BigRational)>) -> Result<Self> {
        let mut entries: Vec<_> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_by_key(|(i, _)| *i);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPoint(format!("index {} repeated", w[0].0)));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(i64, BigRational)] {
        &self.entries
    }

    pub fn get(&self, index: i64) -> BigRational {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|pos| self.entries[pos].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges two sorted supports, applying `f` to the pair of values at each
    /// index (absent values are zero).
    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let zero = BigRational::zero();
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (idx, v) = match (a.get(i), b.get(j)) {
                (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                    i += 1;
                    j += 1;
                    (*ia, f(va, vb))
                }
                (Some((ia, va)), Some((ib, _))) if ia < ib => {
                    i += 1;
                    (*ia, f(va, &zero))
                }
                (Some((ia, va)), None) => {
                    i += 1;
                    (*ia, f(va, &zero))
                }
                (_, Some((ib, vb))) => {
                    j += 1;
                    (*ib, f(&zero, vb))
                }
                (None, None) => unreachable!(),
            };
            if !v.is_zero() {
                out.push((idx, v));
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &Self, t: &BigRational) -> Self {
        let s = BigRational::from_integer(1.into()) - t;
        self.zip_with(other, |a, b| a * &s + b * t)
    }

    /// `T^m`: the value at index `i` moves to index `i + m`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (i + m, v.clone())).collect(),
        }
    }

    pub fn l1_norm(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |acc, (_, v)| acc + v.abs())
    }

    pub fn l2_norm_sq(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |acc, (_, v)| acc + v * v)
    }

    /// `||x||_*^2 = (sum |x_k|)^2 + sum |x_k|^2`, exactly.
    pub fn star_norm_sq(&self) -> BigRational {
        let l1 = self.l1_norm();
        &l1 * &l1 + self.l2_norm_sq()
    }

    pub fn star_norm(&self) -> f64 {
        rational::sqrt_to_f64(&self.star_norm_sq())
    }

    /// Canonical text form, used for hashing and memo keys.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for (i, v) in &self.entries {
            s.push_str(&format!("{i}:{v};"));
        }
        s
    }
}

/// `||x||_*` of a finitely supported sequence.
pub fn star_norm(x: &SparseSeq) -> f64 {
    x.star_norm()
}

impl fmt::Debug for SparseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseSeqDoc {
    entries: Vec<(i64, String)>,
}

impl Serialize for SparseSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SparseSeqDoc {
            entries: self.entries.iter().map(|(i, v)| (*i, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SparseSeqDoc::deserialize(d)?;
        let entries = doc
            .entries
            .iter()
            .map(|(i, v)| parse_ratio(v).map(|q| (*i, q)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        SparseSeq::from_entries(entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn seq(entries: &[(i64, i64, i64)]) -> SparseSeq {
        SparseSeq::from_entries(entries.iter().map(|&(i, p, q)| (i, ratio(p, q)))).unwrap()
    }

    #[test]
    fn star_norm_of_unit_vector() {
        assert_eq!(SparseSeq::unit(0).star_norm_sq(), ratio(2, 1));
        assert!((star_norm(&SparseSeq::unit(0)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn star_norm_of_zero() {
        assert_eq!(star_norm(&SparseSeq::zero()), 0.0);
    }

    #[test]
    fn star_norm_of_two_point_average() {
        let x = seq(&[(0, 1, 2), (1, 1, 2)]);
        assert_eq!(x.star_norm_sq(), ratio(3, 2));
        assert!((star_norm(&x) - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn difference_of_units() {
        let d = SparseSeq::unit(0).sub(&SparseSeq::unit(1));
        assert_eq!(d.star_norm_sq(), ratio(6, 1));
    }

    #[test]
    fn arithmetic_drops_zeros() {
        let x = seq(&[(0, 1, 2), (3, -1, 3)]);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.add(&x), x.scale(&ratio(2, 1)));
        assert_eq!(x.get(3), ratio(-1, 3));
        assert_eq!(x.get(7), ratio(0, 1));
    }

    #[test]
    fn shift_moves_mass_right() {
        assert_eq!(SparseSeq::unit(0).shift(1), SparseSeq::unit(1));
        assert_eq!(SparseSeq::unit(4).shift(-6), SparseSeq::unit(-2));
    }

    #[test]
    fn repeated_index_rejected() {
        assert!(SparseSeq::from_entries([(1, ratio(1, 2)), (1, ratio(1, 3))]).is_err());
    }

    #[test]
    fn json_shape() {
        let x = seq(&[(-1, 1, 3), (2, 2, 3)]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"entries":[[-1,"1/3"],[2,"2/3"]]}"#);
        let back: SparseSeq = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
