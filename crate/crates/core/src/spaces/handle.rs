use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Euclidean, IsometryDescriptor, SparseSeq, SpiderTree, StarSeq, TreePoint};
use crate::error::{Error, Result};
use crate::report::PropertyReport;
use crate::space::{self, GeodesicSpace, Isometry, SpaceKind};

/// A point of any shipped space, as it appears in JSON documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Coords(Vec<f64>),
    Seq(SparseSeq),
    Tree(TreePoint),
}

impl PointRef {
    pub fn kind(&self) -> SpaceKind {
        match self {
            PointRef::Coords(_) => SpaceKind::Euclidean,
            PointRef::Seq(_) => SpaceKind::StarSeq,
            PointRef::Tree(_) => SpaceKind::Tree,
        }
    }
}

/// `{"kind": "euclidean", "dim": n}`, `{"kind": "star-seq", "window": [lo, hi]}`
/// or `{"kind": "tree", "legs": k, "lengths": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpaceDescriptor {
    Euclidean { dim: usize },
    StarSeq { window: [i64; 2] },
    Tree { legs: usize, lengths: Vec<f64> },
}

/// A space descriptor plus optional named isometries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDoc {
    #[serde(flatten)]
    pub descriptor: SpaceDescriptor,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub isometries: BTreeMap<String, IsometryDescriptor>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Euclidean(Euclidean),
    StarSeq(StarSeq),
    Tree(SpiderTree),
}

/// Runs `$body` with `$s` bound to the concrete space inside a handle.
#[macro_export]
macro_rules! with_space {
    ($handle:expr, $s:ident => $body:expr) => {
        match $handle.geometry() {
            $crate::spaces::Geometry::Euclidean($s) => $body,
            $crate::spaces::Geometry::StarSeq($s) => $body,
            $crate::spaces::Geometry::Tree($s) => $body,
        }
    };
}

/// One of the shipped spaces together with its isometry registry.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceHandle {
    geometry: Geometry,
    doc: SpaceDoc,
    isometries: BTreeMap<String, IsometryDescriptor>,
}

impl SpaceHandle {
    pub fn from_doc(doc: SpaceDoc) -> Result<Self> {
        let geometry = match &doc.descriptor {
            SpaceDescriptor::Euclidean { dim } => Geometry::Euclidean(Euclidean::new(*dim)?),
            SpaceDescriptor::StarSeq { window } => {
                Geometry::StarSeq(StarSeq::new(window[0], window[1])?)
            }
            SpaceDescriptor::Tree { legs, lengths } => {
                if *legs != lengths.len() {
                    return Err(Error::InvalidSpace(format!(
                        "{legs} legs declared but {} lengths given",
                        lengths.len()
                    )));
                }
                Geometry::Tree(SpiderTree::new(lengths.clone())?)
            }
        };
        let mut handle = Self {
            geometry,
            doc: doc.clone(),
            isometries: BTreeMap::new(),
        };
        let defaults = with_space!(handle, s => s.default_isometries());
        handle.isometries.extend(defaults);
        for (name, iso) in &doc.isometries {
            with_space!(handle, s => s.bind(iso).map(|_| ()))
                .map_err(|e| e.context(format!("registering isometry `{name}`")))?;
            handle.isometries.insert(name.clone(), iso.clone());
        }
        Ok(handle)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(serde_json::from_str(text)?)
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::from_doc(SpaceDoc {
            descriptor: SpaceDescriptor::Euclidean { dim },
            isometries: BTreeMap::new(),
        })
    }

    pub fn star_seq(lo: i64, hi: i64) -> Result<Self> {
        Self::from_doc(SpaceDoc {
            descriptor: SpaceDescriptor::StarSeq { window: [lo, hi] },
            isometries: BTreeMap::new(),
        })
    }

    pub fn tree(lengths: Vec<f64>) -> Result<Self> {
        Self::from_doc(SpaceDoc {
            descriptor: SpaceDescriptor::Tree {
                legs: lengths.len(),
                lengths,
            },
            isometries: BTreeMap::new(),
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn doc(&self) -> &SpaceDoc {
        &self.doc
    }

    pub fn kind(&self) -> SpaceKind {
        with_space!(self, s => s.kind())
    }

    pub fn isometries(&self) -> &BTreeMap<String, IsometryDescriptor> {
        &self.isometries
    }

    pub fn isometry(&self, name: &str) -> Option<&IsometryDescriptor> {
        self.isometries.get(name)
    }

    pub fn dist(&self, x: &PointRef, y: &PointRef) -> Result<f64> {
        with_space!(self, s => Ok(s.distance(&s.from_ref(x)?, &s.from_ref(y)?)))
    }

    pub fn geodesic_point(&self, x: &PointRef, y: &PointRef, t: f64) -> Result<PointRef> {
        with_space!(self, s => {
            let p = space::geodesic_point(s, &s.from_ref(x)?, &s.from_ref(y)?, t)?;
            Ok(s.to_ref(&p))
        })
    }

    pub fn apply_isometry(&self, iso: &IsometryDescriptor, x: &PointRef) -> Result<PointRef> {
        with_space!(self, s => {
            let bound = s.bind(iso)?;
            Ok(s.to_ref(&bound.apply(&s.from_ref(x)?)))
        })
    }

    /// Runs one sampled property suite. `Isometries` yields one preservation
    /// and one equivariance report per registered isometry.
    pub fn check(&self, property: Property, samples: usize, seed: u64, tol: f64) -> Vec<PropertyReport> {
        with_space!(self, s => match property {
            Property::Metric => vec![space::check_metric_axioms(s, samples, seed, tol)],
            Property::Speed => vec![space::check_geodesic_speed(s, samples, seed, tol)],
            Property::Conical => vec![space::check_conical(s, samples, seed, tol)],
            Property::Midpoint => vec![space::check_midpoint_property(s, samples, seed, tol)],
            Property::Busemann => vec![space::check_busemann(s, samples, seed, tol)],
            Property::Isometries => self
                .isometries
                .iter()
                .flat_map(|(name, desc)| {
                    let iso = s.bind(desc).expect("validated at registration");
                    [
                        space::check_isometry(s, name, &iso, samples, seed, tol),
                        space::check_equivariance(s, name, &iso, samples, seed, tol),
                    ]
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Metric,
    Speed,
    Conical,
    Midpoint,
    Busemann,
    Isometries,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Metric,
        Property::Speed,
        Property::Conical,
        Property::Midpoint,
        Property::Busemann,
        Property::Isometries,
    ];
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "metric" => Property::Metric,
            "speed" | "geodesic" => Property::Speed,
            "conical" => Property::Conical,
            "midpoint" => Property::Midpoint,
            "busemann" => Property::Busemann,
            "isometries" | "isometry" => Property::Isometries,
            other => return Err(Error::InvalidArgument(format!("unknown property `{other}`"))),
        })
    }
}
