//! Fixed-point machinery for metric spaces with a conical geodesic bicombing.
//!
//! The crate ships three concrete spaces ([`spaces::Euclidean`],
//! [`spaces::StarSeq`] and [`spaces::SpiderTree`]), exact Wasserstein-1
//! distances between finitely supported measures, the recursive contracting
//! barycenter, orbit and density tools for single isometries, and a
//! reproduction of a bounded Busemann space whose shift has no fixed point.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barycenter;
pub mod counterexample;
pub mod dynamics;
pub mod error;
pub mod rational;
pub mod report;
pub mod space;
pub mod spaces;
pub mod wasserstein;


pub use barycenter::{banach_mean, beta, bn, locality_certificate, BaryConfig, BetaOutcome, Strategy};
pub use dynamics::{
    banach_density_estimate, empirical_measure, fixed_point_solve, invariance_residual, orbit,
    orbit_bound_certificate, FixedPointParams, FixedPointReport, OrbitCertificate, OrbitTrace,
    SolveStatus, TargetSet, VisitSet,
};
pub use error::{Error, Result};
pub use report::{PropertyReport, DEFAULT_TOL};
pub use space::{GeodesicSpace, HullDistance, Isometry, PointKey, SpaceKind};
pub use spaces::{IsometryDescriptor, PointRef, SparseSeq, SpaceHandle, TreePoint};
pub use wasserstein::{pushforward, quantize, w1_atomic, w1_uniform, AtomicMeasure};
pub use counterexample::{displacement_decay, hull_point, verify_counterexample, HullSample};
