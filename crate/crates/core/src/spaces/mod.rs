//! The three concrete spaces shipped with the crate and their isometries.

mod euclidean;
mod handle;
mod hull;
mod isometry;
mod sparse;
mod star_seq;
mod tree;

pub use euclidean::{rotation_cos_sin, Euclidean, EuclideanIso};
pub use handle::{Geometry, PointRef, Property, SpaceDescriptor, SpaceDoc, SpaceHandle};
pub use isometry::IsometryDescriptor;
pub use sparse::{star_norm, SparseSeq};
pub use star_seq::{star_norm_dense, strict_convexity_check, ShiftIso, StarSeq};
pub use tree::{LegPermutation, SpiderTree, TreePoint};
