use thiserror::Error;

use crate::space::SpaceKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point of kind {found} does not belong to a {expected} space")]
    KindMismatch { expected: SpaceKind, found: SpaceKind },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("geodesic parameter t = {0} is outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("isometry `{iso}` cannot act on a {space} space: {reason}")]
    IncompatibleIsometry {
        iso: String,
        space: SpaceKind,
        reason: String,
    },

    #[error("invalid space descriptor: {0}")]
    InvalidSpace(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("point sets have unequal sizes ({left} vs {right})")]
    UnequalCounts { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tuple iteration at level {level} did not contract below {tolerance:e} within {iterations} iterations (last diameter {diameter:e})")]
    IterationCap {
        level: u64,
        iterations: usize,
        diameter: f64,
        tolerance: f64,
    },

    #[error("common-denominator expansion needs {needed} atoms, cap is {cap}")]
    ExpansionCap { needed: u128, cap: u64 },

    #[error("barycenter recursion exceeded its budget of {budget} evaluations")]
    EvaluationBudget { budget: u64 },

    #[error("barycenter limit did not settle by k = {k}: last Cauchy gap {gap:e}")]
    LimitNotReached { k: u64, gap: f64 },

    #[error("operation requires a linear space, got {0}")]
    NotLinear(SpaceKind),

    #[error("horizon too short: need {needed}, trace has {available}")]
    HorizonTooShort { needed: usize, available: usize },

    #[error("visit set is empty")]
    EmptyVisitSet,

    #[error("simplex violation: {0}")]
    Simplex(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
