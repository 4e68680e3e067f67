use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Default absolute tolerance on distances for every sampled check.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Outcome of a sampled property check.
///
/// `margin` is the largest observed violation (never negative); the check
/// passes iff `margin <= tolerance`. The seed is recorded so any failing run
/// can be replayed.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub samples: usize,
    pub margin: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl PropertyReport {
    pub fn new(property: impl Into<String>, tolerance: f64, seed: u64) -> Self {
        Self {
            property: property.into(),
            samples: 0,
            margin: 0.0,
            tolerance,
            seed,
            pass: true,
            witness: None,
            details: BTreeMap::new(),
        }
    }

    /// Records one sample with violation `violation` (negative values mean the
    /// property held with room to spare and count as zero).
    pub fn observe(&mut self, violation: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        let v = if violation.is_nan() { f64::INFINITY } else { violation.max(0.0) };
        if v > self.margin {
            self.margin = v;
            if v > self.tolerance {
                self.witness = Some(witness());
            }
        }
        self.pass = self.margin <= self.tolerance;
    }

    /// Marks a hard failure that has no numeric margin (e.g. an exact identity
    /// that did not hold).
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.samples += 1;
        self.margin = f64::INFINITY;
        self.witness = Some(witness.into());
        self.pass = false;
    }

    pub fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_owned(), value);
        self
    }

    pub fn set_detail(&mut self, key: &str, value: f64) {
        self.details.insert(key.to_owned(), value);
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: margin {:.3e} (tol {:.1e}, {} samples, seed {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.property,
            self.margin,
            self.tolerance,
            self.samples,
            self.seed
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_violation_counts_as_zero() {
        let mut r = PropertyReport::new("p", 1e-9, 1);
        r.observe(-3.0, || unreachable!());
        assert_eq!(r.margin, 0.0);
        assert!(r.pass);
        assert!(r.witness.is_none());
    }

    #[test]
    fn witness_only_recorded_above_tolerance() {
        let mut r = PropertyReport::new("p", 1e-3, 1);
        r.observe(1e-4, || "small".into());
        assert!(r.witness.is_none());
        r.observe(0.5, || "big".into());
        assert_eq!(r.witness.as_deref(), Some("big"));
        assert!(!r.pass);
    }

    #[test]
    fn nan_is_a_failure() {
        let mut r = PropertyReport::new("p", 1e-3, 1);
        r.observe(f64::NAN, || "nan".into());
        assert!(!r.pass);
    }
}
