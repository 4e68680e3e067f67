use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::rational::serde_ratio;

/// Serialized description of an isometry, e.g. `{"kind": "shift", "power": 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum IsometryDescriptor {
    Identity,
    /// `T^power` on the sequence space.
    Shift { power: i64 },
    /// Planar rotation, either by `turns` (fraction of a full turn, exact
    /// coordinates for multiples of 1/12 and 1/8) or by `angle` in radians.
    Rotation {
        #[serde(default, with = "serde_ratio::option", skip_serializing_if = "Option::is_none")]
        turns: Option<BigRational>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle: Option<f64>,
    },
    Translation { vector: Vec<f64> },
    /// `perm[i]` is the leg that leg `i` is sent to.
    LegPermutation { perm: Vec<usize> },
    /// Applies `parts` left to right.
    Composition { parts: Vec<IsometryDescriptor> },
}

impl IsometryDescriptor {
    pub fn shift(power: i64) -> Self {
        IsometryDescriptor::Shift { power }
    }

    pub fn rotation_turns(turns: BigRational) -> Self {
        IsometryDescriptor::Rotation {
            turns: Some(turns),
            angle: None,
        }
    }

    pub fn rotation_angle(angle: f64) -> Self {
        IsometryDescriptor::Rotation {
            turns: None,
            angle: Some(angle),
        }
    }

    pub fn translation(vector: Vec<f64>) -> Self {
        IsometryDescriptor::Translation { vector }
    }

    pub fn leg_permutation(perm: Vec<usize>) -> Self {
        IsometryDescriptor::LegPermutation { perm }
    }
}

impl fmt::Display for IsometryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsometryDescriptor::Identity => f.write_str("identity"),
            IsometryDescriptor::Shift { power } => write!(f, "shift^{power}"),
            IsometryDescriptor::Rotation { turns: Some(t), .. } => write!(f, "rotation({t} turn)"),
            IsometryDescriptor::Rotation { angle, .. } => {
                write!(f, "rotation({} rad)", angle.unwrap_or(f64::NAN))
            }
            IsometryDescriptor::Translation { vector } => write!(f, "translation{vector:?}"),
            IsometryDescriptor::LegPermutation { perm } => write!(f, "leg-permutation{perm:?}"),
            IsometryDescriptor::Composition { parts } => {
                f.write_str("compose(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}
