//! Small helpers around `BigRational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|_| Error::InvalidArgument(format!("`{s}` is not a rational of the form p/q")))
}

pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `sqrt(q)` rounded to `f64`.
pub fn sqrt_to_f64(q: &BigRational) -> f64 {
    to_f64(q).sqrt()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    values.into_iter().fold(BigRational::zero(), |acc, q| acc + q)
}

/// Serde adapter storing a rational as the string `"p/q"`.
pub mod serde_ratio {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_ratio(&raw).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use num_rational::BigRational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.collect_str(q),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<BigRational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|raw| super::super::parse_ratio(&raw).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
