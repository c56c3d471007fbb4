//! Rational substitution points for `q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::pow_rat;
use crate::error::{Error, Result};

/// A rational value for `q`, never 0 or ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSample(BigRational);

impl QSample {
    pub fn new(v: BigRational) -> Result<Self> {
        if v.is_zero() || v.abs().is_one() {
            return Err(Error::InadmissibleSample(render_rational(&v)));
        }
        Ok(QSample(v))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Parse { what: "sample", message: "zero denominator".into() });
        }
        QSample::new(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

pub fn render_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for QSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.0))
    }
}

impl FromStr for QSample {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "sample", message: format!("expected p or p/r, got {s:?}") };
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        QSample::new(BigRational::new(n, d))
    }
}

impl Serialize for QSample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QSample {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Largest absolute degree shift considered by default (the sweep range).
pub const DEFAULT_SHIFT_BOUND: i64 = 4;

/// Radius of exponents that must avoid the bad loci for a window of bound `n`.
pub fn admissibility_radius(n: i64, shift_bound: i64) -> i64 {
    3 * n + shift_bound.abs() + 2
}

/// True when `{k} != 0` and `1 + q^k != 0` at `q = s` for all `0 < |k| <= R`.
pub fn is_admissible_radius(s: &QSample, radius: i64) -> bool {
    let one = BigRational::one();
    (1..=radius).all(|k| {
        [k, -k].iter().all(|&e| {
            let p = pow_rat(s.value(), e);
            p != one && p != -one.clone()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_values() {
        assert!(QSample::from_ratio(1, 1).is_err());
        assert!(QSample::from_ratio(-1, 1).is_err());
        assert!(QSample::from_ratio(0, 3).is_err());
        assert!("2/2".parse::<QSample>().is_err());
    }

    #[test]
    fn admissible_examples() {
        let s = QSample::from_ratio(2, 1).unwrap();
        assert!(is_admissible_radius(&s, admissibility_radius(12, DEFAULT_SHIFT_BOUND)));
        let t: QSample = "3/2".parse().unwrap();
        assert!(is_admissible_radius(&t, 60));
        assert_eq!(t.to_string(), "3/2");
    }
}
