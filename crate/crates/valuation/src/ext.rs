use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A rational number or `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinity,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtendedRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            ExtendedRational::Infinity => None,
        }
    }

    /// Multiply by a nonnegative rational; `0 * inf` is taken to be `inf`.
    pub fn scale(&self, k: &BigRational) -> Self {
        match self {
            ExtendedRational::Finite(q) => ExtendedRational::Finite(q * k),
            ExtendedRational::Infinity => ExtendedRational::Infinity,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl From<BigRational> for ExtendedRational {
    fn from(q: BigRational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl From<i64> for ExtendedRational {
    fn from(n: i64) -> Self {
        ExtendedRational::from_int(n)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtendedRational {
    type Output = ExtendedRational;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                ExtendedRational::Finite(a + b)
            }
            _ => ExtendedRational::Infinity,
        }
    }
}

impl Add<&BigRational> for ExtendedRational {
    type Output = ExtendedRational;
    fn add(self, rhs: &BigRational) -> Self {
        match self {
            ExtendedRational::Finite(a) => ExtendedRational::Finite(a + rhs),
            ExtendedRational::Infinity => ExtendedRational::Infinity,
        }
    }
}

/// `inf - q = inf`; subtracting infinity is not defined and panics.
impl Sub<&BigRational> for ExtendedRational {
    type Output = ExtendedRational;
    fn sub(self, rhs: &BigRational) -> Self {
        match self {
            ExtendedRational::Finite(a) => ExtendedRational::Finite(a - rhs),
            ExtendedRational::Infinity => ExtendedRational::Infinity,
        }
    }
}

impl Sub for ExtendedRational {
    type Output = ExtendedRational;
    fn sub(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                ExtendedRational::Finite(a - b)
            }
            (ExtendedRational::Infinity, ExtendedRational::Finite(_)) => ExtendedRational::Infinity,
            _ => panic!("subtracting +inf"),
        }
    }
}

impl Neg for ExtendedRational {
    type Output = ExtendedRational;
    fn neg(self) -> Self {
        match self {
            ExtendedRational::Finite(a) => ExtendedRational::Finite(-a),
            ExtendedRational::Infinity => panic!("negating +inf"),
        }
    }
}

/// `num/den`, or just `num` when the denominator is one.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(q) => f.write_str(&rational_to_string(q)),
            ExtendedRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            Ok(ExtendedRational::Infinity)
        } else {
            parse_rational(s).map(ExtendedRational::Finite)
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;

    #[test]
    fn infinity_absorbs_and_dominates() {
        let a = ExtendedRational::from(frac(7, 3));
        assert!(ExtendedRational::Infinity > a);
        assert_eq!(a.clone() + ExtendedRational::Infinity, ExtendedRational::Infinity);
        assert_eq!(a.to_string(), "7/3");
        assert_eq!("inf".parse::<ExtendedRational>().unwrap(), ExtendedRational::Infinity);
        assert_eq!("-4/6".parse::<ExtendedRational>().unwrap(), frac(-2, 3).into());
    }
}

/// Serde adapter storing a `BigRational` as a `"num/den"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<BigRational>`.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
