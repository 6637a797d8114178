//! Exact rational helpers shared by every module.
//!
//! Rationals are `num_rational::BigRational`: arbitrary precision, always
//! reduced, positive denominator. Text form is `num/den`, with the
//! denominator omitted when it is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a comma separated list such as `1,-1/2,3`.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn sign_power(k: u32) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Uniform rational with numerator in `[-bound, bound]` and denominator in `[1, den_bound]`.
pub fn random_q<R: Rng + ?Sized>(rng: &mut R, bound: i64, den_bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=den_bound.max(1));
    ratio(n, d)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub(crate) mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_q_opt {
    use super::{format_q, Q};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_q(x)),
            None => s.serialize_none(),
        }
    }
}

pub(crate) mod serde_q_vec {
    use super::{format_q, parse_q, Q};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_omits_unit_denominator() {
        assert_eq!(format_q(&ratio(6, 3)), "2");
        assert_eq!(format_q(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_q(&ratio(3, -9)), "-1/3");
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_q("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_q(" -7 ").unwrap(), q(-7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(parse_q_list("1,1/2").unwrap(), vec![q(1), ratio(1, 2)]);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
