//! The weight-space component with `kappa(-1) = 1`, its coordinate
//! `w = kappa(5) - 1`, and the boundary annulus `0 < v(w) < 3`.
//!
//! A weight character is recorded as `(k, m)` with `kappa(5) = 5^(k-2) zeta`,
//! `zeta` a primitive `2^m`-th root of unity. Only `v(w)` is ever needed, so
//! the choice of `zeta` is not stored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightCharacter {
    pub k: u32,
    pub m: u32,
}

impl WeightCharacter {
    pub fn new(k: u32, m: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition(format!("weight k = {k} must be at least 2")));
        }
        Ok(Self { k, m })
    }
}

impl fmt::Display for WeightCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={},m={}", self.k, self.m)
    }
}

impl FromStr for WeightCharacter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected k=<int>,m=<int>, got {s:?}"));
        let (k, m) = s.split_once(',').ok_or_else(bad)?;
        let k = k.trim().strip_prefix("k=").ok_or_else(bad)?;
        let m = m.trim().strip_prefix("m=").ok_or_else(bad)?;
        Self::new(k.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WCoordinate {
    #[serde(with = "crate::rational::serde_q")]
    pub valuation: Q,
    pub in_boundary: bool,
}

/// `v_2(w)`: `2^(1-m)` for `m >= 1`; for `m = 0` it is `v_2(5^(k-2) - 1)`,
/// which is 2 for odd `k` and `2 + v_2(k-2)` for even `k`.
pub fn w_valuation(wc: WeightCharacter) -> Result<Q> {
    if wc.k < 2 {
        return Err(Error::Precondition(format!("weight k = {} must be at least 2", wc.k)));
    }
    if wc.m >= 1 {
        return Ok(Q::new(BigInt::one(), BigInt::one() << (wc.m - 1)));
    }
    if wc.k == 2 {
        return Err(Error::CenterOfWeightSpace);
    }
    let e = wc.k - 2;
    let v = if e % 2 == 1 { 2 } else { 2 + e.trailing_zeros() };
    Ok(Q::from_integer(BigInt::from(v)))
}

fn boundary_test(v: &Q) -> bool {
    *v > Q::from_integer(0.into()) && *v < Q::from_integer(3.into())
}

pub fn in_boundary(wc: WeightCharacter) -> Result<bool> {
    Ok(boundary_test(&w_valuation(wc)?))
}

pub fn w_coordinate(wc: WeightCharacter) -> Result<WCoordinate> {
    let valuation = w_valuation(wc)?;
    Ok(WCoordinate {
        in_boundary: boundary_test(&valuation),
        valuation,
    })
}
