//! Classical points of the 2-adic tame-level-1 eigencurve, reduced to the
//! data the annulus walk consumes: weight character, slope, and two flags.
//!
//! Over the boundary `0 < v(w) < 3` the eigencurve splits into annuli `X_i`
//! on which `slope = i * v(w)`. The twin involution fixes `(k, m)` and sends
//! `s` to `k - 1 - s`.
//!
//! Points are plain values. Construction does not validate; [`EigencurvePoint::validate`]
//! does, so a tampered certificate still parses and reports its defects.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::weightspace::{self, WeightCharacter};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigencurvePoint {
    pub k: u32,
    pub m: u32,
    #[serde(with = "rational::serde_q")]
    pub slope: Q,
    /// Potentially crystalline at 2 (not a twist of Steinberg).
    pub pc: bool,
    pub classical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Ordinary,
    NumericallyNonCritical,
    Neither,
}

impl EigencurvePoint {
    pub fn new(k: u32, m: u32, slope: Q) -> Self {
        Self {
            k,
            m,
            slope,
            pc: true,
            classical: true,
        }
    }

    pub fn wc(&self) -> WeightCharacter {
        WeightCharacter { k: self.k, m: self.m }
    }

    pub fn w_valuation(&self) -> Result<Q> {
        weightspace::w_valuation(self.wc())
    }

    pub fn in_boundary(&self) -> Result<bool> {
        weightspace::in_boundary(self.wc())
    }

    fn critical_bound(&self) -> Q {
        rational::q(self.k as i64 - 1)
    }

    /// `slope < k - 1`.
    pub fn is_numerically_non_critical(&self) -> bool {
        !self.slope.is_negative() && self.slope < self.critical_bound()
    }

    pub fn classify(&self) -> Classification {
        if self.slope.is_zero() {
            Classification::Ordinary
        } else if self.is_numerically_non_critical() {
            Classification::NumericallyNonCritical
        } else {
            Classification::Neither
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Precondition(format!("weight k = {} must be at least 2", self.k)));
        }
        if self.slope.is_negative() {
            return Err(Error::ConstraintViolated(format!("negative slope {}", rational::pretty(&self.slope))));
        }
        if self.in_boundary()? {
            annulus_index(self)?;
        }
        if self.classical && !self.is_numerically_non_critical() {
            return Err(Error::ConstraintViolated(format!(
                "classical point with slope {} >= k - 1 = {}",
                rational::pretty(&self.slope),
                self.k - 1
            )));
        }
        Ok(())
    }
}

impl fmt::Display for EigencurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, m={}, s={})", self.k, self.m, rational::pretty(&self.slope))
    }
}

/// `i` with `slope = i * v(w)` on a boundary point.
pub fn annulus_index(pt: &EigencurvePoint) -> Result<u64> {
    let v = pt.w_valuation()?;
    if !pt.in_boundary()? {
        return Err(Error::NotInBoundary(pt.wc().to_string()));
    }
    let i = &pt.slope / &v;
    let non_integral = || Error::NonIntegralIndex {
        slope: rational::pretty(&pt.slope),
        wval: rational::pretty(&v),
    };
    if !i.is_integer() || !i.is_positive() {
        return Err(non_integral());
    }
    u64::try_from(i.to_integer()).map_err(|_| non_integral())
}

pub fn twin(pt: &EigencurvePoint) -> Result<EigencurvePoint> {
    if !pt.pc {
        return Err(Error::NotPotentiallyCrystalline);
    }
    Ok(EigencurvePoint {
        slope: pt.critical_bound() - &pt.slope,
        ..pt.clone()
    })
}

/// `index(pt) + index(twin(pt)) = (k - 1) / v(w)`, with the right side an integer.
pub fn twin_index_sum_check(pt: &EigencurvePoint) -> Result<bool> {
    let i = annulus_index(pt)?;
    let j = annulus_index(&twin(pt)?)?;
    let total = pt.critical_bound() / pt.w_valuation()?;
    Ok(total.is_integer() && total == rational::q((i + j) as i64))
}

pub fn bk_predicted_slope(i: u64, wc: WeightCharacter) -> Result<Q> {
    let v = weightspace::w_valuation(wc)?;
    if !weightspace::in_boundary(wc)? {
        return Err(Error::NotInBoundary(wc.to_string()));
    }
    Ok(rational::q(i as i64) * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use proptest::prelude::*;

    fn pt(k: u32, m: u32, s: Q) -> EigencurvePoint {
        EigencurvePoint::new(k, m, s)
    }

    #[test]
    fn annulus_indices() {
        assert_eq!(annulus_index(&pt(5, 0, q(2))).unwrap(), 1);
        for m0 in 1..=10u32 {
            let s = q(1) - frac(1, 1 << m0);
            assert_eq!(annulus_index(&pt(2, m0 + 1, s)).unwrap(), (1u64 << m0) - 1);
        }
        assert!(matches!(annulus_index(&pt(5, 0, q(3))), Err(Error::NonIntegralIndex { .. })));
        assert!(matches!(annulus_index(&pt(12, 0, q(3))), Err(Error::NotInBoundary(_))));
        assert!(matches!(annulus_index(&pt(5, 0, q(0))), Err(Error::NonIntegralIndex { .. })));
    }

    #[test]
    fn twins() {
        let f0 = pt(5, 0, q(2));
        assert_eq!(twin(&f0).unwrap(), f0);
        assert!(twin_index_sum_check(&f0).unwrap());
        let z = pt(11, 0, q(2));
        assert_eq!(annulus_index(&twin(&z).unwrap()).unwrap(), 4);
        assert!(twin_index_sum_check(&z).unwrap());
        let (i, m) = (3u32, 3u32);
        let kp = 2 * i + (1 << (m + 1)) - 1;
        let zp = pt(kp, 0, q(2 * i as i64));
        let zpp = twin(&zp).unwrap();
        assert_eq!(zpp.slope, q((1 << (m + 1)) - 2));
        assert_eq!(annulus_index(&zpp).unwrap(), (1 << m) - 1);
        assert_eq!(twin(&pt(12, 0, q(0))).unwrap().slope, q(11));
        let mut st = f0.clone();
        st.pc = false;
        assert_eq!(twin(&st), Err(Error::NotPotentiallyCrystalline));
    }

    #[test]
    fn classification() {
        assert_eq!(pt(12, 0, q(0)).classify(), Classification::Ordinary);
        assert_eq!(pt(12, 0, q(3)).classify(), Classification::NumericallyNonCritical);
        assert_eq!(pt(5, 0, q(4)).classify(), Classification::Neither);
    }

    #[test]
    fn predicted_slopes() {
        assert_eq!(bk_predicted_slope(1, WeightCharacter { k: 5, m: 0 }).unwrap(), q(2));
        assert_eq!(bk_predicted_slope(3, WeightCharacter { k: 2, m: 4 }).unwrap(), frac(3, 8));
        for m in 1..=10u32 {
            assert_eq!(
                bk_predicted_slope((1 << m) - 1, WeightCharacter { k: 2, m: m + 1 }).unwrap(),
                q(1) - frac(1, 1 << m)
            );
        }
        assert!(matches!(
            bk_predicted_slope(1, WeightCharacter { k: 12, m: 0 }),
            Err(Error::NotInBoundary(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(pt(5, 0, q(2)).validate().is_ok());
        assert!(pt(5, 0, q(3)).validate().is_err());
        assert!(pt(5, 0, q(4)).validate().is_err());
        let mut p = pt(5, 0, q(4));
        p.classical = false;
        assert!(p.validate().is_ok());
    }

    #[test]
    fn json_round_trip() {
        let p = pt(2, 4, frac(7, 8));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"k":2,"m":4,"slope":"7/8","pc":true,"classical":true}"#);
        assert_eq!(serde_json::from_str::<EigencurvePoint>(&s).unwrap(), p);
    }

    /// A valid boundary pc point: odd `k` with `m = 0`, or any `k` with `m >= 1`.
    fn boundary_point() -> impl Strategy<Value = EigencurvePoint> {
        (2u32..400, 0u32..12, 1u64..10_000).prop_filter_map("boundary with integral twin", |(k, m, i)| {
            let wc = WeightCharacter { k, m };
            let v = weightspace::w_valuation(wc).ok()?;
            if !weightspace::in_boundary(wc).ok()? {
                return None;
            }
            let total = q(k as i64 - 1) / &v;
            let i = q(i as i64);
            (total.is_integer() && i < total).then(|| pt(k, m, i * v))
        })
    }

    proptest! {
        #[test]
        fn twin_is_an_involution(p in boundary_point()) {
            prop_assert_eq!(twin(&twin(&p).unwrap()).unwrap(), p);
        }

        #[test]
        fn index_sum(p in boundary_point()) {
            prop_assert!(twin_index_sum_check(&p).unwrap());
        }

        #[test]
        fn slope_reconstruction(p in boundary_point()) {
            let i = annulus_index(&p).unwrap();
            prop_assert_eq!(bk_predicted_slope(i, p.wc()).unwrap(), p.slope.clone());
            prop_assert!(p.slope > q(0));
        }
    }
}
