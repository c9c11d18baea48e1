//! p-adic valuations of rationals and Newton polygons.
//!
//! Slopes are kept as exact rationals. Root valuations of a polynomial are the
//! negated slopes of the lower convex hull of `(i, v_p(c_i))`; roots at `X = 0`
//! are reported separately as a multiplicity rather than as `+inf` entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// `v_p(x)`; `Infinite` is the valuation of zero and compares greater than
/// every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Q),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Valuation::Finite(rational::q(v))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => f.write_str(&rational::pretty(v)),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_str(&rational::to_string(v)),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            return Ok(Valuation::Infinite);
        }
        rational::parse(&s)
            .map(Valuation::Finite)
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        n = quo;
        v += 1;
    }
}

pub fn val(x: &Q, p: u64) -> Valuation {
    debug_assert!(is_prime(p), "{p} is not prime");
    match val_int(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = val_int(x.denom(), p).unwrap_or(0);
            Valuation::from_int(vn as i64 - vd as i64)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "rational::serde_q")]
    pub slope: Q,
    pub length: usize,
}

/// Lower convex hull of a finite point set `(x, y)`. Points with `y = inf`
/// are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Valuation)>,
    pub vertices: Vec<(usize, Q)>,
    pub hull: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn new(points: Vec<(usize, Valuation)>) -> Self {
        let mut finite: Vec<(usize, Q)> = points
            .iter()
            .filter_map(|(x, y)| y.finite().map(|y| (*x, y.clone())))
            .collect();
        // for equal x keep the lowest point
        finite.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        finite.dedup_by(|later, earlier| later.0 == earlier.0);

        let mut lower: Vec<(usize, Q)> = Vec::new();
        for pt in finite {
            while lower.len() >= 2 {
                let a = &lower[lower.len() - 2];
                let b = &lower[lower.len() - 1];
                // drop b unless it lies strictly below the chord a -> pt
                let lhs = (&b.1 - &a.1) * Q::from_integer(BigInt::from(pt.0 - a.0));
                let rhs = (&pt.1 - &a.1) * Q::from_integer(BigInt::from(b.0 - a.0));
                if lhs >= rhs {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(pt);
        }

        let hull = lower
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Segment {
                    slope: (&w[1].1 - &w[0].1) / Q::from_integer(BigInt::from(len)),
                    length: len,
                }
            })
            .collect();
        NewtonPolygon {
            points,
            vertices: lower,
            hull,
        }
    }

    pub fn of_coefficients(coeffs: &[Q], p: u64) -> Self {
        let pts = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, val(c, p)))
            .collect();
        NewtonPolygon::new(pts)
    }

    /// Horizontal span covered by the hull.
    pub fn width(&self) -> usize {
        self.hull.iter().map(|s| s.length).sum()
    }
}

/// Valuations of the nonzero roots, ascending, together with the multiplicity
/// of the root `X = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootValuations {
    #[serde(with = "rational::serde_q_vec")]
    pub slopes: Vec<Q>,
    pub zero_roots: usize,
}

impl RootValuations {
    /// Number of roots (counted with multiplicity) whose valuation equals `v`.
    pub fn multiplicity(&self, v: &Q) -> usize {
        self.slopes.iter().filter(|s| *s == v).count()
    }

    /// Multiset containment: every element of `other` occurs here at least as often.
    pub fn contains_all(&self, other: &[Q]) -> bool {
        let mut pool = self.slopes.clone();
        for v in other {
            match pool.iter().position(|s| s == v) {
                Some(i) => {
                    pool.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

/// Root valuations of `c_0 + c_1 X + ... + c_d X^d`. Trailing zero
/// coefficients are ignored.
pub fn newton_slopes(coeffs: &[Q], p: u64) -> Result<RootValuations> {
    let hi = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(Error::EmptyPolynomial)?;
    let lo = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let poly = NewtonPolygon::of_coefficients(&coeffs[..=hi], p);
    debug_assert_eq!(poly.width(), hi - lo);
    let mut slopes = Vec::with_capacity(hi - lo);
    for seg in poly.hull.iter().rev() {
        let v = -seg.slope.clone();
        slopes.extend(std::iter::repeat_n(v, seg.length));
    }
    slopes.sort();
    Ok(RootValuations {
        slopes,
        zero_roots: lo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(val(&q(24), 2), Valuation::from_int(3));
        assert_eq!(val(&q(-24), 3), Valuation::from_int(1));
        assert_eq!(val(&q(0), 5), Valuation::Infinite);
        assert_eq!(val(&frac(3, 16), 2), Valuation::from_int(-4));
        let big = BigInt::from(5).pow(10u32) - 1;
        assert_eq!(val(&Q::from_integer(big), 2), Valuation::from_int(3));
    }

    #[test]
    fn infinite_is_top() {
        assert!(Valuation::Infinite > Valuation::from_int(1_000_000));
        assert!(Valuation::from_int(-3) < Valuation::from_int(2));
    }

    #[test]
    fn quadratic_examples() {
        let r = newton_slopes(&[q(2048), q(24), q(1)], 2).unwrap();
        assert_eq!(r.slopes, vec![q(3), q(8)]);
        assert_eq!(r.zero_roots, 0);
        let r = newton_slopes(&[q(1 << 15), q(-216), q(1)], 2).unwrap();
        assert_eq!(r.slopes, vec![q(3), q(12)]);
    }

    #[test]
    fn pure_power_has_only_zero_roots() {
        let r = newton_slopes(&[q(0), q(0), q(0), q(1)], 7).unwrap();
        assert!(r.slopes.is_empty());
        assert_eq!(r.zero_roots, 3);
    }

    #[test]
    fn empty_polynomial_is_an_error() {
        assert_eq!(newton_slopes(&[q(0), q(0)], 2), Err(Error::EmptyPolynomial));
        assert_eq!(newton_slopes(&[], 2), Err(Error::EmptyPolynomial));
    }

    #[test]
    fn collinear_points_merge() {
        // (X - 2)(X - 4)(X - 8) at p = 2 has distinct slopes; (X-2)^3 a single segment
        let r = newton_slopes(&[q(-8), q(12), q(-6), q(1)], 2).unwrap();
        assert_eq!(r.slopes, vec![q(1), q(1), q(1)]);
        let poly = NewtonPolygon::of_coefficients(&[q(-8), q(12), q(-6), q(1)], 2);
        assert_eq!(poly.hull.len(), 1);
        assert_eq!(poly.hull[0].length, 3);
    }

    #[test]
    fn ramified_slopes() {
        // X^2 - 2 has both roots of valuation 1/2
        let r = newton_slopes(&[q(-2), q(0), q(1)], 2).unwrap();
        assert_eq!(r.slopes, vec![frac(1, 2), frac(1, 2)]);
    }

    fn poly_from_roots(roots: &[Q]) -> Vec<Q> {
        let mut c = vec![Q::one()];
        for r in roots {
            let mut next = vec![Q::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        c
    }

    proptest! {
        #[test]
        fn slopes_match_rootwise_valuations(
            roots in prop::collection::vec((-60i64..60, 1i64..9), 1..=6),
            p in prop::sample::select(vec![2u64, 3, 5]),
        ) {
            let roots: Vec<Q> = roots.into_iter().map(|(n, d)| frac(n, d)).collect();
            let coeffs = poly_from_roots(&roots);
            let r = newton_slopes(&coeffs, p).unwrap();
            let mut expect: Vec<Q> = roots
                .iter()
                .filter_map(|x| val(x, p).finite().cloned())
                .collect();
            expect.sort();
            let zeros = roots.iter().filter(|x| x.is_zero()).count();
            prop_assert_eq!(r.slopes, expect);
            prop_assert_eq!(r.zero_roots, zeros);
        }

        #[test]
        fn twin_slopes_sum_to_weight_minus_one(a in -5000i64..5000, k in 2u32..30) {
            prop_assume!(a != 0);
            let c0 = Q::from_integer(BigInt::from(2).pow(k - 1));
            let r = newton_slopes(&[c0, q(-a), q(1)], 2).unwrap();
            prop_assert_eq!(r.slopes.len(), 2);
            prop_assert_eq!(&r.slopes[0] + &r.slopes[1], q(k as i64 - 1));
        }

        #[test]
        fn hull_is_permutation_invariant_and_convex(
            ys in prop::collection::vec(prop::option::of(-20i64..20), 1..12),
            seed in any::<u64>(),
        ) {
            let pts: Vec<(usize, Valuation)> = ys
                .iter()
                .enumerate()
                .map(|(i, y)| (i, y.map_or(Valuation::Infinite, Valuation::from_int)))
                .collect();
            let mut shuffled = pts.clone();
            // deterministic Fisher-Yates from the seed
            let mut s = seed;
            for i in (1..shuffled.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let a = NewtonPolygon::new(pts);
            let b = NewtonPolygon::new(shuffled);
            prop_assert_eq!(&a.hull, &b.hull);
            for w in a.hull.windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
            }
        }
    }
}
