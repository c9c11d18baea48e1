//! Planner and checker for walks between boundary annuli.
//!
//! A walk from `X_i` to `X_1` (for `i >= 2`, with `a` the least exponent such
//! that `2^a - 1 > i`):
//!
//! ```text
//! start   z'  = (2i + 2^(a+1) - 1, m=0, s=2i)          on X_i
//! twin    z'' = (same, s = 2^(a+1) - 2)                 on X_(2^a - 1)
//! within  y'' = (2, m=a+1, s = 1 - 2^-a)                on X_(2^a - 1)
//! twin    y'  = (2, m=a+1, s = 2^-a)                    on X_1
//! ```
//!
//! For `i = 1` the start point `(9, 0, 2)` already lies on `X_1`. A certificate
//! between `X_i` and `X_i'` is the walk out of `X_i`, one move inside `X_1`,
//! and the reversed walk into `X_i'`.
//!
//! The checker re-derives everything: each point's annulus, every twin, and
//! the canonical route itself, so any single edited field is reported.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::eigencurve::{self, EigencurvePoint};
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::spaces;

pub const SCHEMA: u32 = 1;

/// Largest annulus index `connect` accepts.
pub const MAX_INDEX: u64 = 1 << 20;

/// Assumption tag for "same annulus implies same irreducible component".
pub const COMPONENT_AXIOM: &str = "bk_components";
pub const N_REGULAR: &str = "n_regular";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Start,
    WithinAnnulus,
    Twin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    LemPropagation,
    LemSlopeOfTwinPoint,
    LemPingPong,
    LemFirstStep,
    LemInductionStep,
}

impl Justification {
    fn admissible_for(self, kind: MoveKind) -> bool {
        use Justification::*;
        match kind {
            MoveKind::Start => self == LemFirstStep,
            MoveKind::WithinAnnulus => matches!(self, LemPropagation | LemInductionStep),
            MoveKind::Twin => matches!(
                self,
                LemFirstStep | LemInductionStep | LemPingPong | LemSlopeOfTwinPoint
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub from: EigencurvePoint,
    pub to: EigencurvePoint,
    pub justification: Justification,
}

impl Move {
    fn start(p: EigencurvePoint) -> Self {
        Move {
            kind: MoveKind::Start,
            from: p.clone(),
            to: p,
            justification: Justification::LemFirstStep,
        }
    }

    fn within(from: EigencurvePoint, to: EigencurvePoint, j: Justification) -> Self {
        Move {
            kind: MoveKind::WithinAnnulus,
            from,
            to,
            justification: j,
        }
    }

    fn twin(from: EigencurvePoint, j: Justification) -> Result<Self> {
        let to = eigencurve::twin(&from)?;
        Ok(Move {
            kind: MoveKind::Twin,
            from,
            to,
            justification: j,
        })
    }

    fn reversed(&self) -> Self {
        Move {
            from: self.to.clone(),
            to: self.from.clone(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionStatus {
    /// Verified by computation.
    Discharged,
    /// Declared, not checked here.
    Assumed,
    /// Part of the trusted base.
    Axiom,
    /// Checked and false.
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub tag: String,
    pub statement: String,
    pub status: AssumptionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    pub schema: u32,
    pub endpoints: (u64, u64),
    pub moves: Vec<Move>,
    pub assumptions: Vec<Assumption>,
}

impl PingPongCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnsupportedSchema,
    ChainBreak,
    MissingStart,
    StartNotFirst,
    NotInBoundary,
    NonIntegralIndex,
    Ordinary,
    NotPotentiallyCrystalline,
    NotClassical,
    IndexMismatch,
    TwinMismatch,
    IndexSumFailed,
    BadJustification,
    NonCanonicalConstruction,
    EndpointMismatch,
    MissingAssumption,
    NotRegular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `None` for certificate-level problems.
    pub move_index: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.move_index {
            Some(j) => write!(f, "move {j}: {:?}: {}", self.kind, self.detail),
            None => write!(f, "certificate: {:?}: {}", self.kind, self.detail),
        }
    }
}

/// Least `a` with `2^a - 1 > i`.
pub fn smallest_exponent(i: u64) -> u32 {
    64 - (i + 1).leading_zeros()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstStep {
    pub z_prime: EigencurvePoint,
    pub z_doubleprime: EigencurvePoint,
    pub moves: Vec<Move>,
}

/// `z' = (2i + 2^(m+1) - 1, 0, 2i)` on `X_i` and its twin on `X_(2^m - 1)`.
pub fn first_step(i: u64, m: u32) -> Result<FirstStep> {
    if i == 0 {
        return Err(Error::ConstraintViolated("annulus index must be positive".into()));
    }
    if m >= 31 || (1u64 << m) - 1 <= i {
        return Err(Error::ConstraintViolated(format!("need 2^m - 1 > i, got i = {i}, m = {m}")));
    }
    let k = u32::try_from(2 * i + (1u64 << (m + 1)) - 1)
        .map_err(|_| Error::ConstraintViolated(format!("weight overflows for i = {i}, m = {m}")))?;
    let s = rational::q(2 * i as i64);
    // two refinements of distinct slopes: 2i != (k - 1)/2
    debug_assert_ne!(&s * rational::q(2), rational::q(k as i64 - 1));
    let z_prime = EigencurvePoint::new(k, 0, s);
    let start = Move::start(z_prime.clone());
    let tw = Move::twin(z_prime.clone(), Justification::LemFirstStep)?;
    Ok(FirstStep {
        z_prime,
        z_doubleprime: tw.to.clone(),
        moves: vec![start, tw],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionStep {
    /// `(2, m+1, 1 - 2^-m)` on `X_(2^m - 1)`; `None` when `m = 1`.
    pub z_doubleprime: Option<EigencurvePoint>,
    /// Its twin `(2, m+1, 2^-m)` on `X_1`.
    pub z_prime: Option<EigencurvePoint>,
    pub moves: Vec<Move>,
}

pub fn induction_step(m: u32) -> Result<InductionStep> {
    if m == 0 || m >= 31 {
        return Err(Error::ConstraintViolated(format!("induction step needs 1 <= m <= 30, got {m}")));
    }
    if m == 1 {
        return Ok(InductionStep {
            z_doubleprime: None,
            z_prime: None,
            moves: Vec::new(),
        });
    }
    let eps = Q::new(One::one(), num_bigint::BigInt::one() << m);
    let zpp = EigencurvePoint::new(2, m + 1, Q::one() - eps);
    let tw = Move::twin(zpp.clone(), Justification::LemInductionStep)?;
    Ok(InductionStep {
        z_prime: Some(tw.to.clone()),
        z_doubleprime: Some(zpp),
        moves: vec![tw],
    })
}

/// Walk from `X_i` to a point of `X_1`, beginning with a start move.
fn walk(i: u64) -> Result<Vec<Move>> {
    let a = smallest_exponent(i);
    let fs = first_step(i, a)?;
    if i == 1 {
        return Ok(vec![fs.moves[0].clone()]);
    }
    let is = induction_step(a)?;
    let zpp = is.z_doubleprime.expect("a >= 2 for i >= 2");
    let mut moves = fs.moves;
    moves.push(Move::within(fs.z_doubleprime, zpp, Justification::LemPropagation));
    moves.extend(is.moves);
    Ok(moves)
}

fn default_assumptions() -> Vec<Assumption> {
    let a = |tag: &str, statement: &str, status| Assumption {
        tag: tag.into(),
        statement: statement.into(),
        status,
    };
    vec![
        a(
            COMPONENT_AXIOM,
            "points of the boundary eigencurve on the same annulus X_i lie on a common irreducible component",
            AssumptionStatus::Axiom,
        ),
        a(
            "pc_classical",
            "every point of the walk is classical and potentially crystalline with slope < k - 1",
            AssumptionStatus::Discharged,
        ),
        a(N_REGULAR, "the seed points are n-regular", AssumptionStatus::Assumed),
        a(
            "large_image",
            "the residual images contain SL2 and the seeds are not CM",
            AssumptionStatus::Assumed,
        ),
    ]
}

/// `X_i -> X_(2^a - 1) -> X_1 -> X_(2^b - 1) -> X_i'`.
pub fn connect(i_start: u64, i_end: u64) -> Result<PingPongCertificate> {
    for i in [i_start, i_end] {
        if i == 0 || i > MAX_INDEX {
            return Err(Error::Precondition(format!("annulus index {i} outside 1..={MAX_INDEX}")));
        }
    }
    let mut moves = walk(i_start)?;
    let tail = walk(i_end)?;
    let here = moves.last().unwrap().to.clone();
    let there = tail.last().unwrap().to.clone();
    moves.push(Move::within(here, there, Justification::LemPropagation));
    moves.extend(tail[1..].iter().rev().map(Move::reversed));
    Ok(PingPongCertificate {
        schema: SCHEMA,
        endpoints: (i_start, i_end),
        moves,
        assumptions: default_assumptions(),
    })
}

/// Records whether the seed `(a_p, k)` is `n`-regular at `p`.
pub fn discharge_regularity(cert: &mut PingPongCertificate, a_p: &Q, k: u32, p: u64, n: u32) -> Result<bool> {
    let ok = spaces::is_n_regular(a_p, k, p, n)?;
    let statement = format!(
        "seed with a_{p} = {}, k = {k} is {n}-regular",
        rational::pretty(a_p)
    );
    let status = if ok {
        AssumptionStatus::Discharged
    } else {
        AssumptionStatus::Refuted
    };
    match cert.assumptions.iter_mut().find(|a| a.tag == N_REGULAR) {
        Some(a) => {
            a.statement = statement;
            a.status = status;
        }
        None => cert.assumptions.push(Assumption {
            tag: N_REGULAR.into(),
            statement,
            status,
        }),
    }
    Ok(ok)
}

fn point_defect(p: &EigencurvePoint) -> Option<(ViolationKind, String)> {
    use ViolationKind::*;
    if !p.pc {
        return Some((NotPotentiallyCrystalline, format!("{p} is not potentially crystalline")));
    }
    match p.in_boundary() {
        Ok(true) => {}
        _ => return Some((NotInBoundary, format!("{p} is not over 0 < v(w) < 3"))),
    }
    if p.slope.is_zero() {
        return Some((Ordinary, format!("{p} is ordinary")));
    }
    if eigencurve::annulus_index(p).is_err() {
        return Some((NonIntegralIndex, format!("{p}: slope / v(w) is not a positive integer")));
    }
    if !p.classical || !p.is_numerically_non_critical() {
        return Some((NotClassical, format!("{p} is not certified classical")));
    }
    None
}

fn check_move(
    j: usize,
    mv: &Move,
    prev: Option<&Move>,
    canonical: Option<&Move>,
) -> Option<(ViolationKind, String)> {
    use ViolationKind::*;
    if let Some(prev) = prev {
        if prev.to != mv.from {
            return Some((ChainBreak, format!("starts at {} but the previous move ended at {}", mv.from, prev.to)));
        }
    }
    match (j, mv.kind) {
        (0, MoveKind::Start) => {}
        (0, _) => return Some((MissingStart, "the first move must be a start".into())),
        (_, MoveKind::Start) => return Some((StartNotFirst, "start after the first move".into())),
        _ => {}
    }
    if mv.kind == MoveKind::Start && mv.from != mv.to {
        return Some((ChainBreak, "a start move must begin and end at the same point".into()));
    }
    for p in [&mv.from, &mv.to] {
        if let Some(d) = point_defect(p) {
            return Some(d);
        }
    }
    let idx = |p| eigencurve::annulus_index(p).expect("checked above");
    match mv.kind {
        MoveKind::Start => {}
        MoveKind::WithinAnnulus => {
            let (a, b) = (idx(&mv.from), idx(&mv.to));
            if a != b {
                return Some((IndexMismatch, format!("X_{a} -> X_{b} is not inside one annulus")));
            }
        }
        MoveKind::Twin => {
            let expect = eigencurve::twin(&mv.from).expect("pc checked above");
            if expect != mv.to {
                return Some((TwinMismatch, format!("twin of {} is {}, not {}", mv.from, expect, mv.to)));
            }
            if !eigencurve::twin_index_sum_check(&mv.from).unwrap_or(false) {
                return Some((IndexSumFailed, format!("i + i' != (k - 1)/v(w) at {}", mv.from)));
            }
        }
    }
    if !mv.justification.admissible_for(mv.kind) {
        return Some((BadJustification, format!("{:?} cannot justify a {:?} move", mv.justification, mv.kind)));
    }
    match canonical {
        Some(c) if c == mv => None,
        Some(c) if c.kind == mv.kind && c.from == mv.from && c.to == mv.to => Some((
            BadJustification,
            format!("expected {:?}, found {:?}", c.justification, mv.justification),
        )),
        Some(c) => Some((
            NonCanonicalConstruction,
            format!("expected {:?} {} -> {}", c.kind, c.from, c.to),
        )),
        None => Some((NonCanonicalConstruction, "move beyond the canonical route".into())),
    }
}

pub fn verify_certificate(cert: &PingPongCertificate) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut cert_level = |kind, detail: String| {
        out.push(Violation {
            move_index: None,
            kind,
            detail,
        })
    };
    if cert.schema != SCHEMA {
        cert_level(ViolationKind::UnsupportedSchema, format!("schema {} (expected {SCHEMA})", cert.schema));
    }
    let (i0, i1) = cert.endpoints;
    let canonical = connect(i0, i1).ok();
    if canonical.is_none() {
        cert_level(ViolationKind::EndpointMismatch, format!("endpoints ({i0}, {i1}) are not annulus indices"));
    }
    if cert.moves.is_empty() {
        cert_level(ViolationKind::MissingStart, "no moves".into());
    }
    if let Some(c) = &canonical {
        if c.moves.len() != cert.moves.len() {
            cert_level(
                ViolationKind::NonCanonicalConstruction,
                format!("{} moves (expected {})", cert.moves.len(), c.moves.len()),
            );
        }
    }
    for (j, mv) in cert.moves.iter().enumerate() {
        let prev = j.checked_sub(1).map(|p| &cert.moves[p]);
        let canon = canonical.as_ref().and_then(|c| c.moves.get(j));
        if let Some((kind, detail)) = check_move(j, mv, prev, canon) {
            out.push(Violation {
                move_index: Some(j),
                kind,
                detail,
            });
        }
    }
    if let (Some(first), Some(last)) = (cert.moves.first(), cert.moves.last()) {
        for (end, p, which) in [(i0, &first.from, "start"), (i1, &last.to, "end")] {
            if let Ok(i) = eigencurve::annulus_index(p) {
                if i != end {
                    out.push(Violation {
                        move_index: None,
                        kind: ViolationKind::EndpointMismatch,
                        detail: format!("{which} point lies on X_{i}, endpoint says X_{end}"),
                    });
                }
            }
        }
    }
    let axiom = cert
        .assumptions
        .iter()
        .any(|a| a.tag == COMPONENT_AXIOM && a.status == AssumptionStatus::Axiom);
    if !axiom {
        out.push(Violation {
            move_index: None,
            kind: ViolationKind::MissingAssumption,
            detail: format!("the {COMPONENT_AXIOM} axiom is not declared"),
        });
    }
    for a in cert.assumptions.iter().filter(|a| a.status == AssumptionStatus::Refuted) {
        out.push(Violation {
            move_index: None,
            kind: if a.tag == N_REGULAR {
                ViolationKind::NotRegular
            } else {
                ViolationKind::MissingAssumption
            },
            detail: format!("{}: {}", a.tag, a.statement),
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigencurve::annulus_index;
    use crate::rational::{frac, q};

    #[test]
    fn exponents() {
        assert_eq!(smallest_exponent(1), 2);
        assert_eq!(smallest_exponent(2), 2);
        assert_eq!(smallest_exponent(3), 3);
        assert_eq!(smallest_exponent(6), 3);
        assert_eq!(smallest_exponent(7), 4);
        assert_eq!(smallest_exponent(64), 7);
    }

    #[test]
    fn first_steps() {
        let fs = first_step(1, 2).unwrap();
        assert_eq!(fs.z_prime, EigencurvePoint::new(9, 0, q(2)));
        assert_eq!(fs.z_doubleprime.slope, q(6));
        assert_eq!(annulus_index(&fs.z_doubleprime).unwrap(), 3);
        let fs = first_step(5, 3).unwrap();
        assert_eq!((fs.z_prime.k, fs.z_prime.slope.clone()), (25, q(10)));
        assert_eq!(annulus_index(&fs.z_prime).unwrap(), 5);
        assert_eq!(fs.z_doubleprime.slope, q(14));
        assert_eq!(annulus_index(&fs.z_doubleprime).unwrap(), 7);
        assert!(matches!(first_step(3, 2), Err(Error::ConstraintViolated(_))));
        assert_eq!(first_step(4, 3).unwrap().z_prime.k, 23);
    }

    #[test]
    fn induction_steps() {
        let is = induction_step(3).unwrap();
        let zpp = is.z_doubleprime.unwrap();
        assert_eq!((zpp.k, zpp.m, zpp.slope.clone()), (2, 4, frac(7, 8)));
        assert_eq!(annulus_index(&zpp).unwrap(), 7);
        assert_eq!(is.z_prime.unwrap().slope, frac(1, 8));
        assert!(induction_step(1).unwrap().moves.is_empty());
        let is = induction_step(2).unwrap();
        assert_eq!(is.z_doubleprime.unwrap().slope, frac(3, 4));
        assert_eq!(is.z_prime.unwrap().slope, frac(1, 4));
        assert!(induction_step(0).is_err());
    }

    #[test]
    fn connect_shapes() {
        let c = connect(1, 1).unwrap();
        assert_eq!(c.moves.len(), 2);
        assert!(verify_certificate(&c).is_ok());
        let c = connect(4, 1).unwrap();
        assert_eq!(c.moves[0].to.k, 23);
        assert_eq!(annulus_index(&c.moves[1].to).unwrap(), 7);
        assert!(verify_certificate(&c).is_ok());
        let c = connect(2, 5).unwrap();
        assert!(c.moves.len() <= 10);
        assert!(verify_certificate(&c).is_ok());
        assert!(connect(0, 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = connect(4, 7).unwrap();
        let back = PingPongCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"within_annulus\""));
        assert!(c.to_json().contains("\"lem_first_step\""));
    }

    #[test]
    fn one_slope_changed_gives_one_violation() {
        let mut c = connect(4, 7).unwrap();
        c.moves[3].from.slope += q(1);
        let v = verify_certificate(&c).unwrap_err();
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].move_index, Some(3));
    }

    #[test]
    fn twin_on_non_pc_point() {
        let mut c = connect(3, 3).unwrap();
        c.moves[1].from.pc = false;
        c.moves[0].to.pc = false;
        let v = verify_certificate(&c).unwrap_err();
        assert!(v.iter().any(|v| v.kind == ViolationKind::NotPotentiallyCrystalline && v.move_index == Some(1)));
    }

    #[test]
    fn alternative_weight_is_rejected() {
        // (11, 0, 2) is a valid point of X_1, but not the canonical seed
        let mut c = connect(5, 1).unwrap();
        let last = c.moves.len() - 1;
        c.moves[last].to.k = 11;
        let v = verify_certificate(&c).unwrap_err();
        assert!(v.iter().any(|v| v.kind == ViolationKind::NonCanonicalConstruction));
    }

    #[test]
    fn assumptions() {
        let mut c = connect(2, 3).unwrap();
        assert!(discharge_regularity(&mut c, &q(-24), 12, 2, 9).unwrap());
        assert!(verify_certificate(&c).is_ok());
        assert!(!discharge_regularity(&mut c, &q(0), 12, 2, 3).unwrap());
        let v = verify_certificate(&c).unwrap_err();
        assert_eq!(v[0].kind, ViolationKind::NotRegular);
        let mut c = connect(2, 3).unwrap();
        c.assumptions.retain(|a| a.tag != COMPONENT_AXIOM);
        assert_eq!(verify_certificate(&c).unwrap_err()[0].kind, ViolationKind::MissingAssumption);
    }

    #[test]
    fn structural_violations() {
        let c0 = connect(6, 9).unwrap();
        let mut c = c0.clone();
        c.moves.swap(0, 1);
        assert!(verify_certificate(&c).is_err());
        let mut c = c0.clone();
        c.endpoints.1 = 10;
        assert!(verify_certificate(&c).is_err());
        let mut c = c0.clone();
        c.moves[2].justification = Justification::LemFirstStep;
        let v = verify_certificate(&c).unwrap_err();
        assert_eq!(v[0].kind, ViolationKind::BadJustification);
        let mut c = c0;
        c.moves.clear();
        assert!(verify_certificate(&c).is_err());
    }
}
