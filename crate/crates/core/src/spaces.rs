//! Spaces of classical modular forms built from fixed graded-ring generators.
//!
//! | level      | generators                                   |
//! |------------|----------------------------------------------|
//! | `SL2(Z)`   | `E4` (wt 4), `E6` (wt 6)                     |
//! | `Gamma0(2)`| `2 E2(q^2) - E2(q)` (wt 2), `E4` (wt 4)      |
//! | `Gamma1(4)`| `theta^2` (wt 1), `sum_{n odd} sigma(n) q^n` (wt 2) |
//!
//! A weight-`k` basis is every monomial in the two generators of total weight
//! `k`. Each build checks linear independence of the q-expansions, and every
//! operator matrix is certified by zero residuals on all coefficients that
//! were not used to solve for it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Mat};
use crate::padic::{self, newton_slopes, RootValuations, Valuation};
use crate::qseries::{standard_series, QSeries, StandardSeries};
use crate::rational::{self, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "sl2z")]
    Sl2z,
    #[serde(rename = "gamma0_2")]
    Gamma0_2,
    #[serde(rename = "gamma1_4")]
    Gamma1_4,
}

impl Level {
    /// `(generator, weight)` pairs.
    fn generators(self, prec: usize) -> [(QSeries, u32); 2] {
        use StandardSeries::*;
        match self {
            Level::Sl2z => [(standard_series(E4, prec), 4), (standard_series(E6, prec), 6)],
            Level::Gamma0_2 => [
                (standard_series(ALevel2, prec), 2),
                (standard_series(E4, prec), 4),
            ],
            Level::Gamma1_4 => [
                (standard_series(Theta, prec).pow(2), 1),
                (standard_series(FSigmaOdd, prec), 2),
            ],
        }
    }

    pub fn conductor(self) -> u64 {
        match self {
            Level::Sl2z => 1,
            Level::Gamma0_2 => 2,
            Level::Gamma1_4 => 4,
        }
    }

    /// Index used in the working-precision formula.
    fn mu(self) -> u32 {
        match self {
            Level::Sl2z => 1,
            Level::Gamma0_2 => 3,
            Level::Gamma1_4 => 12,
        }
    }

    fn admissible(self, k: u32) -> bool {
        match self {
            Level::Sl2z => k == 0 || (k.is_multiple_of(2) && k >= 4),
            Level::Gamma0_2 => k.is_multiple_of(2),
            Level::Gamma1_4 => k >= 1,
        }
    }

    /// Nebentypus value at a prime not dividing the level, in weight `k`.
    fn character_at(self, p: u64, k: u32) -> i64 {
        match self {
            Level::Gamma1_4 if p % 4 == 3 && k % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Sl2z => "sl2z",
            Level::Gamma0_2 => "gamma0_2",
            Level::Gamma1_4 => "gamma1_4",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2z" | "1" => Ok(Level::Sl2z),
            "gamma0_2" | "g0_2" => Ok(Level::Gamma0_2),
            "gamma1_4" | "g1_4" => Ok(Level::Gamma1_4),
            _ => Err(Error::Parse(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subspace {
    Full,
    /// Forms with `a_0 = 0`, in echelon form. At level one these are the cusp forms.
    ConstantFree,
}

pub fn sturm_bound(level: Level, k: u32) -> usize {
    ((k * level.mu()).div_ceil(12)) as usize
}

fn monomials(level: Level, k: u32) -> Vec<(u32, u32)> {
    let [(_, w1), (_, w2)] = level.generators(0);
    (0..=k / w2)
        .filter_map(|b| {
            let rest = k - b * w2;
            rest.is_multiple_of(w1).then_some((rest / w1, b))
        })
        .collect()
}

pub fn dimension(level: Level, k: u32) -> usize {
    monomials(level, k).len()
}

/// Default precision `2 ceil(k mu / 12) + dim + 10`.
pub fn working_prec(level: Level, k: u32) -> usize {
    2 * sturm_bound(level, k) + dimension(level, k) + 10
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceBasis {
    pub level: Level,
    pub k: u32,
    pub subspace: Subspace,
    pub prec: usize,
    pub dim: usize,
    pub basis: Vec<QSeries>,
}

impl SpaceBasis {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("basis serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let b: SpaceBasis = serde_json::from_str(s)?;
        if b.basis.len() != b.dim || b.basis.iter().any(|f| f.prec() != b.prec) {
            return Err(Error::Parse("basis shape does not match dim/prec".into()));
        }
        Ok(b)
    }

    fn coefficient_rows(&self, ncols: usize) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|f| f.coeffs().iter().take(ncols).cloned().collect())
            .collect()
    }

    /// `sum_i c_i basis_i`.
    pub fn combine(&self, c: &[Q]) -> QSeries {
        let mut acc = QSeries::zero(self.prec);
        for (ci, f) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                acc = acc.add(&f.scalar_mul(ci));
            }
        }
        acc
    }
}

/// All generator monomials of weight `k`, to at least the working precision.
pub fn build_basis(level: Level, k: u32, prec_hint: usize) -> Result<SpaceBasis> {
    if !level.admissible(k) {
        return Err(Error::ParityError {
            level: level.to_string(),
            k,
        });
    }
    let monos = monomials(level, k);
    let dim = monos.len();
    let prec = prec_hint.max(working_prec(level, k));
    let [(g1, _), (g2, _)] = level.generators(prec);

    let mut pow1 = vec![QSeries::one(prec)];
    let mut pow2 = vec![QSeries::one(prec)];
    let basis: Vec<QSeries> = monos
        .iter()
        .map(|&(a, b)| {
            while pow1.len() <= a as usize {
                let next = pow1.last().unwrap().mul(&g1).truncate(prec);
                pow1.push(next);
            }
            while pow2.len() <= b as usize {
                let next = pow2.last().unwrap().mul(&g2).truncate(prec);
                pow2.push(next);
            }
            pow1[a as usize].mul(&pow2[b as usize]).truncate(prec)
        })
        .collect();
    debug_assert!(basis.iter().all(|f| f.prec() == prec));

    let out = SpaceBasis {
        level,
        k,
        subspace: Subspace::Full,
        prec,
        dim,
        basis,
    };
    let rank = Echelon::new(&out.coefficient_rows(prec), prec).rank();
    if rank != dim {
        return Err(Error::DependentGenerators {
            level: level.to_string(),
            k,
            rank,
            expected: dim,
        });
    }
    Ok(out)
}

/// The `a_0 = 0` subspace in reduced echelon form.
pub fn constant_free_subspace(basis: &SpaceBasis) -> SpaceBasis {
    let e = Echelon::new(&basis.coefficient_rows(basis.prec), basis.prec);
    let rows: Vec<QSeries> = e
        .rows
        .iter()
        .zip(&e.pivots)
        .filter(|(_, &pc)| pc != 0)
        .map(|(r, _)| QSeries::new(r.clone()))
        .collect();
    SpaceBasis {
        level: basis.level,
        k: basis.k,
        subspace: Subspace::ConstantFree,
        prec: basis.prec,
        dim: rows.len(),
        basis: rows,
    }
}

/// Level-one cusp forms in Victor Miller form: `a_i(f_j) = delta_ij`, `1 <= i, j <= dim`.
pub fn cusp_subspace_level1(basis: &SpaceBasis) -> Result<SpaceBasis> {
    if basis.level != Level::Sl2z {
        return Err(Error::Precondition(format!(
            "cusp subspace by a_0 = 0 needs a single cusp, level is {}",
            basis.level
        )));
    }
    Ok(constant_free_subspace(basis))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeckeOp {
    U2,
    T(u64),
}

impl HeckeOp {
    pub fn prime(self) -> u64 {
        match self {
            HeckeOp::U2 => 2,
            HeckeOp::T(p) => p,
        }
    }

    /// Applies the operator to a q-expansion of a weight-`k` form of the given level.
    pub fn apply(self, f: &QSeries, level: Level, k: u32) -> Result<QSeries> {
        match self {
            HeckeOp::U2 => f.u_p(2),
            HeckeOp::T(p) => f.hecke_t_p_with_character(k, p, level.character_at(p, k)),
        }
    }
}

impl fmt::Display for HeckeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeOp::U2 => f.write_str("u2"),
            HeckeOp::T(p) => write!(f, "t{p}"),
        }
    }
}

impl FromStr for HeckeOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        if s == "u2" {
            return Ok(HeckeOp::U2);
        }
        if let Some(p) = s.strip_prefix('t') {
            if let Ok(p) = p.parse::<u64>() {
                if padic::is_prime(p) {
                    return Ok(HeckeOp::T(p));
                }
            }
        }
        Err(Error::Parse(format!("unknown operator {s:?} (expected u2 or t<prime>)")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub op: HeckeOp,
    pub level: Level,
    pub k: u32,
    pub subspace: Subspace,
    /// `op(basis_j) = sum_i entries[i][j] basis_i`
    #[serde(with = "rational::serde_q_mat")]
    pub entries: Mat,
    /// q-coefficients available after applying the operator.
    pub prec_used: usize,
    /// Coefficients verified to have zero residual beyond the solve rows.
    pub residual_checked: usize,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

pub fn operator_matrix(op: HeckeOp, basis: &SpaceBasis) -> Result<OperatorMatrix> {
    match op {
        HeckeOp::U2 if basis.level == Level::Sl2z => {
            return Err(Error::Precondition(
                "U2 does not preserve level-one forms; use gamma0_2 or gamma1_4".into(),
            ))
        }
        HeckeOp::T(p) if !padic::is_prime(p) || basis.level.conductor().is_multiple_of(p) => {
            return Err(Error::Precondition(format!(
                "T{p} needs a prime coprime to the level {}",
                basis.level
            )))
        }
        _ => {}
    }
    let images = basis
        .basis
        .iter()
        .map(|f| op.apply(f, basis.level, basis.k))
        .collect::<Result<Vec<_>>>()?;
    let avail = images.iter().map(QSeries::prec).min().unwrap_or(basis.prec / op.prime() as usize);

    let e = Echelon::new(&basis.coefficient_rows(avail), avail);
    let last_pivot = e.pivots.last().copied();
    if e.rank() < basis.dim || last_pivot.is_some_and(|lp| lp + 1 >= avail) {
        return Err(Error::InsufficientPrecision(format!(
            "{op} on {} weight {}: {avail} coefficients after the operator do not determine a {}-dimensional space with residual checks",
            basis.level, basis.k, basis.dim
        )));
    }
    let d = basis.dim;
    let mut entries = vec![vec![Q::zero(); d]; d];
    for (j, img) in images.iter().enumerate() {
        let col = e
            .express(&img.coeffs()[..avail])
            .map_err(|c| Error::ResidualNonzero {
                column: j,
                coefficient: c,
            })?;
        for i in 0..d {
            entries[i][j] = col[i].clone();
        }
    }
    Ok(OperatorMatrix {
        op,
        level: basis.level,
        k: basis.k,
        subspace: basis.subspace,
        entries,
        prec_used: avail,
        residual_checked: avail - d,
    })
}

/// Characteristic polynomial of the operator, low-to-high, monic.
pub fn charpoly(m: &OperatorMatrix) -> Vec<Q> {
    linalg::charpoly(&m.entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenform {
    pub eigenvalue: Q,
    /// Normalised so the first nonzero coefficient is 1.
    pub series: QSeries,
}

pub fn extract_slope_eigenform(
    m: &OperatorMatrix,
    basis: &SpaceBasis,
    target_slope: &Q,
    p: u64,
) -> Result<Eigenform> {
    let cp = charpoly(m);
    let rv = newton_slopes(&cp, p)?;
    if rv.multiplicity(target_slope) != 1 {
        return Err(Error::NoUniqueSlope(rational::pretty(target_slope)));
    }
    let lambda = linalg::rational_roots(&cp)
        .into_iter()
        .map(|(r, _)| r)
        .find(|r| padic::val(r, p) == Valuation::Finite(target_slope.clone()))
        .ok_or_else(|| Error::IrrationalEigenvalue(rational::pretty(target_slope)))?;

    let d = m.dim();
    let shifted: Mat = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        &m.entries[i][j] - &lambda
                    } else {
                        m.entries[i][j].clone()
                    }
                })
                .collect()
        })
        .collect();
    let ker = linalg::kernel(&shifted);
    if ker.len() != 1 {
        return Err(Error::NoUniqueSlope(rational::pretty(target_slope)));
    }
    let f = basis.combine(&ker[0]);
    let lead = f.coeffs()[f.valuation()].clone();
    let f = f.scalar_mul(&lead.recip());

    let image = m.op.apply(&f, basis.level, basis.k)?;
    if !image.eq_to_shared_prec(&f.scalar_mul(&lambda)) {
        let n = image.prec().min(f.prec());
        let bad = (0..n)
            .find(|&i| image.coeffs()[i] != &f.coeffs()[i] * &lambda)
            .unwrap_or(0);
        return Err(Error::ResidualNonzero {
            column: 0,
            coefficient: bad,
        });
    }
    Ok(Eigenform {
        eigenvalue: lambda,
        series: f,
    })
}

/// Root valuations `{v(alpha), v(beta)}` of `X^2 - a_p X + p^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementModel {
    #[serde(with = "rational::serde_q")]
    pub a_p: Q,
    pub k: u32,
    pub p: u64,
    #[serde(with = "rational::serde_q")]
    pub alpha_val: Q,
    #[serde(with = "rational::serde_q")]
    pub beta_val: Q,
}

fn hecke_polynomial(a_p: &Q, k: u32, p: u64) -> Vec<Q> {
    let c0 = if k == 0 {
        Q::new(BigInt::one(), BigInt::from(p))
    } else {
        Q::from_integer(BigInt::from(p).pow(k - 1))
    };
    vec![c0, -a_p.clone(), Q::one()]
}

pub fn refinement(a_p: &Q, k: u32, p: u64) -> RefinementModel {
    let rv = newton_slopes(&hecke_polynomial(a_p, k, p), p)
        .expect("Hecke polynomial is monic");
    debug_assert_eq!(rv.slopes.len(), 2);
    RefinementModel {
        a_p: a_p.clone(),
        k,
        p,
        alpha_val: rv.slopes[0].clone(),
        beta_val: rv.slopes[1].clone(),
    }
}

/// Multiplicative order of `alpha/beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RatioOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for RatioOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioOrder::Finite(n) => write!(f, "{n}"),
            RatioOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// `alpha/beta + beta/alpha = t - 2` with `t = a_p^2 / p^{k-1}`; a root of
/// unity needs `t - 2` to be `2 cos(2 pi j / d)` and rational, so only
/// `t in {0, 1, 2, 3}` give finite order (2, 3, 4, 6). `t = 4` is a repeated root.
pub fn ratio_order(a_p: &Q, k: u32, p: u64) -> Result<RatioOrder> {
    let pk = &hecke_polynomial(a_p, k, p)[0];
    let t = a_p * a_p / pk;
    if !t.is_integer() {
        return Ok(RatioOrder::Infinite);
    }
    let order = match i64::try_from(t.to_integer()) {
        Ok(0) => RatioOrder::Finite(2),
        Ok(1) => RatioOrder::Finite(3),
        Ok(2) => RatioOrder::Finite(4),
        Ok(3) => RatioOrder::Finite(6),
        Ok(4) => return Err(Error::RepeatedRoot),
        _ => RatioOrder::Infinite,
    };
    Ok(order)
}

pub fn is_n_regular(a_p: &Q, k: u32, p: u64, n: u32) -> Result<bool> {
    Ok(match ratio_order(a_p, k, p)? {
        RatioOrder::Infinite => true,
        RatioOrder::Finite(d) => d > n.saturating_sub(1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatadaRow {
    pub k: u32,
    pub dim: usize,
    #[serde(with = "rational::serde_q_vec")]
    pub charpoly: Vec<Q>,
    pub divisible_by_3: bool,
    pub divisible_by_8: bool,
    pub nonzero_constant: bool,
    pub slopes: RootValuations,
    pub non_ordinary: bool,
}

impl HatadaRow {
    pub fn pass(&self) -> bool {
        self.divisible_by_3 && self.divisible_by_8 && self.nonzero_constant && self.non_ordinary
    }
}

/// T2 on level-one cusp forms of weight `k`, with enough precision for the solve.
pub fn t2_level1_cusp(k: u32) -> Result<(SpaceBasis, OperatorMatrix)> {
    let full = build_basis(Level::Sl2z, k, 2 * working_prec(Level::Sl2z, k))?;
    let cusp = cusp_subspace_level1(&full)?;
    let m = operator_matrix(HeckeOp::T(2), &cusp)?;
    Ok((cusp, m))
}

/// For each even weight in the range: the T2 characteristic polynomial on
/// `S_k(SL2(Z))` is `X^dim` mod 3 and mod 8, has nonzero constant term, and
/// all its 2-adic slopes are positive.
pub fn hatada_check(ks: impl IntoIterator<Item = u32>) -> Result<Vec<HatadaRow>> {
    let mut rows = Vec::new();
    for k in ks.into_iter().filter(|k| k % 2 == 0 && *k >= 4) {
        let (cusp, m) = t2_level1_cusp(k)?;
        let cp = charpoly(&m);
        let dim = cusp.dim;
        let lower = &cp[..dim];
        let all_int = lower.iter().all(|c| c.is_integer());
        let divisible = |n: i64| {
            all_int
                && lower
                    .iter()
                    .all(|c| (c.numer() % BigInt::from(n)).is_zero())
        };
        let slopes = newton_slopes(&cp, 2)?;
        let non_ordinary = slopes.slopes.iter().all(|s| *s > Q::zero());
        rows.push(HatadaRow {
            k,
            dim,
            divisible_by_3: divisible(3),
            divisible_by_8: divisible(8),
            nonzero_constant: !cp[0].is_zero(),
            non_ordinary,
            slopes,
            charpoly: cp,
        });
    }
    Ok(rows)
}

/// Level-one rational T2 eigenvalues in weight `k` with their refinement
/// slopes, and the U2 slope multiset on `M_k(Gamma0(2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinEmbedding {
    pub k: u32,
    pub refinements: Vec<RefinementModel>,
    pub u2_slopes: RootValuations,
    pub contains_refinements: bool,
    pub contains_eisenstein: bool,
}

pub fn twin_slope_embedding(k: u32) -> Result<TwinEmbedding> {
    let (_, t2) = t2_level1_cusp(k)?;
    let refinements: Vec<RefinementModel> = linalg::rational_roots(&charpoly(&t2))
        .into_iter()
        .flat_map(|(a, mult)| std::iter::repeat_n(refinement(&a, k, 2), mult))
        .collect();
    let full = build_basis(Level::Gamma0_2, k, 2 * working_prec(Level::Gamma0_2, k))?;
    let u2 = operator_matrix(HeckeOp::U2, &full)?;
    let u2_slopes = newton_slopes(&charpoly(&u2), 2)?;
    let wanted: Vec<Q> = refinements
        .iter()
        .flat_map(|r| [r.alpha_val.clone(), r.beta_val.clone()])
        .collect();
    let eis = [Q::zero(), rational::q(k as i64 - 1)];
    let mut both = wanted.clone();
    both.extend(eis.iter().cloned());
    Ok(TwinEmbedding {
        k,
        contains_refinements: u2_slopes.contains_all(&wanted),
        contains_eisenstein: u2_slopes.contains_all(&both),
        refinements,
        u2_slopes,
    })
}

/// The weight-5 `Gamma1(4)` space with `a_0 = 0` and its U2 matrix.
pub fn gamma1_4_weight5_u2() -> Result<(SpaceBasis, OperatorMatrix)> {
    let full = build_basis(Level::Gamma1_4, 5, 2 * working_prec(Level::Gamma1_4, 5))?;
    let sub = constant_free_subspace(&full);
    let m = operator_matrix(HeckeOp::U2, &sub)?;
    Ok((sub, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.coeffs()[..n]
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_basis(Level::Sl2z, 12, 0).unwrap().dim, 2);
        assert_eq!(build_basis(Level::Gamma1_4, 5, 0).unwrap().dim, 3);
        assert_eq!(build_basis(Level::Gamma0_2, 8, 0).unwrap().dim, 3);
        assert_eq!(build_basis(Level::Sl2z, 0, 0).unwrap().dim, 1);
        for level in [Level::Gamma0_2, Level::Gamma1_4] {
            let mut last = 0;
            for k in (1..=40).filter(|k| level.admissible(*k)) {
                let d = dimension(level, k);
                assert!(d >= last, "{level} k={k}");
                last = d;
            }
        }
        // level one drops at k = 2 mod 12 (dim M_12 = 2, dim M_14 = 1)
        assert_eq!((dimension(Level::Sl2z, 12), dimension(Level::Sl2z, 14)), (2, 1));
        for k in (4..=40).step_by(2) {
            assert_eq!(dimension(Level::Sl2z, k + 12), dimension(Level::Sl2z, k) + 1);
            let expected = if k % 12 == 2 { k / 12 } else { k / 12 + 1 } as usize;
            assert_eq!(dimension(Level::Sl2z, k), expected, "k={k}");
        }
    }

    #[test]
    fn parity_errors() {
        assert!(matches!(build_basis(Level::Sl2z, 7, 0), Err(Error::ParityError { .. })));
        assert!(matches!(build_basis(Level::Sl2z, 2, 0), Err(Error::ParityError { .. })));
        assert!(matches!(build_basis(Level::Gamma0_2, 3, 0), Err(Error::ParityError { .. })));
    }

    #[test]
    fn precision_meets_the_sturm_margin() {
        for (level, k) in [(Level::Sl2z, 60), (Level::Gamma0_2, 40), (Level::Gamma1_4, 9)] {
            let b = build_basis(level, k, 0).unwrap();
            assert!(b.prec >= sturm_bound(level, k) + b.dim + 4);
        }
    }

    #[test]
    fn victor_miller_cusp_forms() {
        let s12 = cusp_subspace_level1(&build_basis(Level::Sl2z, 12, 0).unwrap()).unwrap();
        assert_eq!(s12.dim, 1);
        assert_eq!(ints(&s12.basis[0], 4), vec![0, 1, -24, 252]);
        let s10 = cusp_subspace_level1(&build_basis(Level::Sl2z, 10, 0).unwrap()).unwrap();
        assert_eq!(s10.dim, 0);
        let s24 = cusp_subspace_level1(&build_basis(Level::Sl2z, 24, 0).unwrap()).unwrap();
        assert_eq!(s24.dim, 2);
        assert_eq!(ints(&s24.basis[0], 3), vec![0, 1, 0]);
        assert_eq!(ints(&s24.basis[1], 3), vec![0, 0, 1]);
        assert!(cusp_subspace_level1(&build_basis(Level::Gamma0_2, 4, 0).unwrap()).is_err());
    }

    #[test]
    fn t2_on_delta_and_constants() {
        let (_, m) = t2_level1_cusp(12).unwrap();
        assert_eq!(m.entries, vec![vec![q(-24)]]);
        assert_eq!(charpoly(&m), vec![q(24), q(1)]);
        let m0 = operator_matrix(HeckeOp::T(2), &build_basis(Level::Sl2z, 0, 0).unwrap()).unwrap();
        // weight 0: T2(1) = (1 + 1/2) 1
        assert_eq!(m0.entries, vec![vec![frac(3, 2)]]);
    }

    #[test]
    fn weight_24_charpoly() {
        let (_, m) = t2_level1_cusp(24).unwrap();
        let cp = charpoly(&m);
        assert_eq!(cp.len(), 3);
        assert!(!cp[0].is_zero());
        assert_eq!(cp[1], q(-1080));
        let rv = newton_slopes(&cp, 2).unwrap();
        assert!(rv.slopes.iter().all(|s| *s > Q::zero()));
        // irrational eigenvalues: extraction must refuse
        let basis = cusp_subspace_level1(&build_basis(Level::Sl2z, 24, 48).unwrap()).unwrap();
        let r = extract_slope_eigenform(&m, &basis, &rv.slopes[0], 2);
        assert!(matches!(r, Err(Error::IrrationalEigenvalue(_)) | Err(Error::NoUniqueSlope(_))));
    }

    #[test]
    fn u2_weight5_gamma1_4() {
        let (sub, m) = gamma1_4_weight5_u2().unwrap();
        assert_eq!(sub.dim, 2);
        let cp = charpoly(&m);
        let roots = linalg::rational_roots(&cp);
        assert!(roots.iter().any(|(r, _)| *r == q(-4)));
        let f0 = extract_slope_eigenform(&m, &sub, &q(2), 2).unwrap();
        assert_eq!(f0.eigenvalue, q(-4));
        assert_eq!(ints(&f0.series, 9), vec![0, 1, -4, 0, 16, -14, 0, 0, -64]);
        assert!(matches!(
            extract_slope_eigenform(&m, &sub, &q(5), 2),
            Err(Error::NoUniqueSlope(_))
        ));
    }

    #[test]
    fn delta_by_extraction() {
        let (cusp, m) = t2_level1_cusp(12).unwrap();
        let d = extract_slope_eigenform(&m, &cusp, &q(3), 2).unwrap();
        let delta = standard_series(StandardSeries::Delta, d.series.prec());
        assert!(d.series.eq_to_shared_prec(&delta));
    }

    #[test]
    fn operator_preconditions() {
        let b = build_basis(Level::Sl2z, 12, 0).unwrap();
        assert!(matches!(operator_matrix(HeckeOp::U2, &b), Err(Error::Precondition(_))));
        let b2 = build_basis(Level::Gamma0_2, 4, 0).unwrap();
        assert!(matches!(operator_matrix(HeckeOp::T(2), &b2), Err(Error::Precondition(_))));
        // too little precision after T5
        let tight = SpaceBasis {
            basis: b.basis.iter().map(|f| f.truncate(6)).collect(),
            prec: 6,
            ..b.clone()
        };
        assert!(matches!(
            operator_matrix(HeckeOp::T(5), &tight),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn residual_detects_non_invariant_space() {
        // span{Delta + q^2-perturbation} is not T2-stable
        let mut d = standard_series(StandardSeries::Delta, 40).into_coeffs();
        d[3] += q(1);
        let fake = SpaceBasis {
            level: Level::Sl2z,
            k: 12,
            subspace: Subspace::ConstantFree,
            prec: 40,
            dim: 1,
            basis: vec![QSeries::new(d)],
        };
        assert!(matches!(
            operator_matrix(HeckeOp::T(2), &fake),
            Err(Error::ResidualNonzero { .. })
        ));
    }

    #[test]
    fn refinements() {
        let r = refinement(&q(-24), 12, 2);
        assert_eq!((r.alpha_val, r.beta_val), (q(3), q(8)));
        let r = refinement(&q(-4), 5, 2);
        assert_eq!((r.alpha_val, r.beta_val), (q(2), q(2)));
        let r = refinement(&q(0), 12, 2);
        assert_eq!((r.alpha_val, r.beta_val), (frac(11, 2), frac(11, 2)));
    }

    #[test]
    fn ratio_orders() {
        assert_eq!(ratio_order(&q(0), 12, 2).unwrap(), RatioOrder::Finite(2));
        assert_eq!(ratio_order(&q(-24), 12, 2).unwrap(), RatioOrder::Infinite);
        assert_eq!(ratio_order(&q(-4), 5, 5).unwrap(), RatioOrder::Infinite);
        assert_eq!(ratio_order(&q(32), 11, 2).unwrap(), RatioOrder::Finite(3));
        assert_eq!(ratio_order(&q(64), 12, 2).unwrap(), RatioOrder::Finite(4));
        assert_eq!(ratio_order(&q(27), 7, 3).unwrap(), RatioOrder::Finite(3));
        assert_eq!(ratio_order(&q(3), 2, 3).unwrap(), RatioOrder::Finite(6));
        assert_eq!(ratio_order(&q(4), 3, 2), Err(Error::RepeatedRoot));
        assert!(is_n_regular(&q(-24), 12, 2, 9).unwrap());
        assert!(!is_n_regular(&q(0), 12, 2, 3).unwrap());
        assert!(is_n_regular(&q(0), 12, 2, 2).unwrap());
        assert!(is_n_regular(&q(-24), 12, 2, 1000).unwrap());
    }

    #[test]
    fn hatada_small() {
        let rows = hatada_check([4, 12, 16]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].dim, 0);
        assert!(rows.iter().all(HatadaRow::pass));
        assert_eq!(rows[1].charpoly, vec![q(24), q(1)]);
    }

    #[test]
    fn hecke_operators_commute() {
        for k in (12..=40).step_by(2) {
            let full = build_basis(Level::Sl2z, k, 3 * working_prec(Level::Sl2z, k)).unwrap();
            let cusp = cusp_subspace_level1(&full).unwrap();
            if cusp.dim == 0 {
                continue;
            }
            let t2 = operator_matrix(HeckeOp::T(2), &cusp).unwrap();
            let t3 = operator_matrix(HeckeOp::T(3), &cusp).unwrap();
            assert_eq!(
                linalg::mat_mul(&t2.entries, &t3.entries),
                linalg::mat_mul(&t3.entries, &t2.entries),
                "k={k}"
            );
        }
    }

    #[test]
    fn twin_embedding_weight_12() {
        let t = twin_slope_embedding(12).unwrap();
        assert_eq!(t.refinements.len(), 1);
        assert!(t.contains_refinements && t.contains_eisenstein);
        assert!(t.u2_slopes.contains_all(&[q(3), q(8), q(0), q(11)]));
    }

    #[test]
    fn json_round_trip() {
        let b = build_basis(Level::Gamma1_4, 3, 0).unwrap();
        let back = SpaceBasis::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        let (_, m) = gamma1_4_weight5_u2().unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: OperatorMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
