//! Truncated q-expansions over exact rationals.
//!
//! A [`QSeries`] stores `a_0, ..., a_{prec-1}`; the number of stored
//! coefficients *is* the certified precision. Every operation returns the
//! precision it can justify, so a result is never longer than its inputs allow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Q>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Q>) -> Self {
        QSeries { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        QSeries::new(it.into_iter().map(rational::q).collect())
    }

    pub fn from_bigints(v: Vec<BigInt>) -> Self {
        QSeries::new(v.into_iter().map(Q::from_integer).collect())
    }

    pub fn zero(prec: usize) -> Self {
        QSeries::new(vec![Q::zero(); prec])
    }

    pub fn constant(c: Q, prec: usize) -> Self {
        let mut s = QSeries::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(prec: usize) -> Self {
        QSeries::constant(Q::one(), prec)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    /// `a_n`, or `None` beyond the certified precision.
    pub fn coeff(&self, n: usize) -> Option<&Q> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient; equals `prec` when every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.prec())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        QSeries::new(self.coeffs.iter().take(prec).cloned().collect())
    }

    /// Multiplies by `q^n`; precision grows by `n`.
    pub fn shift(&self, n: usize) -> Self {
        let mut c = vec![Q::zero(); n];
        c.extend(self.coeffs.iter().cloned());
        QSeries::new(c)
    }

    /// Equality on the common known coefficients.
    pub fn eq_to_shared_prec(&self, other: &QSeries) -> bool {
        let n = self.prec().min(other.prec());
        self.coeffs[..n] == other.coeffs[..n]
    }

    pub fn add(&self, other: &QSeries) -> Self {
        let n = self.prec().min(other.prec());
        QSeries::new((0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &QSeries) -> Self {
        let n = self.prec().min(other.prec());
        QSeries::new((0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn neg(&self) -> Self {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scalar_mul(&self, c: &Q) -> Self {
        QSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product, known to `min(prec_a + val_b, prec_b + val_a)`.
    pub fn mul(&self, other: &QSeries) -> Self {
        let va = self.valuation();
        let vb = other.valuation();
        let prec = (self.prec() + vb).min(other.prec() + va);
        if self.is_integral() && other.is_integral() {
            let a: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer().clone()).collect();
            let b: Vec<BigInt> = other.coeffs.iter().map(|c| c.numer().clone()).collect();
            return QSeries::from_bigints(convolve_int(&a, &b, prec));
        }
        let mut out = vec![Q::zero(); prec];
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() || i >= prec {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        QSeries::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QSeries::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `1/a` for a series with nonzero constant term, to the same precision.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.coeffs.first().ok_or(Error::NonUnitConstantTerm)?;
        if a0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let inv0 = a0.recip();
        let n = self.prec();
        let mut b = vec![Q::zero(); n];
        b[0] = inv0.clone();
        for k in 1..n {
            let mut s = Q::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &b[k - i];
                }
            }
            b[k] = -s * &inv0;
        }
        Ok(QSeries::new(b))
    }

    /// `U_p`: `a_n -> a_{pn}`, precision `floor(prec / p)`.
    pub fn u_p(&self, p: u64) -> Result<Self> {
        let p = p as usize;
        if self.prec() < p {
            return Err(Error::InsufficientPrecision(format!(
                "U_{p} needs at least {p} coefficients, have {}",
                self.prec()
            )));
        }
        let n = self.prec() / p;
        Ok(QSeries::new((0..n).map(|i| self.coeffs[i * p].clone()).collect()))
    }

    /// `V_p`: `q -> q^p`, precision `prec * p`.
    pub fn v_p(&self, p: u64) -> Self {
        let p = p as usize;
        let mut out = vec![Q::zero(); self.prec() * p];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * p] = c.clone();
        }
        QSeries::new(out)
    }

    /// `T_p = U_p + p^{k-1} V_p` on a level-one form of weight `k`.
    pub fn hecke_t_p(&self, k: u32, p: u64) -> Result<Self> {
        self.hecke_t_p_with_character(k, p, 1)
    }

    /// `T_p = U_p + eps(p) p^{k-1} V_p` for a form with nebentypus value `eps(p)`.
    pub fn hecke_t_p_with_character(&self, k: u32, p: u64, eps: i64) -> Result<Self> {
        let u = self.u_p(p)?;
        if k == 0 {
            // p^{-1} V_p in weight zero
            let c = Q::new(BigInt::from(eps), BigInt::from(p));
            return Ok(u.add(&self.v_p(p).scalar_mul(&c)));
        }
        let c = Q::from_integer(BigInt::from(eps) * BigInt::from(p).pow(k - 1));
        Ok(u.add(&self.v_p(p).scalar_mul(&c)))
    }

    /// Coefficients reduced modulo `n`, or `None` if some denominator is not
    /// invertible mod `n`.
    pub fn reduce_mod(&self, n: &BigInt) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                let inv = mod_inverse(c.denom(), n)?;
                Some((c.numer() * inv).mod_floor(n))
            })
            .collect()
    }

    /// Line-oriented `n coefficient` text, one line per known coefficient.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{i} {}\n", rational::pretty(c)));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (idx, c) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad series line {line:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in {line:?}")))?;
            if idx != coeffs.len() {
                return Err(Error::Parse(format!(
                    "series lines must be consecutive from 0, got index {idx}"
                )));
            }
            coeffs.push(rational::parse(c)?);
        }
        Ok(QSeries::new(coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_q_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_q_vec::deserialize(d).map(QSeries::new)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{i}"),
            };
            if i == 0 || !mag.is_one() {
                f.write_str(&rational::pretty(&mag))?;
            }
            f.write_str(&mono)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

fn convolve_int(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); prec];
    for (i, ai) in a.iter().enumerate() {
        if i >= prec {
            break;
        }
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some((e.x * e.gcd.signum()).mod_floor(n))
}

/// Named q-expansions used as graded-ring generators and operator inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardSeries {
    E2,
    E4,
    E6,
    Delta,
    Theta,
    FSigmaOdd,
    ALevel2,
    HauptmodulF,
}

/// `sigma_k(n)` for `0 <= n < len` (with `sigma_k(0) = 0`), by a divisor sieve.
pub fn sigma_table(k: u32, len: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); len];
    for d in 1..len {
        let dk = BigInt::from(d).pow(k);
        let mut m = d;
        while m < len {
            s[m] += &dk;
            m += d;
        }
    }
    s
}

/// `prod_{n>=1} (1 + sign q^n)` to `prec` coefficients, `sign = +-1`.
fn euler_product(sign: i64, prec: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); prec];
    if prec == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for n in 1..prec {
        for i in (n..prec).rev() {
            let t = c[i - n].clone() * sign;
            c[i] += t;
        }
    }
    c
}

fn eisenstein(k: u32, factor: i64, prec: usize) -> QSeries {
    let sig = sigma_table(k - 1, prec);
    let mut c: Vec<BigInt> = sig.into_iter().map(|s| s * factor).collect();
    if prec > 0 {
        c[0] = BigInt::one();
    }
    QSeries::from_bigints(c)
}

pub fn standard_series(name: StandardSeries, prec: usize) -> QSeries {
    use StandardSeries::*;
    match name {
        E2 => eisenstein(2, -24, prec),
        E4 => eisenstein(4, 240, prec),
        E6 => eisenstein(6, -504, prec),
        Delta | HauptmodulF => {
            if prec == 0 {
                return QSeries::zero(0);
            }
            let sign = if name == Delta { -1 } else { 1 };
            let eta = QSeries::from_bigints(euler_product(sign, prec - 1));
            eta.pow(24).shift(1)
        }
        Theta => {
            let mut c = vec![BigInt::zero(); prec];
            if prec > 0 {
                c[0] = BigInt::one();
            }
            let mut n = 1usize;
            while n * n < prec {
                c[n * n] = BigInt::from(2);
                n += 1;
            }
            QSeries::from_bigints(c)
        }
        FSigmaOdd => {
            let sig = sigma_table(1, prec);
            QSeries::from_bigints(
                sig.into_iter()
                    .enumerate()
                    .map(|(n, s)| if n % 2 == 1 { s } else { BigInt::zero() })
                    .collect(),
            )
        }
        ALevel2 => {
            let e2 = eisenstein(2, -24, prec);
            let e2q2 = e2.v_p(2).truncate(prec);
            e2q2.scalar_mul(&rational::q(2)).sub(&e2)
        }
    }
}
