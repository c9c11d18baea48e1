//! Frozen reference values and the independent routes that recompute them.
//!
//! The store lives in `fixtures/fixtures.json`. Each computed entry names one
//! oracle in [`oracles`]; [`run_oracles`] recomputes every such entry and
//! compares it with the stored JSON value exactly. The oracles use their own
//! naive arithmetic (schoolbook products, trial-division divisor sums,
//! brute-force hulls, Gaussian elimination modulo primes) and never call the
//! q-series, linear algebra or Newton polygon code of this crate.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

const STORE: &str = include_str!("../fixtures/fixtures.json");
pub const STORE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Quoted from the literature.
    Published,
    /// Immediate from definitions.
    Trivial,
    /// Recomputed by an oracle.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureStore {
    pub version: u32,
    pub fixtures: Vec<Fixture>,
}

impl FixtureStore {
    pub fn get(&self, id: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.id == id)
    }

    pub fn value(&self, id: &str) -> Result<&Value> {
        self.get(id)
            .map(|f| &f.value)
            .ok_or_else(|| Error::FixtureMismatch(format!("{id}: not in the store")))
    }
}

pub fn load() -> Result<FixtureStore> {
    let store: FixtureStore = serde_json::from_str(STORE)?;
    if store.version != STORE_VERSION {
        return Err(Error::FixtureMismatch(format!(
            "store version {} (expected {STORE_VERSION})",
            store.version
        )));
    }
    Ok(store)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub id: String,
    pub oracle: String,
    pub expected: Value,
    pub computed: Value,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub results: Vec<OracleResult>,
}

impl OracleReport {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }
}

/// Recomputes every oracle-backed fixture and checks published values
/// against their recomputed counterparts.
pub fn run_oracles() -> Result<OracleReport> {
    let store = load()?;
    let mut results = Vec::new();
    for f in &store.fixtures {
        let Some(oracle) = &f.oracle else { continue };
        let computed = oracles::evaluate(&f.id)?;
        results.push(OracleResult {
            id: f.id.clone(),
            oracle: oracle.clone(),
            ok: computed == f.value,
            expected: f.value.clone(),
            computed,
        });
    }
    for f in store.fixtures.iter().filter(|f| f.source == Source::Published) {
        let computed = oracles::published_check(&f.id, &f.value, &store)?;
        results.push(OracleResult {
            id: f.id.clone(),
            oracle: "published_consistency".into(),
            ok: computed == f.value,
            expected: f.value.clone(),
            computed,
        });
    }
    let report = OracleReport { results };
    if let Some(bad) = report.results.iter().find(|r| !r.ok) {
        return Err(Error::FixtureMismatch(format!(
            "{} ({}): expected {}, computed {}",
            bad.id, bad.oracle, bad.expected, bad.computed
        )));
    }
    Ok(report)
}

/// Naive reference computations.
pub mod oracles {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, ToPrimitive, Zero};
    use serde_json::{json, Value};

    use crate::error::{Error, Result};

    type R = BigRational;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn r(n: i64) -> R {
        R::from_integer(z(n))
    }

    fn rat_json(x: &R) -> Value {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }

    // ---------- series, schoolbook ----------

    fn mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn power(a: &[BigInt], e: u32, n: usize) -> Vec<BigInt> {
        let mut out = one(n);
        for _ in 0..e {
            out = mul(&out, a, n);
        }
        out
    }

    fn one(n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        v[0] = BigInt::one();
        v
    }

    /// `prod_{m >= 1} (1 + sign q^(step m))^e` to `n` terms, one factor at a time.
    fn product(step: usize, sign: i64, e: u32, n: usize) -> Vec<BigInt> {
        let mut out = one(n);
        let mut m = step;
        while m < n {
            for _ in 0..e {
                for t in (m..n).rev() {
                    let d = &out[t - m] * sign;
                    out[t] += d;
                }
            }
            m += step;
        }
        out
    }

    fn shift(a: &[BigInt], s: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); s];
        v.extend_from_slice(&a[..a.len() - s]);
        v
    }

    fn delta(n: usize) -> Vec<BigInt> {
        shift(&product(1, -1, 24, n), 1)
    }

    fn hauptmodul(n: usize) -> Vec<BigInt> {
        shift(&product(1, 1, 24, n), 1)
    }

    fn sigma(k: u32, m: usize) -> BigInt {
        (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
    }

    fn eisenstein(k: u32, c: i64, n: usize) -> Vec<BigInt> {
        (0..n)
            .map(|m| if m == 0 { BigInt::one() } else { sigma(k - 1, m) * c })
            .collect()
    }

    /// `2 E2(q^2) - E2(q)` with `E2 = 1 - 24 sum sigma(n) q^n`.
    fn a_level2(n: usize) -> Vec<BigInt> {
        (0..n)
            .map(|m| {
                if m == 0 {
                    return BigInt::one();
                }
                let mut v = sigma(1, m) * 24;
                if m % 2 == 0 {
                    v -= sigma(1, m / 2) * 48;
                }
                v
            })
            .collect()
    }

    /// `theta^2 = sum r_2(n) q^n` by counting representations.
    fn theta_sq(n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        let b = (n as f64).sqrt() as i64 + 1;
        for x in -b..=b {
            for y in -b..=b {
                let s = (x * x + y * y) as usize;
                if s < n {
                    v[s] += 1;
                }
            }
        }
        v
    }

    fn f_odd(n: usize) -> Vec<BigInt> {
        (0..n)
            .map(|m| if m % 2 == 1 { sigma(1, m) } else { BigInt::zero() })
            .collect()
    }

    fn u2(a: &[BigInt]) -> Vec<BigInt> {
        a.iter().step_by(2).cloned().collect()
    }

    /// `T_2` in weight `k` with trivial character.
    fn t2(a: &[BigInt], k: u32) -> Vec<BigInt> {
        let n = a.len() / 2;
        (0..n)
            .map(|m| {
                let mut v = a[2 * m].clone();
                if m % 2 == 0 {
                    v += &a[m / 2] * BigInt::from(2).pow(k - 1);
                }
                v
            })
            .collect()
    }

    // ---------- linear algebra, naive ----------

    /// Row rank over Q by plain elimination.
    fn rank(rows: &[Vec<BigInt>]) -> usize {
        let mut m: Vec<Vec<R>> = rows
            .iter()
            .map(|r| r.iter().map(|x| R::from_integer(x.clone())).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rk = 0;
        for c in 0..cols {
            let Some(p) = (rk..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rk, p);
            for i in 0..m.len() {
                if i != rk && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rk][c];
                    for j in 0..cols {
                        let d = &f * &m[rk][j];
                        m[i][j] -= d;
                    }
                }
            }
            rk += 1;
        }
        rk
    }

    /// Solves `sum_i x_i basis_i = target` on the given coefficient indices
    /// (assumed to give an invertible square system), then checks every
    /// available coefficient.
    fn solve_on(basis: &[Vec<R>], target: &[R], cols: &[usize]) -> Option<Vec<R>> {
        let d = basis.len();
        let mut a: Vec<Vec<R>> = cols
            .iter()
            .map(|&c| {
                let mut row: Vec<R> = basis.iter().map(|b| b[c].clone()).collect();
                row.push(target[c].clone());
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v /= &piv;
            }
            for i in 0..d {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=d {
                        let t = &f * &a[c][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        let x: Vec<R> = a.iter().map(|row| row[d].clone()).collect();
        let n = target.len();
        for t in 0..n {
            let s: R = (0..d).map(|i| &x[i] * &basis[i][t]).sum();
            if s != target[t] {
                return None;
            }
        }
        Some(x)
    }

    fn to_r(v: &[BigInt]) -> Vec<R> {
        v.iter().map(|x| R::from_integer(x.clone())).collect()
    }

    /// Matrix of an operator on `basis` (given as q-expansions) by solving
    /// each image on the listed coefficients.
    fn operator_matrix(basis: &[Vec<BigInt>], images: &[Vec<BigInt>], cols: &[usize]) -> Option<Vec<Vec<R>>> {
        let len = images.iter().map(Vec::len).min()?;
        let b: Vec<Vec<R>> = basis.iter().map(|v| to_r(&v[..len])).collect();
        let d = basis.len();
        let mut m = vec![vec![R::zero(); d]; d];
        for (j, img) in images.iter().enumerate() {
            let x = solve_on(&b, &to_r(&img[..len]), cols)?;
            for i in 0..d {
                m[i][j] = x[i].clone();
            }
        }
        Some(m)
    }

    fn det(mut a: Vec<Vec<R>>) -> R {
        let n = a.len();
        let mut d = R::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return R::zero();
            };
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d *= &a[c][c];
            for i in c + 1..n {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        d
    }

    /// `det(x I - M)` at `x = 0..=n`, then Lagrange interpolation.
    fn charpoly_by_interpolation(m: &[Vec<R>]) -> Vec<R> {
        let n = m.len();
        let xs: Vec<R> = (0..=n as i64).map(r).collect();
        let ys: Vec<R> = xs
            .iter()
            .map(|x| {
                let a = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { x - &m[i][j] } else { -m[i][j].clone() })
                            .collect()
                    })
                    .collect();
                det(a)
            })
            .collect();
        let mut coeffs = vec![R::zero(); n + 1];
        for (i, xi) in xs.iter().enumerate() {
            let mut basis = vec![R::one()];
            let mut denom = R::one();
            for (j, xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![R::zero(); basis.len() + 1];
                for (t, c) in basis.iter().enumerate() {
                    next[t + 1] += c;
                    next[t] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let s = &ys[i] / denom;
            for (t, c) in basis.iter().enumerate() {
                coeffs[t] += c * &s;
            }
        }
        coeffs
    }

    // ---------- valuations and hulls ----------

    /// Factors of 2 removed one at a time.
    pub fn halving_valuation(mut n: BigInt) -> u64 {
        assert!(!n.is_zero());
        let mut v = 0;
        while n.is_even() {
            n /= 2;
            v += 1;
        }
        v
    }

    fn v2(x: &R) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(halving_valuation(x.numer().clone()) as i64 - halving_valuation(x.denom().clone()) as i64)
    }

    /// Root valuations from the lower hull found by testing every pair of points.
    pub fn brute_hull_slopes(coeffs: &[R]) -> Vec<R> {
        let pts: Vec<(i64, i64)> = coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| v2(c).map(|v| (i as i64, v)))
            .collect();
        let mut slopes = Vec::new();
        for (a, &(x1, y1)) in pts.iter().enumerate() {
            for &(x2, y2) in &pts[a + 1..] {
                let below = pts.iter().any(|&(x, y)| {
                    // strictly below the line through the pair
                    (y - y1) * (x2 - x1) < (y2 - y1) * (x - x1)
                });
                // an edge: nothing below, and no hull point strictly between
                let inner = pts.iter().any(|&(x, y)| {
                    x > x1 && x < x2 && (y - y1) * (x2 - x1) == (y2 - y1) * (x - x1)
                });
                if !below && !inner {
                    let s = R::new(z(y1 - y2), z(x2 - x1));
                    for _ in x1..x2 {
                        slopes.push(s.clone());
                    }
                }
            }
        }
        slopes.sort();
        slopes
    }

    // ---------- quadratic field ----------

    /// `x + y sqrt(D)` in `Q[s]/(s^2 - D)`.
    #[derive(Clone, PartialEq)]
    struct Quad {
        x: R,
        y: R,
    }

    fn quad_mul(a: &Quad, b: &Quad, d: &R) -> Quad {
        Quad {
            x: &a.x * &b.x + d * &a.y * &b.y,
            y: &a.x * &b.y + &a.y * &b.x,
        }
    }

    /// Least `d <= 12` with `(alpha/beta)^d = 1`, `Some(0)` for "none", `None`
    /// for a repeated root. `alpha, beta` are the roots of `X^2 - a X + p^(k-1)`.
    pub fn ratio_order_brute(a: &R, k: u32, p: u64) -> Option<u32> {
        let pk = if k == 0 {
            R::new(BigInt::one(), BigInt::from(p))
        } else {
            R::from_integer(BigInt::from(p).pow(k - 1))
        };
        let disc = a * a - r(4) * &pk;
        if disc.is_zero() {
            return None;
        }
        // alpha/beta = alpha^2 / (alpha beta) = ((a^2 - 2P) + a s) / (2P)
        let two_p = r(2) * &pk;
        let ratio = Quad {
            x: (a * a - r(2) * &pk) / &two_p,
            y: a / &two_p,
        };
        let unit = Quad { x: R::one(), y: R::zero() };
        let mut acc = ratio.clone();
        for d in 1..=12 {
            if acc == unit {
                return Some(d);
            }
            acc = quad_mul(&acc, &ratio, &disc);
        }
        Some(0)
    }

    fn order_json(o: Option<u32>) -> Value {
        match o {
            Some(0) => json!("infinite"),
            Some(d) => json!(d),
            None => json!("repeated_root"),
        }
    }

    // ---------- weight space and annuli ----------

    fn v_w(k: u32, m: u32) -> R {
        if m >= 1 {
            R::new(BigInt::one(), BigInt::from(2).pow(m - 1))
        } else {
            r(halving_valuation(BigInt::from(5).pow(k - 2) - 1) as i64)
        }
    }

    fn index(k: u32, m: u32, s: &R) -> Value {
        let i = s / v_w(k, m);
        assert!(i.is_integer());
        json!(i.to_integer().to_i64().unwrap())
    }

    // ---------- hauptmodul ----------

    /// `U_2(f^j)` as polynomials in `f` for `j < n`, by the power-sum recurrence
    /// `P_j = A P_(j-1) - B P_(j-2)` with `U_2(f^j) = P_j / 2`.
    pub fn hauptmodul_u2_polys(n: usize) -> Vec<Vec<BigInt>> {
        let prec = 24;
        let f = hauptmodul(prec);
        let fp: Vec<Vec<BigInt>> = (0..=4).map(|e| power(&f, e, prec)).collect();
        let expand = |g: &[BigInt], deg: usize| -> Vec<BigInt> {
            let basis: Vec<Vec<R>> = fp[..=deg].iter().map(|b| to_r(&b[..prec / 2])).collect();
            let cols: Vec<usize> = (0..=deg).collect();
            solve_on(&basis, &to_r(&g[..prec / 2]), &cols)
                .expect("U_2(f^j) is a polynomial in f")
                .into_iter()
                .map(|c| c.to_integer())
                .collect()
        };
        let u1 = expand(&u2(&fp[1]), 2);
        let u2f2 = expand(&u2(&fp[2]), 4);
        let a: Vec<BigInt> = u1.iter().map(|c| c * 2).collect();
        let pmul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    out[i + j] += p * q;
                }
            }
            out
        };
        // P_2 = A^2 - 2B, so B = (A^2 - 2 U_2(f^2)) / 2
        let a2 = pmul(&a, &a);
        let b: Vec<BigInt> = (0..a2.len())
            .map(|i| {
                let t: BigInt = &a2[i] - u2f2.get(i).cloned().unwrap_or_default() * 2;
                assert!(t.is_even());
                t / 2
            })
            .collect();
        let mut p: Vec<Vec<BigInt>> = vec![vec![z(2)], a.clone()];
        while p.len() < n.max(2) {
            let j = p.len();
            let x = pmul(&a, &p[j - 1]);
            let y = pmul(&b, &p[j - 2]);
            let len = x.len().max(y.len());
            let mut nxt: Vec<BigInt> = (0..len)
                .map(|i| x.get(i).cloned().unwrap_or_default() - y.get(i).cloned().unwrap_or_default())
                .collect();
            while nxt.last().is_some_and(Zero::is_zero) {
                nxt.pop();
            }
            p.push(nxt);
        }
        p.truncate(n);
        p.into_iter()
            .map(|pj| {
                pj.into_iter()
                    .map(|c| {
                        assert!(c.is_even());
                        c / 2
                    })
                    .collect()
            })
            .collect()
    }

    /// The `n x n` truncation with `M[i][j]` the coefficient of `f^i` in `U_2(f^j)`.
    pub fn hauptmodul_u2_matrix(n: usize) -> Vec<Vec<BigInt>> {
        let polys = hauptmodul_u2_polys(n);
        (0..n)
            .map(|i| (0..n).map(|j| polys[j].get(i).cloned().unwrap_or_default()).collect())
            .collect()
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, p);
            }
            b = mulmod(b, b, p);
            e >>= 1;
        }
        acc
    }

    fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
        let n = a.len();
        let mut d = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if piv != c {
                a.swap(piv, c);
                d = (p - d) % p;
            }
            d = mulmod(d, a[c][c], p);
            let inv = powmod(a[c][c], p - 2, p);
            for i in c + 1..n {
                let f = mulmod(a[i][c], inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[i][j] = (a[i][j] + p - mulmod(f, a[c][j], p)) % p;
                }
            }
        }
        d
    }

    /// Trial division by small odd numbers, then a strong probable-prime test
    /// to the first twelve prime bases (exact for 64-bit inputs).
    fn is_prime_61(n: u64) -> bool {
        if n.is_multiple_of(2) {
            return false;
        }
        let mut d = 3u64;
        while d < 2000 {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        let s = (n - 1).trailing_zeros();
        let t = (n - 1) >> s;
        [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| {
            let mut x = powmod(a, t, n);
            if x == 1 || x == n - 1 {
                return true;
            }
            for _ in 1..s {
                x = mulmod(x, x, n);
                if x == n - 1 {
                    return true;
                }
            }
            false
        })
    }

    /// Exact integer characteristic polynomial by `det(xI - M) mod l` at `n + 1`
    /// points, interpolation modulo each prime, and CRT past a Hadamard bound.
    pub fn int_charpoly_interpolated(m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let n = m.len();
        // the coefficient of x^(n-k) is a signed sum of k x k principal minors,
        // so it is bounded by prod_i (1 + |row_i|_1)
        let bound_bits: u64 = m
            .iter()
            .map(|row| (row.iter().map(|e| e.abs()).sum::<BigInt>() + 1u32).bits())
            .sum::<u64>()
            + 2;
        let mut modulus = BigInt::one();
        let mut acc = vec![BigInt::zero(); n + 1];
        let mut p: u64 = 1 << 61;
        while modulus.bits() <= bound_bits {
            p -= 1;
            while !is_prime_61(p) {
                p -= 1;
            }
            let pb = BigInt::from(p);
            let red: Vec<Vec<u64>> = m
                .iter()
                .map(|row| row.iter().map(|e| e.mod_floor(&pb).to_u64().unwrap()).collect())
                .collect();
            let ys: Vec<u64> = (0..=n as u64)
                .map(|x| {
                    let a = (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    let v = (p - red[i][j]) % p;
                                    if i == j { (v + x) % p } else { v }
                                })
                                .collect()
                        })
                        .collect();
                    det_mod(a, p)
                })
                .collect();
            // Lagrange interpolation mod p
            let mut coeffs = vec![0u64; n + 1];
            for i in 0..=n {
                let mut basis = vec![1u64];
                let mut denom = 1u64;
                for j in 0..=n {
                    if i == j {
                        continue;
                    }
                    let xj = j as u64;
                    let mut next = vec![0u64; basis.len() + 1];
                    for (t, &c) in basis.iter().enumerate() {
                        next[t + 1] = (next[t + 1] + c) % p;
                        next[t] = (next[t] + p - mulmod(c, xj, p)) % p;
                    }
                    basis = next;
                    let diff = (i as u64 + p - xj) % p;
                    denom = mulmod(denom, diff, p);
                }
                let s = mulmod(ys[i], powmod(denom, p - 2, p), p);
                for (t, &c) in basis.iter().enumerate() {
                    coeffs[t] = (coeffs[t] + mulmod(c, s, p)) % p;
                }
            }
            let inv = powmod(modulus.mod_floor(&pb).to_u64().unwrap(), p - 2, p);
            for (a, &c) in acc.iter_mut().zip(&coeffs) {
                let cur = a.mod_floor(&pb).to_u64().unwrap();
                let t = mulmod((c + p - cur) % p, inv, p);
                *a += &modulus * t;
            }
            modulus *= pb;
        }
        let half = &modulus / 2;
        acc.into_iter().map(|a| if a > half { a - &modulus } else { a }).collect()
    }

    /// The first `count` slopes of the size-`n` weight-0 truncation.
    pub fn oc_leading_slopes(n: usize, count: usize) -> Vec<R> {
        let m = hauptmodul_u2_matrix(n);
        let cp: Vec<R> = int_charpoly_interpolated(&m).into_iter().map(R::from_integer).collect();
        let mut s = brute_hull_slopes(&cp);
        s.truncate(count);
        s
    }

    // ---------- dispatch ----------

    fn int_list(v: &[BigInt]) -> Value {
        json!(v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>())
    }

    fn rat_list(v: &[R]) -> Value {
        Value::Array(v.iter().map(rat_json).collect())
    }

    /// Roots of a monic quadratic `X^2 + b X + c` when rational, ascending.
    fn rational_quadratic_roots(b: &R, c: &R) -> Option<Vec<R>> {
        let disc = b * b - r(4) * c;
        if disc.is_negative() {
            return None;
        }
        let sqrt = |x: &BigInt| -> Option<BigInt> {
            let s = x.sqrt();
            (&s * &s == *x).then_some(s)
        };
        let sn = sqrt(disc.numer())?;
        let sd = sqrt(disc.denom())?;
        let s = R::new(sn, sd);
        let mut v = vec![(-b - &s) / r(2), (-b + &s) / r(2)];
        v.sort();
        Some(v)
    }

    /// The eta quotient `eta(z)^4 eta(2z)^2 eta(4z)^4`.
    fn f0_eta(n: usize) -> Vec<BigInt> {
        let a = product(1, -1, 4, n);
        let b = product(2, -1, 2, n);
        let c = product(4, -1, 4, n);
        shift(&mul(&mul(&a, &b, n), &c, n), 1)
    }

    pub fn evaluate(id: &str) -> Result<Value> {
        let v = match id {
            "tau_2" => json!(delta(3)[2].to_i64().unwrap()),
            "delta_prefix" => int_list(&delta(4)),
            "hauptmodul_prefix" => {
                // Delta(q^2) / Delta(q): long division by a series with leading q
                let n = 8;
                let d = delta(2 * n + 1);
                let d2: Vec<BigInt> = (0..2 * n).map(|t| if t % 2 == 0 { d[t / 2].clone() } else { BigInt::zero() }).collect();
                let mut quo = vec![BigInt::zero(); n];
                let mut rem = d2;
                for t in 0..n {
                    let c = rem[t + 1].clone();
                    for (s, ds) in d.iter().enumerate().skip(1) {
                        if t + s < rem.len() {
                            rem[t + s] -= &c * ds;
                        }
                    }
                    quo[t] = c;
                }
                int_list(&quo[..3])
            }
            "val2_5pow10_minus_1" => json!(halving_valuation(BigInt::from(5).pow(10u32) - 1)),
            "slopes_x2_24x_2048" => rat_list(&brute_hull_slopes(&[r(2048), r(24), r(1)])),
            "a2_s16" => {
                let g = mul(&delta(6), &eisenstein(4, 240, 6), 6);
                json!(g[2].to_i64().unwrap())
            }
            "slopes_x2_216x_2pow15" => rat_list(&brute_hull_slopes(&[r(1 << 15), r(-216), r(1)])),
            "t2_e4_eigenvalue" => {
                let e4 = eisenstein(4, 240, 40);
                let img = t2(&e4, 4);
                let lam = &img[0] / &e4[0];
                if (0..20).any(|t| img[t] != &e4[t] * &lam) {
                    return Err(Error::FixtureMismatch("E4 is not a T2 eigenform".into()));
                }
                json!(lam.to_i64().unwrap())
            }
            "t2_delta_eigenvalue" => {
                let d = delta(64);
                let tau2 = d[2].clone();
                for n in 1..30 {
                    let mut lhs = d[2 * n].clone();
                    if n % 2 == 0 {
                        lhs += &d[n / 2] * BigInt::from(2048);
                    }
                    if lhs != &tau2 * &d[n] {
                        return Err(Error::FixtureMismatch(format!("tau recursion fails at n = {n}")));
                    }
                }
                json!(tau2.to_i64().unwrap())
            }
            "dim_m5_gamma1_4" => {
                let n = 30;
                let (t, f) = (theta_sq(n), f_odd(n));
                let rows: Vec<Vec<BigInt>> = [(5, 0), (3, 1), (1, 2)]
                    .iter()
                    .map(|&(a, b)| mul(&power(&t, a, n), &power(&f, b, n), n))
                    .collect();
                json!(rank(&rows))
            }
            "dim_m8_gamma0_2" => {
                let n = 30;
                let (a, e4) = (a_level2(n), eisenstein(4, 240, n));
                let rows: Vec<Vec<BigInt>> = [(4, 0), (2, 1), (0, 2)]
                    .iter()
                    .map(|&(i, j)| mul(&power(&a, i, n), &power(&e4, j, n), n))
                    .collect();
                json!(rank(&rows))
            }
            "s24_t2_charpoly" => {
                let n = 40;
                let d = delta(n);
                let e4 = eisenstein(4, 240, n);
                let basis = vec![mul(&d, &d, n), mul(&d, &power(&e4, 3, n), n)];
                let images: Vec<Vec<BigInt>> = basis.iter().map(|g| t2(g, 24)).collect();
                let m = operator_matrix(&basis, &images, &[1, 2])
                    .ok_or_else(|| Error::FixtureMismatch("S24 is not T2-stable".into()))?;
                let tr = &m[0][0] + &m[1][1];
                let dt = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
                rat_list(&[dt, -tr, R::one()])
            }
            "f0_prefix" => {
                let g = f0_eta(40);
                let img = u2(&g);
                if (0..20).any(|t| img[t] != &g[t] * -4) {
                    return Err(Error::FixtureMismatch("eta quotient is not a U2 eigenform".into()));
                }
                int_list(&g[..9])
            }
            "m5_gamma1_4_u2_eigenvalues" => {
                let n = 40;
                let (t, f) = (theta_sq(n), f_odd(n));
                let basis = vec![mul(&power(&t, 3, n), &f, n), mul(&t, &power(&f, 2, n), n)];
                let images: Vec<Vec<BigInt>> = basis.iter().map(|g| u2(g)).collect();
                let m = operator_matrix(&basis, &images, &[1, 2])
                    .ok_or_else(|| Error::FixtureMismatch("a0 = 0 slice is not U2-stable".into()))?;
                let tr = &m[0][0] + &m[1][1];
                let dt = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
                let roots = rational_quadratic_roots(&-tr, &dt)
                    .ok_or_else(|| Error::FixtureMismatch("irrational U2 eigenvalues".into()))?;
                rat_list(&roots)
            }
            "ratio_order_table" => {
                // t = a^2 / p^(k-1) in {0, 1, 2, 3}: (a, k, p) = (0,3,2), (2,3,2), (2,2,2), (3,2,3)
                let cases = [(0, 0, 3, 2), (1, 2, 3, 2), (2, 2, 2, 2), (3, 3, 2, 3)];
                json!(cases
                    .iter()
                    .map(|&(t, a, k, p)| json!([t, order_json(ratio_order_brute(&r(a), k, p))]))
                    .collect::<Vec<_>>())
            }
            "ratio_order_minus24_12_2" => order_json(ratio_order_brute(&r(-24), 12, 2)),
            "ratio_order_minus4_5_5" => order_json(ratio_order_brute(&r(-4), 5, 5)),
            "wval_12_0" => rat_json(&v_w(12, 0)),
            "index_sum_11_0_2" => {
                let s = r(2);
                let tw = r(10) - &s;
                let total = r(10) / v_w(11, 0);
                json!([index(11, 0, &s), index(11, 0, &tw), total.to_integer().to_i64().unwrap()])
            }
            "first_step_1_2" | "first_step_5_3" => {
                let (i, m) = if id == "first_step_1_2" { (1i64, 2u32) } else { (5, 3) };
                let k = 2 * i + (1i64 << (m + 1)) - 1;
                let s1 = r(2 * i);
                let s2 = r(k - 1) - &s1;
                json!([k, rat_json(&s1), index(k as u32, 0, &s1), rat_json(&s2), index(k as u32, 0, &s2)])
            }
            "induction_step_3" => {
                let m = 3u32;
                let s = R::one() - R::new(BigInt::one(), BigInt::from(1u64 << m));
                let tw = R::one() - &s;
                json!([rat_json(&s), index(2, m + 1, &s), rat_json(&tw), index(2, m + 1, &tw)])
            }
            "u2_m12_gamma0_2_slopes" => {
                let n = 60;
                let (a, e4) = (a_level2(n), eisenstein(4, 240, n));
                let basis: Vec<Vec<BigInt>> = [(6, 0), (4, 1), (2, 2), (0, 3)]
                    .iter()
                    .map(|&(i, j)| mul(&power(&a, i, n), &power(&e4, j, n), n))
                    .collect();
                let images: Vec<Vec<BigInt>> = basis.iter().map(|g| u2(g)).collect();
                let m = operator_matrix(&basis, &images, &[0, 1, 2, 3])
                    .ok_or_else(|| Error::FixtureMismatch("M12(Gamma0(2)) is not U2-stable".into()))?;
                rat_list(&brute_hull_slopes(&charpoly_by_interpolation(&m)))
            }
            "oc_u2_f" => {
                let n = 24;
                let f = hauptmodul(n);
                let basis: Vec<Vec<R>> = (0..=2).map(|e| to_r(&power(&f, e, n)[..n / 2])).collect();
                let x = solve_on(&basis, &to_r(&u2(&f)), &[0, 1, 2])
                    .ok_or_else(|| Error::FixtureMismatch("U2(f) is not quadratic in f".into()))?;
                int_list(&x.iter().map(|c| c.to_integer()).collect::<Vec<_>>())
            }
            "oc_first10_slopes" => rat_list(&oc_leading_slopes(40, 10)),
            _ => return Err(Error::FixtureMismatch(format!("{id}: no oracle"))),
        };
        Ok(v)
    }

    /// Published values are confirmed against the matching recomputed fixture.
    pub fn published_check(id: &str, value: &Value, store: &super::FixtureStore) -> Result<Value> {
        match id {
            "f0_displayed" => {
                let prefix = store.value("f0_prefix")?;
                let idx = value["indices"]
                    .as_array()
                    .ok_or_else(|| Error::FixtureMismatch("f0_displayed: indices".into()))?;
                let coeffs: Vec<Value> = idx
                    .iter()
                    .map(|i| prefix[i.as_u64().unwrap_or(0) as usize].clone())
                    .collect();
                Ok(json!({ "indices": idx, "coefficients": coeffs }))
            }
            _ => Err(Error::FixtureMismatch(format!("{id}: no published check"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_loads_and_ids_are_unique() {
        let s = load().unwrap();
        let mut ids: Vec<&str> = s.fixtures.iter().map(|f| f.id.as_str()).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn every_computed_fixture_has_exactly_one_oracle() {
        for f in load().unwrap().fixtures {
            match f.source {
                Source::Computed => assert!(f.oracle.is_some(), "{}", f.id),
                Source::Published => assert!(f.citation.is_some(), "{}", f.id),
                Source::Trivial => {}
            }
        }
    }

    #[test]
    fn oracles_pass() {
        let report = run_oracles().unwrap();
        assert!(report.all_ok());
        assert!(report.results.len() >= 20);
    }

    #[test]
    fn brute_hull_matches_examples() {
        use num_rational::BigRational;
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(oracles::brute_hull_slopes(&[q(2048), q(24), q(1)]), vec![q(3), q(8)]);
        assert_eq!(oracles::brute_hull_slopes(&[q(4), q(0), q(1)]), vec![q(1), q(1)]);
    }

    #[test]
    fn quadratic_oracle_orders() {
        use num_rational::BigRational;
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(oracles::ratio_order_brute(&q(0), 12, 2), Some(2));
        assert_eq!(oracles::ratio_order_brute(&q(4), 3, 2), None);
        assert_eq!(oracles::ratio_order_brute(&q(-24), 12, 2), Some(0));
    }
}
