//! Dense exact linear algebra over Q: reduced echelon forms with residual
//! checks, characteristic polynomials, kernels and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Mat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Reduced row echelon form of a set of row vectors, remembering how each
/// echelon row is built from the originals.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Mat,
    pub pivots: Vec<usize>,
    /// `rows[i] = sum_j transform[i][j] * original[j]`
    pub transform: Mat,
    pub ncols: usize,
}

impl Echelon {
    pub fn new(original: &[Vec<Q>], ncols: usize) -> Self {
        let n = original.len();
        let mut a: Mat = original
            .iter()
            .map(|r| r.iter().take(ncols).cloned().collect())
            .collect();
        let mut t = identity(n);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == n {
                break;
            }
            let Some(pr) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            t.swap(r, pr);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for x in t[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..ncols {
                    if !a[r][j].is_zero() {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
                for j in 0..n {
                    if !t[r][j].is_zero() {
                        let d = &f * &t[r][j];
                        t[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        t.truncate(r);
        Echelon {
            rows: a,
            pivots,
            transform: t,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Writes `v` (first `ncols` entries) as a combination of the original
    /// rows. On failure returns the first column with a nonzero residual.
    pub fn express(&self, v: &[Q]) -> Result<Vec<Q>, usize> {
        let coef: Vec<Q> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        for col in 0..self.ncols.min(v.len()) {
            let mut s = Q::zero();
            for (i, ci) in coef.iter().enumerate() {
                if !ci.is_zero() && !self.rows[i][col].is_zero() {
                    s += ci * &self.rows[i][col];
                }
            }
            if s != v[col] {
                return Err(col);
            }
        }
        let n = self.transform.first().map_or(0, |r| r.len());
        let mut out = vec![Q::zero(); n];
        for (i, ci) in coef.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.transform[i][j].is_zero() {
                    out[j] += ci * &self.transform[i][j];
                }
            }
        }
        Ok(out)
    }
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel(m: &Mat) -> Vec<Vec<Q>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let e = Echelon::new(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (i, &pc) in e.pivots.iter().enumerate() {
                x[pc] = -e.rows[i][f].clone();
            }
            x
        })
        .collect()
}

/// Characteristic polynomial `det(X I - M)`, low-to-high coefficients, via
/// reduction to upper Hessenberg form.
pub fn charpoly(m: &Mat) -> Vec<Q> {
    let n = m.len();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let r = col + 1;
        let Some(piv) = (r..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if piv != r {
            h.swap(piv, r);
            for row in h.iter_mut() {
                row.swap(piv, r);
            }
        }
        let t = h[r][col].clone();
        for i in (r + 1)..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] / &t;
            for j in 0..n {
                if !h[r][j].is_zero() {
                    let d = &u * &h[r][j];
                    h[i][j] -= d;
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let d = &u * &row[i];
                    row[r] += d;
                }
            }
        }
    }

    let mut polys: Vec<Vec<Q>> = vec![vec![Q::one()]];
    for k in 1..=n {
        // (X - h[k-1][k-1]) p_{k-1}
        let prev = &polys[k - 1];
        let mut pk = vec![Q::zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            pk[i + 1] += c;
            pk[i] -= c * &h[k - 1][k - 1];
        }
        let mut t = Q::one();
        for i in 1..k {
            t *= &h[k - i][k - i - 1];
            if t.is_zero() {
                break;
            }
            let coef = &t * &h[k - i - 1][k - 1];
            if coef.is_zero() {
                continue;
            }
            for (j, c) in polys[k - i - 1].iter().enumerate() {
                pk[j] -= &coef * c;
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// Characteristic polynomial of an integer matrix, computed modulo enough
/// 62-bit primes to cover a Hadamard-type coefficient bound, then lifted by CRT.
pub fn charpoly_integer(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // |c_{n-k}| <= e_k(r_1..r_n) <= prod (1 + r_i) for row (or column) norms r_i
    let norm_bits = |it: &mut dyn Iterator<Item = &BigInt>| -> u64 {
        let s: BigInt = it.map(|e| e * e).sum();
        s.bits() / 2 + 2
    };
    let row_bits: u64 = m.iter().map(|r| norm_bits(&mut r.iter())).sum();
    let col_bits: u64 = (0..n).map(|j| norm_bits(&mut m.iter().map(|r| &r[j]))).sum();
    let bound_bits = row_bits.min(col_bits) + 2;

    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    let mut p = (1u64 << 62) - 1;
    while modulus.bits() <= bound_bits {
        p = prev_prime(p);
        let pb = BigInt::from(p);
        let mm: Vec<Vec<u64>> = m
            .iter()
            .map(|r| r.iter().map(|e| to_u64(&e.mod_floor(&pb))).collect())
            .collect();
        let cp = charpoly_mod(mm, p);
        let minv = pow_mod_wide(to_u64(&modulus.mod_floor(&pb)), p - 2, p);
        for (a, &r) in acc.iter_mut().zip(&cp) {
            let cur = to_u64(&a.mod_floor(&pb));
            let t = mulmod(minv, (r + p - cur) % p, p);
            *a += &modulus * BigInt::from(t);
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    acc.into_iter()
        .map(|a| if a > half { a - &modulus } else { a })
        .collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod_wide(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_wide(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prev_prime(mut p: u64) -> u64 {
    loop {
        p -= 1;
        if is_prime_u64(p) {
            return p;
        }
    }
}

/// Hessenberg characteristic polynomial over `Z/p`, low-to-high.
fn charpoly_mod(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for col in 0..n.saturating_sub(2) {
        let r = col + 1;
        let Some(piv) = (r..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != r {
            h.swap(piv, r);
            for row in h.iter_mut() {
                row.swap(piv, r);
            }
        }
        let tinv = pow_mod_wide(h[r][col], p - 2, p);
        for i in (r + 1)..n {
            if h[i][col] == 0 {
                continue;
            }
            let u = mulmod(h[i][col], tinv, p);
            for j in 0..n {
                let d = mulmod(u, h[r][j], p);
                h[i][j] = (h[i][j] + p - d) % p;
            }
            for row in h.iter_mut() {
                let d = mulmod(u, row[i], p);
                row[r] = (row[r] + d) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        let d = h[k - 1][k - 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = (pk[i + 1] + c) % p;
            pk[i] = (pk[i] + p - mulmod(c, d, p)) % p;
        }
        let mut t = 1u64;
        for i in 1..k {
            t = mulmod(t, h[k - i][k - i - 1], p);
            if t == 0 {
                break;
            }
            let coef = mulmod(t, h[k - i - 1][k - 1], p);
            for (j, &c) in polys[k - i - 1].iter().enumerate() {
                pk[j] = (pk[j] + p - mulmod(coef, c, p)) % p;
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

pub fn det(m: &Mat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn poly_eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &[Q]) -> Vec<Q> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
        .collect()
}

/// Polynomial long division over Q; `b` must be nonzero.
pub fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut quo = vec![Q::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        quo[shift] = c;
        r.pop();
        r = trim(r);
    }
    (quo, r)
}

fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

/// Scales to a primitive integer polynomial.
fn primitive_int(p: &[Q]) -> Vec<BigInt> {
    let l = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn gcd_mod_l(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let norm = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let inv = |x: u64| pow_mod(x, l - 2, l);
    let mut a = norm(a.to_vec());
    let mut b = norm(b.to_vec());
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * lb % l;
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + l - c * bi % l) % l;
            }
            a = norm(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

const SMALL_PRIMES: [u64; 25] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

/// All rational roots of `p` with multiplicities, ascending.
///
/// Simple roots of the squarefree part are found modulo a small prime `l`
/// that keeps it squarefree, lifted l-adically past the size bound
/// `|lc * c_0|`, and confirmed by exact evaluation.
pub fn rational_roots(p: &[Q]) -> Vec<(Q, usize)> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut body = p.clone();
    let mut zero_mult = 0;
    while body.first().is_some_and(|c| c.is_zero()) {
        body.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Q::zero(), zero_mult));
    }
    if body.len() > 1 {
        let g = {
            let d = poly_gcd(&body, &derivative(&body));
            poly_divrem(&body, &d).0
        };
        let gi = primitive_int(&g);
        let lc = gi.last().unwrap().clone();
        let c0 = gi[0].clone();
        let bound = (&lc * &c0).abs() * 2 + 1;
        let dg: Vec<BigInt> = gi
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();

        let ell = SMALL_PRIMES.iter().copied().find(|&l| {
            let lb = BigInt::from(l);
            if lc.mod_floor(&lb).is_zero() {
                return false;
            }
            let gm: Vec<u64> = gi.iter().map(|c| to_u64(&c.mod_floor(&lb))).collect();
            let dm: Vec<u64> = dg.iter().map(|c| to_u64(&c.mod_floor(&lb))).collect();
            gcd_mod_l(&gm, &dm, l).len() == 1
        });
        let candidates: Vec<Q> = match ell {
            Some(l) => lifted_candidates(&gi, &dg, l, &lc, &bound),
            // every small prime divides the discriminant: fall back to divisor
            // enumeration, which is fine for the tiny constants this happens on
            None => divisor_candidates(&lc, &c0),
        };
        for x in candidates {
            if poly_eval(&body, &x).is_zero() {
                let mut m = 0;
                let mut q = body.clone();
                loop {
                    let lin = vec![-x.clone(), Q::one()];
                    let (quo, rem) = poly_divrem(&q, &lin);
                    if !rem.is_empty() {
                        break;
                    }
                    m += 1;
                    q = quo;
                }
                out.push((x, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("residue fits in u64")
}

fn lifted_candidates(g: &[BigInt], dg: &[BigInt], l: u64, lc: &BigInt, bound: &BigInt) -> Vec<Q> {
    let lb = BigInt::from(l);
    let mut out = Vec::new();
    for r0 in 0..l {
        let r0 = BigInt::from(r0);
        if !eval_mod(g, &r0, &lb).is_zero() {
            continue;
        }
        let mut modulus = lb.clone();
        let mut r = r0;
        while &modulus <= bound {
            modulus = &modulus * &modulus;
            let fr = eval_mod(g, &r, &modulus);
            let dfr = eval_mod(dg, &r, &modulus);
            let inv = dfr.extended_gcd(&modulus);
            debug_assert!(inv.gcd.abs().is_one());
            let inv = (inv.x * inv.gcd.signum()).mod_floor(&modulus);
            r = (&r - fr * inv).mod_floor(&modulus);
        }
        let mut y = (lc * &r).mod_floor(&modulus);
        if &y * 2 > modulus {
            y -= &modulus;
        }
        out.push(Q::new(y, lc.clone()));
    }
    out
}

fn divisor_candidates(lc: &BigInt, c0: &BigInt) -> Vec<Q> {
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut v = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                v.push(d.clone());
                v.push(&n / &d);
            }
            d += 1;
        }
        v
    };
    let mut out = Vec::new();
    for a in divs(c0) {
        for b in divs(lc) {
            out.push(Q::new(a.clone(), b.clone()));
            out.push(Q::new(-a.clone(), b.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    /// det(t I - M) at integer t, an independent route to the charpoly.
    fn charpoly_at(mat: &Mat, t: i64) -> Q {
        let n = mat.len();
        let shifted: Mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { q(t) - &mat[i][j] } else { -mat[i][j].clone() })
                    .collect()
            })
            .collect();
        det(&shifted)
    }

    #[test]
    fn small_charpolys() {
        assert_eq!(charpoly(&m(&[&[-24]])), vec![q(24), q(1)]);
        assert_eq!(charpoly(&m(&[&[0, 0], &[0, 0]])), vec![q(0), q(0), q(1)]);
        assert_eq!(charpoly(&vec![]), vec![q(1)]);
        // companion of X^2 - 216 X + 2^15
        let c = m(&[&[0, -32768], &[1, 216]]);
        assert_eq!(charpoly(&c), vec![q(32768), q(-216), q(1)]);
    }

    #[test]
    fn echelon_expresses_and_rejects() {
        let rows = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let e = Echelon::new(&rows, 4);
        assert_eq!(e.rank(), 2);
        // 2*r0 - 3*r1
        let v = vec![q(2), q(1), q(3), q(5)];
        assert_eq!(e.express(&v).unwrap(), vec![q(2), q(-3)]);
        let bad = vec![q(2), q(1), q(3), q(6)];
        assert_eq!(e.express(&bad), Err(3));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn rational_roots_examples() {
        // (X - 3)^2 (X + 1/2) X
        let p = vec![q(0), frac(9, 2), q(6), frac(-11, 2), q(1)];
        assert_eq!(
            rational_roots(&p),
            vec![(frac(-1, 2), 1), (q(0), 1), (q(3), 2)]
        );
        // X^2 - 2 has no rational roots
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_empty());
        // X^2 - 1080 X + 291600 - 144*144169, the level one weight 24 Hecke polynomial
        assert!(rational_roots(&[q(291600 - 144 * 144169), q(-1080), q(1)]).is_empty());
        assert_eq!(rational_roots(&[q(-4), q(12), q(1)]).len(), 0);
        assert_eq!(rational_roots(&[q(-64), q(12), q(1)]), vec![(q(-16), 1), (q(4), 1)]);
    }

    proptest! {
        #[test]
        fn multimodular_charpoly_matches_rational(
            entries in prop::collection::vec(-(1i64 << 40)..(1i64 << 40), 36),
            n in 1usize..=6,
            scale in 0u32..200,
        ) {
            let big = BigInt::one() << scale;
            let one = BigInt::one();
            let zm: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(entries[i * 6 + j]) * if i == 0 { &big } else { &one }).collect())
                .collect();
            let qm: Mat = zm.iter().map(|r| r.iter().map(|e| Q::from_integer(e.clone())).collect()).collect();
            let exact: Vec<BigInt> = charpoly(&qm).into_iter().map(|c| c.to_integer()).collect();
            prop_assert_eq!(charpoly_integer(&zm), exact);
        }

        #[test]
        fn charpoly_agrees_with_determinants(
            entries in prop::collection::vec(-6i64..6, 16),
            n in 1usize..=4,
        ) {
            let mat: Mat = (0..n).map(|i| (0..n).map(|j| q(entries[i * 4 + j])).collect()).collect();
            let cp = charpoly(&mat);
            prop_assert_eq!(cp.len(), n + 1);
            prop_assert_eq!(cp[n].clone(), q(1));
            for t in -3..=3 {
                prop_assert_eq!(poly_eval(&cp, &q(t)), charpoly_at(&mat, t));
            }
        }

        #[test]
        fn finds_planted_roots(
            roots in prop::collection::vec((-40i64..40, 1i64..6), 1..5),
            extra in prop::collection::vec(-5i64..5, 0..3),
        ) {
            // product of planted linear factors times X^2 + c (c > 0 has no real roots)
            let mut p = vec![q(1)];
            let mut mul = |f: Vec<Q>| {
                let mut out = vec![q(0); p.len() + f.len() - 1];
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                p = out;
            };
            for (n, d) in &roots {
                mul(vec![-frac(*n, *d), q(1)]);
            }
            for c in &extra {
                mul(vec![q(c.abs() + 1), q(0), q(1)]);
            }
            let found = rational_roots(&p);
            let mut expect: Vec<(Q, usize)> = Vec::new();
            for (n, d) in &roots {
                let r = frac(*n, *d);
                match expect.iter_mut().find(|(x, _)| *x == r) {
                    Some(e) => e.1 += 1,
                    None => expect.push((r, 1)),
                }
            }
            expect.sort_by(|a, b| a.0.cmp(&b.0));
            prop_assert_eq!(found, expect);
        }
    }
}
