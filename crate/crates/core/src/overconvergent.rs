//! Truncations of `U_2` on 2-adic overconvergent forms of weight 0.
//!
//! The basis is the powers `f^0, ..., f^(N-1)` of the hauptmodul
//! `f = Delta(q^2)/Delta(q) = q prod (1 + q^n)^24`. Each `U_2(f^j)` is a
//! polynomial of degree at most `2j` in `f`; column `j` of the matrix holds its
//! first `N` coefficients. The solve against `f^i = q^i + O(q^(i+1))` is
//! unitriangular, so the entries are integers.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::padic::{self, newton_slopes, Valuation};
use crate::qseries::{standard_series, QSeries, StandardSeries};
use crate::rational::{self, Q};

pub const BASIS_TAG: &str = "powers of hauptmodul f, degrees 0..N-1";

/// In the basis `g^j` with `g = 2^s f` the entries become `M[i][j] 2^(s(j-i))`.
pub const WITNESS_SCALE: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Valid,
    /// Some entry was not 2-integral.
    Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// q-coefficients of each `U_2(f^j)` that are available.
    pub coefficients: usize,
    /// Columns whose residual was verified zero on coefficients beyond the solve.
    pub checked_columns: usize,
    /// Columns whose solve consumed every available coefficient.
    pub unchecked_columns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedCompactOperator {
    pub size: usize,
    pub prec: usize,
    pub basis: String,
    #[serde(with = "rational::serde_q_mat")]
    pub entries: Mat,
    pub residual: ResidualReport,
    /// Least 2-adic valuation of each column.
    pub column_valuations: Vec<Valuation>,
    /// Least valuation of each column in the basis `(2^WITNESS_SCALE f)^j`;
    /// increasing in `j` (the compactness witness).
    pub witness: Vec<Valuation>,
    pub status: RunStatus,
}

/// Smallest q-precision for which every column of the size-`n` matrix is residual-checked.
pub fn full_check_prec(n: usize) -> usize {
    4 * n + 8
}

/// Matrix of `U_2` on `f^0..f^(N-1)`, from `f^j` known to `prec` q-coefficients.
pub fn u2_matrix_weight0(n: usize, prec: usize) -> Result<TruncatedCompactOperator> {
    if n == 0 || prec < 2 * n + 8 {
        return Err(Error::InsufficientPrecision(format!(
            "u2_matrix_weight0 needs prec >= 2N + 8 = {}, got {prec}",
            2 * n + 8
        )));
    }
    let f = standard_series(StandardSeries::HauptmodulF, prec);
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(n.max(2));
    let mut cur = QSeries::one(prec);
    for _ in 0..n {
        powers.push(cur.coeffs().iter().map(|c| c.to_integer()).collect());
        cur = cur.mul(&f).truncate(prec);
    }
    // U_2(f^j) for j < n needs f^i up to degree min(2j, L - 1)
    let avail = prec / 2;
    while powers.len() < avail.min(2 * n) {
        powers.push(cur.coeffs().iter().map(|c| c.to_integer()).collect());
        cur = cur.mul(&f).truncate(prec);
    }

    let mut entries = vec![vec![Q::zero(); n]; n];
    let mut unchecked = Vec::new();
    for j in 0..n {
        let mut r: Vec<BigInt> = (0..avail).map(|t| powers[j][2 * t].clone()).collect();
        let top = (2 * j).min(avail - 1);
        if top == avail - 1 {
            unchecked.push(j);
        }
        for i in 0..=top {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            debug_assert!(powers[i][i] == BigInt::from(1) && powers[i][..i].iter().all(Zero::is_zero));
            for t in i..avail {
                if !powers[i][t].is_zero() {
                    r[t] -= &c * &powers[i][t];
                }
            }
            if i < n {
                entries[i][j] = Q::from_integer(c);
            }
        }
        if let Some(t) = r.iter().position(|x| !x.is_zero()) {
            return Err(Error::ResidualNonzero {
                column: j,
                coefficient: t,
            });
        }
    }

    let column_valuations: Vec<Valuation> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| padic::val(&entries[i][j], 2))
                .min()
                .unwrap_or(Valuation::Infinite)
        })
        .collect();
    let witness: Vec<Valuation> = (0..n)
        .map(|j| {
            (0..n)
                .filter_map(|i| match padic::val(&entries[i][j], 2) {
                    Valuation::Finite(v) => Some(Valuation::Finite(
                        v + rational::q(WITNESS_SCALE * (j as i64 - i as i64)),
                    )),
                    Valuation::Infinite => None,
                })
                .min()
                .unwrap_or(Valuation::Infinite)
        })
        .collect();
    let integral = entries.iter().flatten().all(|e| e.is_integer());
    Ok(TruncatedCompactOperator {
        size: n,
        prec,
        basis: BASIS_TAG.into(),
        entries,
        residual: ResidualReport {
            coefficients: avail,
            checked_columns: n - unchecked.len(),
            unchecked_columns: unchecked,
        },
        column_valuations,
        witness,
        status: if integral {
            RunStatus::Valid
        } else {
            RunStatus::Diagnostic
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub size: usize,
    /// Sorted; roots equal to zero appear as `inf` at the end.
    pub slopes: Vec<Valuation>,
    /// Size of the larger truncation compared against, if any.
    pub compared_with: Option<usize>,
    /// Length of the common prefix with that truncation.
    pub stable_prefix: Option<usize>,
}

fn slope_list(op: &TruncatedCompactOperator) -> Result<Vec<Valuation>> {
    let cp = integer_charpoly(&op.entries)?;
    let rv = newton_slopes(&cp, 2)?;
    let mut out: Vec<Valuation> = rv.slopes.into_iter().map(Valuation::Finite).collect();
    out.extend(std::iter::repeat_n(Valuation::Infinite, rv.zero_roots));
    Ok(out)
}

fn integer_charpoly(m: &Mat) -> Result<Vec<Q>> {
    if m.iter().flatten().all(|e| e.is_integer()) {
        let z: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|e| e.to_integer()).collect()).collect();
        Ok(linalg::charpoly_integer(&z).into_iter().map(Q::from_integer).collect())
    } else {
        Ok(linalg::charpoly(m))
    }
}

/// Characteristic polynomial of the truncation, low-to-high.
pub fn oc_charpoly(op: &TruncatedCompactOperator) -> Result<Vec<Q>> {
    integer_charpoly(&op.entries)
}

/// Newton slopes of the characteristic polynomial, optionally compared with a larger truncation.
pub fn oc_slopes(op: &TruncatedCompactOperator, larger: Option<&TruncatedCompactOperator>) -> Result<SlopeReport> {
    let slopes = slope_list(op)?;
    let (compared_with, stable_prefix) = match larger {
        Some(big) => {
            let other = slope_list(big)?;
            (Some(big.size), Some(common_prefix(&slopes, &other)))
        }
        None => (None, None),
    };
    Ok(SlopeReport {
        size: op.size,
        slopes,
        compared_with,
        stable_prefix,
    })
}

pub fn common_prefix(a: &[Valuation], b: &[Valuation]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// CSV rows `N,index,slope_num,slope_den` for finite slopes.
pub fn slopes_csv(report: &SlopeReport) -> String {
    let mut s = String::from("N,index,slope_num,slope_den\n");
    for (i, v) in report.slopes.iter().enumerate() {
        if let Valuation::Finite(q) = v {
            s.push_str(&format!("{},{},{},{}\n", report.size, i, q.numer(), q.denom()));
        }
    }
    s
}

/// Whitespace-separated `index slope` lines for plotting.
pub fn slopes_plot_data(report: &SlopeReport) -> String {
    let mut s = format!("# N = {}\n# index slope\n", report.size);
    for (i, v) in report.slopes.iter().enumerate() {
        if let Valuation::Finite(q) = v {
            let x = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                / q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            s.push_str(&format!("{i} {x}\n"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use num_traits::One;

    #[test]
    fn first_columns() {
        let op = u2_matrix_weight0(6, full_check_prec(6)).unwrap();
        assert_eq!(op.entries[0][0], q(1));
        assert!((1..6).all(|i| op.entries[i][0].is_zero()));
        assert_eq!(op.entries[1][1], q(24));
        assert_eq!(op.entries[2][1], q(2048));
        assert!(op.residual.unchecked_columns.is_empty());
        assert_eq!(op.status, RunStatus::Valid);
    }

    #[test]
    fn leading_coefficient_of_u2_f() {
        let f = standard_series(StandardSeries::HauptmodulF, 40);
        assert_eq!(f.u_p(2).unwrap().coeffs()[1], q(24));
    }

    #[test]
    fn short_precision() {
        assert!(matches!(u2_matrix_weight0(10, 27), Err(Error::InsufficientPrecision(_))));
        let op = u2_matrix_weight0(10, 28).unwrap();
        assert!(!op.residual.unchecked_columns.is_empty());
    }

    #[test]
    fn constants_give_slope_zero() {
        let op = u2_matrix_weight0(8, full_check_prec(8)).unwrap();
        let r = oc_slopes(&op, None).unwrap();
        assert_eq!(r.slopes[0], Valuation::Finite(q(0)));
        assert!(r.slopes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn csv_shape() {
        let op = u2_matrix_weight0(4, full_check_prec(4)).unwrap();
        let r = oc_slopes(&op, None).unwrap();
        let csv = slopes_csv(&r);
        assert!(csv.starts_with("N,index,slope_num,slope_den\n4,0,0,1\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn witness_is_increasing() {
        let op = u2_matrix_weight0(24, full_check_prec(24)).unwrap();
        assert!(op.witness.windows(2).all(|w| w[0] < w[1]), "{:?}", op.witness);
        assert_eq!(op.witness[0], Valuation::Finite(q(0)));
        assert!(op.entries[0][0].is_one());
        // raw columns are not: U_2(f^2) has a unit coefficient
        assert_eq!(op.column_valuations[2], Valuation::Finite(q(0)));
    }
}
