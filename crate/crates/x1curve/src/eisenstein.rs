//! Exact q-expansions of the weight-one series s_a and weight-two series t_a.
//!
//! For a nonzero residue a mod p,
//!
//! ```text
//! s_a = (zeta^a + 1) / (2 (zeta^a - 1)) - sum_{d>=1} q^d sum_{k|d} (zeta^{ka} - zeta^{-ka})
//! t_a = 1/12 - sum_{d>=1} q^d sum_{k|d} (d/k) (zeta^{ak} + zeta^{-ak})
//! ```
//!
//! with zeta = e^{2 pi i / p}. These are the coordinates of the embedding;
//! everything else in the crate consumes them.

use num::complex::Complex64;

use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, Level};
use crate::error::Result;
use crate::linalg::rank_field;
use crate::ring::{rat, Ring};
use crate::series::{TruncatedSeries, Var};

/// A q-expansion tagged with its index and weight.
#[derive(Clone, Debug)]
pub struct EisensteinSeries {
    pub level: Level,
    /// Index, reduced to 1..p-1.
    pub a: i64,
    /// 1 for s_a, 2 for t_a.
    pub weight: u8,
    pub series: TruncatedSeries<CyclotomicNumber>,
}

/// Constant term of s_a: (zeta^a + 1) / (2 (zeta^a - 1)).
pub fn s_constant(level: Level, a: i64) -> Result<CyclotomicNumber> {
    let a = level.nonzero(a)?;
    let f = CyclotomicField::new(level);
    let num = f.add(&f.zeta(a), &f.one());
    let den = f.mul_rat(&f.sub(&f.zeta(a), &f.one()), &rat(2, 1));
    num.div(&den)
}

/// The weight-one expansion s_a through q^(n-1).
pub fn eis_s(level: Level, a: i64, n: i64) -> Result<EisensteinSeries> {
    let a = level.nonzero(a)?;
    assert!(n >= 1, "need at least the constant term");
    let f = CyclotomicField::new(level);
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(s_constant(level, a)?);
    for d in 1..n {
        let mut c = f.zero();
        for k in divisors(d) {
            c = f.add(&c, &f.sub(&f.zeta(k * a), &f.zeta(-k * a)));
        }
        coeffs.push(f.neg(&c));
    }
    Ok(EisensteinSeries {
        level,
        a,
        weight: 1,
        series: TruncatedSeries::from_coeffs(Var::Q, 0, coeffs, n),
    })
}

/// The weight-two expansion t_a through q^(n-1).
pub fn eis_t(level: Level, a: i64, n: i64) -> Result<EisensteinSeries> {
    let a = level.nonzero(a)?;
    assert!(n >= 1, "need at least the constant term");
    let f = CyclotomicField::new(level);
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(f.from_rat(&rat(1, 12)));
    for d in 1..n {
        let mut c = f.zero();
        for k in divisors(d) {
            let term = f.add(&f.zeta(a * k), &f.zeta(-a * k));
            c = f.add(&c, &f.mul_rat(&term, &rat(d / k, 1)));
        }
        coeffs.push(f.neg(&c));
    }
    Ok(EisensteinSeries {
        level,
        a,
        weight: 2,
        series: TruncatedSeries::from_coeffs(Var::Q, 0, coeffs, n),
    })
}

fn divisors(d: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= d {
        if d % k == 0 {
            out.push(k);
            if k != d / k {
                out.push(d / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// All s_a for a = 1..p-1 at the given order.
pub fn all_s(level: Level, n: i64) -> Result<Vec<EisensteinSeries>> {
    level.units().map(|a| eis_s(level, a, n)).collect()
}

pub fn all_t(level: Level, n: i64) -> Result<Vec<EisensteinSeries>> {
    level.units().map(|a| eis_t(level, a, n)).collect()
}

/// Checks sum_{a != 0} s_a = 0 through the full computed order.
pub fn sum_s_vanishes(level: Level, n: i64) -> Result<bool> {
    let f = CyclotomicField::new(level);
    let mut acc = TruncatedSeries::zero(Var::Q, n);
    for s in all_s(level, n)? {
        acc = acc.add(&f, &s.series)?;
    }
    Ok(acc.is_zero(&f))
}

/// Rank over Q(zeta_p) of the coefficient matrix of {s_a : 1 <= a <= (p-1)/2},
/// together with the column count at which the rank stabilized.
pub fn span_rank(level: Level, n: i64) -> Result<(usize, i64)> {
    let f = CyclotomicField::new(level);
    let m = level.m();
    let mut rows: Vec<Vec<CyclotomicNumber>> = Vec::with_capacity(m);
    for a in 1..=m as i64 {
        let s = eis_s(level, a, n)?;
        rows.push(
            (0..n)
                .map(|e| s.series.coeff(&f, e).expect("within order"))
                .collect(),
        );
    }
    let full = rank_field(&f, &rows);
    // First truncation at which the rank is already attained.
    let mut stabilized = n;
    for cut in (1..=n).rev() {
        let truncated: Vec<Vec<CyclotomicNumber>> = rows
            .iter()
            .map(|r| r[..cut as usize].to_vec())
            .collect();
        if rank_field(&f, &truncated) == full {
            stabilized = cut;
        } else {
            break;
        }
    }
    Ok((full, stabilized))
}

/// Numeric value of an exact q-expansion at tau (Im tau > 0): Horner in
/// q = e^{2 pi i tau}.
pub fn eval_at_tau(series: &TruncatedSeries<CyclotomicNumber>, tau: Complex64) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let q = (two_pi_i * tau).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    // stored exponents ascend; run Horner from the top
    let pairs: Vec<(i64, Complex64)> = series
        .stored()
        .map(|(e, c)| (e, c.to_complex()))
        .collect();
    for (idx, (e, c)) in pairs.iter().enumerate().rev() {
        acc += c;
        let next_e = if idx == 0 { 0 } else { pairs[idx - 1].0 };
        acc *= q.powi((*e - next_e) as i32);
    }
    acc
}
