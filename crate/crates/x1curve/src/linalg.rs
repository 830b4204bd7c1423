//! Exact rank, nullspace and solving, plus the numeric rank policy.
//!
//! Rational matrices go through fraction-free (Bareiss) elimination over the
//! integers after clearing row denominators, which keeps every intermediate
//! value a minor of the scaled matrix. Matrices over other exact fields
//! (Q(zeta_p) in practice) use ordinary Gaussian elimination. Numeric rank is
//! decided by singular values with an explicit ambiguity band: values inside
//! the band abort instead of guessing.

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::Field;

/// Relative singular-value thresholds for numeric rank decisions.
#[derive(Clone, Copy, Debug)]
pub struct RankTolerance {
    /// Below `zero * sigma_max` counts as a zero singular value.
    pub zero: f64,
    /// Between `zero` and `ambiguous` (relative) the rank is refused.
    pub ambiguous: f64,
}

impl Default for RankTolerance {
    fn default() -> Self {
        Self {
            zero: 1e-8,
            ambiguous: 1e-6,
        }
    }
}

/// Exact rank of a rational matrix (fraction-free elimination).
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    rank_bareiss(&mut m)
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    row.iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

/// One-step Bareiss elimination; returns the rank. Consumes the matrix.
fn rank_bareiss(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // Pivot: smallest nonzero entry keeps the growth down.
        let mut pivot = None;
        for (i, row) in m.iter().enumerate().skip(rank) {
            if !row[col].is_zero() {
                match pivot {
                    None => pivot = Some(i),
                    Some(j) => {
                        if m[i][col].abs() < m[j][col].abs() {
                            pivot = Some(i);
                        }
                    }
                }
            }
        }
        let Some(piv) = pivot else { continue };
        m.swap(rank, piv);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                // Still rescale so the Bareiss invariant holds for this row.
                for c in (col + 1)..cols {
                    let v = &prow[col] * &row[c];
                    row[c] = &v / &prev;
                }
                continue;
            }
            for c in (col + 1)..cols {
                let v = &prow[col] * &row[c] - &row[col] * &prow[c];
                row[c] = &v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over an arbitrary exact field.
pub fn rank_field<F: Field>(ring: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let rows_n = m.len();
    if rows_n == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows_n {
            break;
        }
        let Some(piv) = (rank..rows_n).find(|&i| !ring.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = ring.inv(&m[rank][col].clone()).expect("nonzero pivot");
        let prow: Vec<F::Elem> = m[rank][col..].iter().map(|x| ring.mul(x, &inv)).collect();
        for i in (rank + 1)..rows_n {
            if ring.is_zero(&m[i][col]) {
                continue;
            }
            let factor = m[i][col].clone();
            for (offset, pv) in prow.iter().enumerate() {
                let c = col + offset;
                let sub = ring.mul(&factor, pv);
                m[i][c] = ring.sub(&m[i][c], &sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel of `rows` (as row vectors of length `cols`).
pub fn nullspace_field<F: Field>(ring: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !ring.is_zero(x)))
        .cloned()
        .collect();
    // Reduced row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !ring.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = ring.inv(&m[rank][col].clone()).expect("nonzero pivot");
        for c in 0..cols {
            m[rank][c] = ring.mul(&m[rank][c], &inv);
        }
        for i in 0..m.len() {
            if i != rank && !ring.is_zero(&m[i][col]) {
                let factor = m[i][col].clone();
                for c in 0..cols {
                    let sub = ring.mul(&factor, &m[rank][c]);
                    m[i][c] = ring.sub(&m[i][c], &sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ring.zero(); cols];
        v[free] = ring.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = ring.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Expresses `target` as a linear combination of `columns`, if possible.
///
/// Returns the coefficients in column order; free coefficients are zero.
pub fn express_in_span<F: Field>(
    ring: &F,
    columns: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let dim = target.len();
    let k = columns.len();
    // Augmented rows [A | b].
    let mut m: Vec<Vec<F::Elem>> = (0..dim)
        .map(|i| {
            let mut row: Vec<F::Elem> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let cols = k + 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..m.len()).find(|&i| !ring.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = ring.inv(&m[rank][col].clone()).expect("nonzero pivot");
        for c in 0..cols {
            m[rank][c] = ring.mul(&m[rank][c], &inv);
        }
        for i in 0..m.len() {
            if i != rank && !ring.is_zero(&m[i][col]) {
                let factor = m[i][col].clone();
                for c in 0..cols {
                    let sub = ring.mul(&factor, &m[rank][c]);
                    m[i][c] = ring.sub(&m[i][c], &sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    // Consistent iff no leftover row reads 0 = nonzero.
    for row in m.iter().skip(rank) {
        if !ring.is_zero(&row[k]) {
            return None;
        }
    }
    let mut coeffs = vec![ring.zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = m[r][k].clone();
    }
    Some(coeffs)
}

/// Numeric rank from singular values under the band policy.
pub fn rank_numeric(rows: &[Vec<Complex64>], tol: &RankTolerance) -> Result<usize> {
    let nr = rows.len();
    if nr == 0 {
        return Ok(0);
    }
    let nc = rows[0].len();
    if nc == 0 {
        return Ok(0);
    }
    let mat = nalgebra::DMatrix::from_fn(nr, nc, |i, j| rows[i][j]);
    let svd = mat.svd(false, false);
    let sigma = &svd.singular_values;
    let smax = sigma.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    let mut rank = 0;
    for &s in sigma.iter() {
        let rel = s / smax;
        if rel >= tol.ambiguous {
            rank += 1;
        } else if rel >= tol.zero {
            return Err(Error::RankAmbiguous(rel));
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CyclotomicField, Level};
    use crate::ring::{rat, RationalField, Ring};

    #[test]
    fn rational_rank() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3), rat(0, 1)],
            vec![rat(1, 1), rat(2, 3), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(5, 7)],
        ];
        assert_eq!(rank_rational(&rows), 2);
        assert_eq!(rank_rational(&rows[..2]), 1);
        assert_eq!(rank_rational(&[]), 0);
    }

    #[test]
    fn bareiss_agrees_with_field_elimination() {
        // Fixed pseudo-random small matrices.
        let mut seed = 12345u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 19) as i64 - 9
        };
        let f = RationalField;
        for _ in 0..20 {
            let rows: Vec<Vec<BigRational>> = (0..5)
                .map(|_| (0..4).map(|_| rat(next(), 1 + next().abs())).collect())
                .collect();
            assert_eq!(rank_rational(&rows), rank_field(&f, &rows));
        }
    }

    #[test]
    fn cyclotomic_rank() {
        let f = CyclotomicField::new(Level::new(5).unwrap());
        // rows: [1, zeta], [zeta^4, 1] -- second is zeta^4 * first, rank 1
        let rows = vec![
            vec![f.one(), f.zeta(1)],
            vec![f.zeta(4), f.one()],
        ];
        assert_eq!(rank_field(&f, &rows), 1);
        let rows2 = vec![vec![f.one(), f.zeta(1)], vec![f.zeta(1), f.one()]];
        assert_eq!(rank_field(&f, &rows2), 2);
    }

    #[test]
    fn nullspace_dimension() {
        let f = RationalField;
        // x + y + z = 0 has a 2-dimensional kernel
        let rows = vec![vec![rat(1, 1), rat(1, 1), rat(1, 1)]];
        let basis = nullspace_field(&f, &rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = f.sum(v.iter().cloned());
            assert!(f.is_zero(&s));
        }
    }

    #[test]
    fn span_membership() {
        let f = RationalField;
        let cols = vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ];
        let target = vec![rat(3, 1), rat(2, 1)];
        let c = express_in_span(&f, &cols, &target).unwrap();
        assert_eq!(c, vec![rat(1, 1), rat(2, 1)]);
        // outside the span of the first column alone
        assert!(express_in_span(&f, &cols[..1], &target).is_none());
    }

    #[test]
    fn numeric_rank_policy() {
        let tol = RankTolerance::default();
        let rows = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1e-12, 0.0)],
        ];
        assert_eq!(rank_numeric(&rows, &tol).unwrap(), 1);
        let rows_amb = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1e-7, 0.0)],
        ];
        assert!(matches!(
            rank_numeric(&rows_amb, &tol),
            Err(Error::RankAmbiguous(_))
        ));
    }
}
