//! Hilbert function of C[r_0..r_{p-1}] / I_{s,t} in low degrees.
//!
//! The ring is Z/pZ-graded by the subscripts: a monomial's weight is
//! sum(index * exponent) mod p. Each relation is weight-homogeneous, so the
//! degree-n component splits into p blocks. Per block the dimension is
//!
//! ```text
//! #monomials(n, w) - rank( degree-(n-2) monomial multiples of the relations )
//! ```
//!
//! certified by exact rank (fraction-free over Q at rational cusps, field
//! elimination over Q(zeta_p) otherwise) or by singular values in numeric
//! mode.

use num::complex::Complex64;
use rayon::prelude::*;

use crate::cyclotomic::Level;
use crate::error::Result;
use crate::linalg::{rank_numeric, RankTolerance};
use crate::ode::{build_r_generators, RRelation};
use crate::poly::Monomial;
use crate::quadrics::ModuliPoint;
use crate::ring::{ComplexField64, Field, Ring};

/// All monomials in r_0..r_{p-1} of total degree `n` and Z/p-weight `w`.
pub fn graded_monomials(level: Level, n: i64, w: i64) -> Vec<Monomial> {
    let p = level.p() as usize;
    let w = level.reduce(w);
    let mut out = Vec::new();
    let mut current = vec![0u16; p];
    fn rec(
        level: Level,
        var: usize,
        degree_left: i64,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
        target_w: i64,
    ) {
        let p = level.p() as usize;
        if var == p - 1 {
            current[var] = degree_left as u16;
            let weight: i64 = current
                .iter()
                .enumerate()
                .map(|(i, &e)| i as i64 * e as i64)
                .sum();
            if level.reduce(weight) == target_w {
                out.push(current.clone());
            }
            current[var] = 0;
            return;
        }
        for e in 0..=degree_left {
            current[var] = e as u16;
            rec(level, var + 1, degree_left - e, current, out, target_w);
        }
        current[var] = 0;
    }
    rec(level, 0, n, &mut current, &mut out, w);
    out
}

fn weight_of(level: Level, m: &Monomial) -> i64 {
    level.reduce(
        m.iter()
            .enumerate()
            .map(|(i, &e)| i as i64 * e as i64)
            .sum(),
    )
}

/// Dimension of the (n, w) graded block at an exact point over a field.
pub fn graded_component_dimension_exact<F: Field>(
    ring: &F,
    point: &ModuliPoint<F::Elem>,
    n: i64,
    w: i64,
) -> usize {
    let relations = build_r_generators(ring, point);
    block_dimension_exact(ring, point.level, &relations, n, w)
}

fn block_dimension_exact<F: Field>(
    ring: &F,
    level: Level,
    relations: &[RRelation<F::Elem>],
    n: i64,
    w: i64,
) -> usize {
    let basis = graded_monomials(level, n, w);
    let rows = materialized_rows(ring, level, relations, n, w, basis.len());
    basis.len() - ring.rank(&rows)
}

fn materialized_rows<R: Ring>(
    ring: &R,
    level: Level,
    relations: &[RRelation<R::Elem>],
    n: i64,
    w: i64,
    dim: usize,
) -> Vec<Vec<R::Elem>> {
    let basis = graded_monomials(level, n, w);
    debug_assert_eq!(basis.len(), dim);
    let index: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    if n < 2 {
        return rows;
    }
    for rel in relations {
        let rel_weight = rel
            .poly
            .terms()
            .next()
            .map(|(m, _)| weight_of(level, m))
            .unwrap_or(0);
        let mult_weight = level.reduce(w - rel_weight);
        for mult in graded_monomials(level, n - 2, mult_weight) {
            let shifted = rel.poly.shift_monomial(&mult);
            let mut row = vec![ring.zero(); dim];
            for (mono, c) in shifted.terms() {
                let col = *index.get(mono).expect("weight-compatible monomial");
                row[col] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Total dimension of the degree-n component at an exact point: the sum of
/// the p weight blocks, computed in parallel.
pub fn quotient_dimension_exact<F: Field>(
    ring: &F,
    point: &ModuliPoint<F::Elem>,
    n: i64,
) -> usize {
    let relations = build_r_generators(ring, point);
    (0..point.level.p())
        .into_par_iter()
        .map(|w| block_dimension_exact(ring, point.level, &relations, n, w))
        .sum()
}

/// Numeric block dimension by singular values.
pub fn graded_component_dimension_numeric(
    point: &ModuliPoint<Complex64>,
    n: i64,
    w: i64,
    tol: &RankTolerance,
) -> Result<usize> {
    let ring = ComplexField64::default();
    let relations = build_r_generators(&ring, point);
    let basis = graded_monomials(point.level, n, w);
    let rows = materialized_rows(&ring, point.level, &relations, n, w, basis.len());
    Ok(basis.len() - rank_numeric(&rows, tol)?)
}

/// Numeric total dimension of the degree-n component.
pub fn quotient_dimension_numeric(
    point: &ModuliPoint<Complex64>,
    n: i64,
    tol: &RankTolerance,
) -> Result<usize> {
    let mut total = 0;
    for w in 0..point.level.p() {
        total += graded_component_dimension_numeric(point, n, w, tol)?;
    }
    Ok(total)
}
