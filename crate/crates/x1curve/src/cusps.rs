//! Cusp points in weighted projective space, their orbit under the
//! symmetries, and tangent-space computations.
//!
//! The principal cusp has the rational coordinates s_a = 1 - 2a/p; its t's
//! follow from the constant-solution analysis (x = s_a^2 - 2 t_a with 3x = 1),
//! so t_a = (s_a^2 - 1/3)/2. The full set of p-1 cusps is the closure of this
//! point under the diamond action and the Fricke involution.

use num::complex::Complex64;
use num::BigRational;

use crate::actions::{diamond_point, fricke_point_cyclo, DiamondElement};
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, Level};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_field, rank_field, rank_numeric, RankTolerance};
use crate::poly::Evaluator;
use crate::quadrics::{all_generators, jacobian, unique_generator_polys, ModuliPoint};
use crate::ring::{rat, rat_int, ComplexField64, Field, RationalField, Ring};

/// How a cusp was reached from the principal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Principal,
    Diamond(i64),
    FrickeDiamond(i64),
}

/// An exact cusp together with its provenance tag.
#[derive(Clone, Debug)]
pub struct CuspPoint {
    pub point: ModuliPoint<CyclotomicNumber>,
    pub provenance: Provenance,
}

/// The principal cusp with lambda = 1, over the rationals:
/// s_a = 1 - 2a/p, t_a = (s_a^2 - 1/3)/2.
///
/// Construction re-verifies that every generator vanishes.
pub fn principal_cusp_rational(level: Level) -> Result<ModuliPoint<BigRational>> {
    let f = RationalField;
    let p = level.p();
    let s: Vec<BigRational> = (1..=level.m() as i64)
        .map(|a| rat(p - 2 * a, p))
        .collect();
    let t: Vec<BigRational> = s
        .iter()
        .map(|sa| (sa * sa - rat(1, 3)) / rat_int(2))
        .collect();
    let point = ModuliPoint::new(level, s, t);
    for g in all_generators(level) {
        let v = crate::quadrics::eval_at_point(&f, &g.poly, &point)?;
        if !f.is_zero(&v) {
            return Err(Error::NotOnVariety(format!(
                "principal cusp fails generator {:?}",
                g.triple
            )));
        }
    }
    Ok(point)
}

/// The principal cusp embedded into Q(zeta_p) coordinates.
pub fn principal_cusp(level: Level) -> Result<CuspPoint> {
    let f = CyclotomicField::new(level);
    let rational = principal_cusp_rational(level)?;
    Ok(CuspPoint {
        point: ModuliPoint::new(
            level,
            rational.s.iter().map(|r| f.from_rat(r)).collect(),
            rational.t.iter().map(|r| f.from_rat(r)).collect(),
        ),
        provenance: Provenance::Principal,
    })
}

/// Weighted-projective equality: Q = (lambda s_P, lambda^2 t_P) for some
/// nonzero lambda. When every s vanishes only lambda^2 enters, so the scalar
/// is read off the t's (both signs of lambda give the same test).
pub fn wp_point_equal<F: Field>(
    ring: &F,
    p: &ModuliPoint<F::Elem>,
    q: &ModuliPoint<F::Elem>,
) -> bool {
    debug_assert_eq!(p.level, q.level);
    match p.s.iter().position(|x| !ring.is_zero(x)) {
        Some(i) => {
            if ring.is_zero(&q.s[i]) {
                return false;
            }
            let lambda = ring.div(&q.s[i], &p.s[i]).expect("nonzero divisor");
            let lambda2 = ring.mul(&lambda, &lambda);
            p.s.iter()
                .zip(&q.s)
                .all(|(a, b)| ring.eq(b, &ring.mul(a, &lambda)))
                && p.t
                    .iter()
                    .zip(&q.t)
                    .all(|(a, b)| ring.eq(b, &ring.mul(a, &lambda2)))
        }
        None => {
            if q.s.iter().any(|x| !ring.is_zero(x)) {
                return false;
            }
            let Some(j) = p.t.iter().position(|x| !ring.is_zero(x)) else {
                return q.t.iter().all(|x| ring.is_zero(x));
            };
            if ring.is_zero(&q.t[j]) {
                return false;
            }
            let lambda2 = ring.div(&q.t[j], &p.t[j]).expect("nonzero divisor");
            p.t.iter()
                .zip(&q.t)
                .all(|(a, b)| ring.eq(b, &ring.mul(a, &lambda2)))
        }
    }
}

/// Closure of the principal cusp under the diamond action and the Fricke
/// involution, deduplicated weighted-projectively. Exactly p-1 points, each
/// verified against every generator; anything else is an error.
pub fn cusp_orbit(level: Level) -> Result<Vec<CuspPoint>> {
    let f = CyclotomicField::new(level);
    let base = principal_cusp(level)?;
    let mut orbit: Vec<CuspPoint> = vec![base.clone()];

    for k in level.units() {
        let elt = DiamondElement::new(level, k)?;
        let moved = diamond_point(&f, elt, &base.point);
        push_if_new(&f, &mut orbit, moved, Provenance::Diamond(k));
    }
    // Fricke images of everything found so far (one sweep suffices for the
    // closure here, but iterate until stable anyway).
    loop {
        let mut added = false;
        let snapshot: Vec<CuspPoint> = orbit.clone();
        for c in &snapshot {
            let image = fricke_point_cyclo(&c.point)?;
            let prov = match c.provenance {
                Provenance::Principal => Provenance::FrickeDiamond(1),
                Provenance::Diamond(k) => Provenance::FrickeDiamond(k),
                Provenance::FrickeDiamond(_) => c.provenance,
            };
            if push_if_new(&f, &mut orbit, image, prov) {
                added = true;
            }
            for k in level.units() {
                let elt = DiamondElement::new(level, k)?;
                let moved = diamond_point(&f, elt, &c.point);
                if push_if_new(&f, &mut orbit, moved, Provenance::Diamond(k)) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
        if orbit.len() > 4 * level.p() as usize {
            return Err(Error::OrbitSize {
                expected: level.p() as usize - 1,
                got: orbit.len(),
            });
        }
    }

    let expected = level.p() as usize - 1;
    if orbit.len() != expected {
        return Err(Error::OrbitSize {
            expected,
            got: orbit.len(),
        });
    }
    // membership of every orbit point in the variety, exactly
    for c in &orbit {
        let mut ev = Evaluator::new(&f, c.point.values());
        for g in all_generators(level) {
            let poly = crate::quadrics::embed_poly(level, &g.poly);
            let v = ev.eval(&poly, Clone::clone)?;
            if !f.is_zero(&v) {
                return Err(Error::NotOnVariety(format!(
                    "cusp {:?} fails generator {:?}",
                    c.provenance, g.triple
                )));
            }
        }
    }
    Ok(orbit)
}

fn push_if_new(
    f: &CyclotomicField,
    orbit: &mut Vec<CuspPoint>,
    point: ModuliPoint<CyclotomicNumber>,
    provenance: Provenance,
) -> bool {
    if orbit.iter().any(|c| wp_point_equal(f, &c.point, &point)) {
        false
    } else {
        orbit.push(CuspPoint { point, provenance });
        true
    }
}

/// A kernel vector of the Jacobian, split into its ds and dt halves.
#[derive(Clone, Debug)]
pub struct TangentVector<C> {
    pub ds: Vec<C>,
    pub dt: Vec<C>,
}

/// Kernel basis of the Jacobian of all generators at an exact point.
pub fn tangent_space_exact<F: Field>(
    ring: &F,
    point: &ModuliPoint<F::Elem>,
) -> Vec<TangentVector<F::Elem>> {
    let level = point.level;
    let m = level.m();
    let polys = unique_generator_polys(level);
    let rows = jacobian(ring, &polys, point);
    nullspace_field(ring, &rows, 2 * m)
        .into_iter()
        .map(|v| TangentVector {
            ds: v[..m].to_vec(),
            dt: v[m..].to_vec(),
        })
        .collect()
}

/// Kernel dimension of the Jacobian in the 2m affine-cone coordinates.
pub fn tangent_nullity_exact<F: Field>(ring: &F, point: &ModuliPoint<F::Elem>) -> usize {
    let level = point.level;
    let polys = unique_generator_polys(level);
    let rows = jacobian(ring, &polys, point);
    2 * level.m() - rank_field(ring, &rows)
}

/// Numeric kernel dimension by singular values.
pub fn tangent_nullity_numeric(
    point: &ModuliPoint<Complex64>,
    tol: &RankTolerance,
) -> Result<usize> {
    let ring = ComplexField64::default();
    let polys = unique_generator_polys(point.level);
    let rows = jacobian(&ring, &polys, point);
    Ok(2 * point.level.m() - rank_numeric(&rows, tol)?)
}

/// Right-hand sides of the constant-solution condition: component a is
/// sum_{k != 0,a} rho_k rho_{a-k} + 2 rho_a s_a. The zero vector means rho is
/// a stationary solution of the flow at these s-values.
///
/// `rho` and `s` are indexed by the nonzero residues 1..p-1 in order; `s`
/// need not come from a reduced point.
pub fn stationary_residual<R: Ring>(
    ring: &R,
    level: Level,
    rho: &[R::Elem],
    s: &[R::Elem],
) -> Vec<R::Elem> {
    let p = level.p();
    assert_eq!(rho.len(), (p - 1) as usize);
    assert_eq!(s.len(), (p - 1) as usize);
    let at = |v: &[R::Elem], idx: i64| -> R::Elem { v[(level.reduce(idx) - 1) as usize].clone() };
    (1..p)
        .map(|a| {
            let quad = ring.sum(
                level
                    .units()
                    .filter(|&k| k != a)
                    .map(|k| ring.mul(&at(rho, k), &at(rho, a - k))),
            );
            let lin = ring.mul_rat(&ring.mul(&at(rho, a), &at(s, a)), &rat(2, 1));
            ring.add(&quad, &lin)
        })
        .collect()
}
