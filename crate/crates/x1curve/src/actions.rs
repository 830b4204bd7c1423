//! The diamond action of (Z/pZ)* and the Fricke involution.
//!
//! The diamond action is the index substitution s_a -> s_{ak}, t_a -> t_{ak}.
//! The Fricke involution mixes indices through a discrete-Fourier-type
//! substitution with (-p)^(-1/2) prefactors; to stay inside Q(zeta_p) this
//! module only ever works with the (-p)-scaled operator
//!
//! ```text
//! W(s_a) = sum_k zeta^{ka} s_k
//! W(t_a) = sum_k zeta^{ka} (-s_k^2 + 2 t_k)
//! ```
//!
//! which is multiplicative on weighted-homogeneous elements and satisfies
//! W(f) = (-p) w_p(f) in weighted degree two. Projective points transform by
//! the same formulas after clearing the square root with a homothety.


use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, Level};
use crate::error::{Error, Result};
use crate::linalg::express_in_span;
use crate::poly::{s_var, t_var, Monomial, SparsePoly, VarSet};
use crate::quadrics::{all_generators, canonical_triples, embed_poly, ModuliPoint};
use crate::ring::{rat, rat_int, Ring};

/// A unit k mod p acting by index multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiamondElement {
    pub level: Level,
    pub k: i64,
}

impl DiamondElement {
    pub fn new(level: Level, k: i64) -> Result<Self> {
        let k = level.nonzero(k).map_err(|_| Error::NotAUnit(k))?;
        Ok(Self { level, k })
    }
}

/// Applies s_a -> s_{ak}, t_a -> t_{ak} to a polynomial in reduced variables.
pub fn diamond_poly<R: Ring>(
    ring: &R,
    level: Level,
    k: DiamondElement,
    poly: &SparsePoly<R::Elem>,
) -> SparsePoly<R::Elem> {
    let m = level.m();
    debug_assert_eq!(poly.vars, VarSet::ReducedSt { m });
    let mut out = SparsePoly::zero(poly.vars);
    for (mono, c) in poly.terms() {
        let mut new_mono: Monomial = vec![0u16; 2 * m];
        let mut negate = false;
        for (i, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if i < m {
                let a = i as i64 + 1;
                let (sign, idx) = s_var(level, a * k.k);
                new_mono[idx] += e;
                if sign < 0 && e % 2 == 1 {
                    negate = !negate;
                }
            } else {
                let a = (i - m) as i64 + 1;
                new_mono[t_var(level, a * k.k)] += e;
            }
        }
        let coeff = if negate { ring.neg(c) } else { c.clone() };
        out.add_term(ring, new_mono, coeff);
    }
    out
}

/// Applies the diamond action to a point: the image coordinates read off the
/// substituted indices, (kP).s_a = P.s_{ak}.
pub fn diamond_point<R: Ring>(
    ring: &R,
    k: DiamondElement,
    point: &ModuliPoint<R::Elem>,
) -> ModuliPoint<R::Elem> {
    let level = point.level;
    let m = level.m() as i64;
    let s = (1..=m).map(|a| point.sv(ring, a * k.k)).collect();
    let t = (1..=m).map(|a| point.tv(a * k.k)).collect();
    ModuliPoint::new(level, s, t)
}

/// The (-p)-scaled Fricke images of every reduced variable, as polynomials
/// over Q(zeta_p): first the W(s_a), then the W(t_a), a = 1..m.
pub fn fricke_images(level: Level) -> Vec<SparsePoly<CyclotomicNumber>> {
    let f = CyclotomicField::new(level);
    let m = level.m();
    let vars = VarSet::ReducedSt { m };
    let mut images = Vec::with_capacity(2 * m);
    for a in 1..=m as i64 {
        // W(s_a) = sum_k zeta^{ka} s_k, reduced over k <= m
        let mut poly = SparsePoly::zero(vars);
        for k in 1..=m as i64 {
            let coeff = f.sub(&f.zeta(k * a), &f.zeta(-k * a));
            let mono = SparsePoly::<CyclotomicNumber>::monomial_of_var(vars, (k - 1) as usize);
            poly.add_term(&f, mono, coeff);
        }
        images.push(poly);
    }
    for a in 1..=m as i64 {
        // W(t_a) = sum_k zeta^{ka} (-s_k^2 + 2 t_k), reduced over k <= m
        let mut poly = SparsePoly::zero(vars);
        for k in 1..=m as i64 {
            let coeff = f.add(&f.zeta(k * a), &f.zeta(-k * a));
            let mut sq = vec![0u16; 2 * m];
            sq[(k - 1) as usize] = 2;
            poly.add_term(&f, sq, f.neg(&coeff));
            let tmono = SparsePoly::<CyclotomicNumber>::monomial_of_var(vars, m + (k - 1) as usize);
            poly.add_term(&f, tmono, f.mul_rat(&coeff, &rat(2, 1)));
        }
        images.push(poly);
    }
    images
}

/// (-p) times the Fricke image of a weighted-degree-two polynomial.
pub fn fricke_poly(
    level: Level,
    poly: &SparsePoly<CyclotomicNumber>,
) -> Result<SparsePoly<CyclotomicNumber>> {
    if poly.weighted_degree() != Some(2) && !poly.is_zero() {
        return Err(Error::NotWeightedQuadric);
    }
    let f = CyclotomicField::new(level);
    Ok(poly.substitute(&f, &fricke_images(level)))
}

/// Result of expressing one Fricke-transformed generator in the span of the
/// generator family.
#[derive(Clone, Debug)]
pub struct FrickeMembership {
    pub triple: (i64, i64, i64),
    /// Coefficients over the canonical generator list, when the image lies in
    /// the span.
    pub combination: Option<Vec<CyclotomicNumber>>,
}

impl FrickeMembership {
    pub fn is_member(&self) -> bool {
        self.combination.is_some()
    }
}

/// For every canonical triple, solves the exact linear system expressing
/// (-p) w_p(g_triple) as a Q(zeta_p)-combination of the generator family.
pub fn fricke_membership(level: Level) -> Result<Vec<FrickeMembership>> {
    let f = CyclotomicField::new(level);
    let generators = all_generators(level);
    let basis = weighted_quadric_monomials(level.m());
    let columns: Vec<Vec<CyclotomicNumber>> = generators
        .iter()
        .map(|g| coefficient_vector(&f, &embed_poly(level, &g.poly), &basis))
        .collect();
    let mut out = Vec::new();
    for g in &generators {
        let image = fricke_poly(level, &embed_poly(level, &g.poly))?;
        let target = coefficient_vector(&f, &image, &basis);
        let combination = express_in_span(&f, &columns, &target);
        out.push(FrickeMembership {
            triple: g.triple,
            combination,
        });
    }
    Ok(out)
}

/// All weighted-degree-two monomials in reduced variables: s_i s_j (i <= j)
/// then t_i.
fn weighted_quadric_monomials(m: usize) -> Vec<Monomial> {
    let mut basis = Vec::new();
    for i in 0..m {
        for j in i..m {
            let mut mono = vec![0u16; 2 * m];
            mono[i] += 1;
            mono[j] += 1;
            basis.push(mono);
        }
    }
    for i in 0..m {
        let mut mono = vec![0u16; 2 * m];
        mono[m + i] = 1;
        basis.push(mono);
    }
    basis
}

fn coefficient_vector<R: Ring>(
    ring: &R,
    poly: &SparsePoly<R::Elem>,
    basis: &[Monomial],
) -> Vec<R::Elem> {
    let lookup: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![ring.zero(); basis.len()];
    for (mono, c) in poly.terms() {
        let idx = *lookup.get(mono).expect("monomial outside quadric basis");
        v[idx] = c.clone();
    }
    v
}

/// Fricke image of a projective point, rescaled by lambda = (-p)^(1/2) so no
/// square root ever appears: s'_a = sum_k zeta^{ka} s_k,
/// t'_a = sum_k zeta^{ka} (-s_k^2 + 2 t_k).
pub fn fricke_point<R: Ring, Z>(
    ring: &R,
    zeta_pow: Z,
    point: &ModuliPoint<R::Elem>,
) -> Result<ModuliPoint<R::Elem>>
where
    Z: Fn(i64) -> R::Elem,
{
    let level = point.level;
    let m = level.m() as i64;
    let mut s = Vec::with_capacity(m as usize);
    let mut t = Vec::with_capacity(m as usize);
    for a in 1..=m {
        s.push(ring.sum(level.units().map(|k| {
            ring.mul(&zeta_pow(k * a), &point.sv(ring, k))
        })));
        t.push(ring.sum(level.units().map(|k| {
            let sk = point.sv(ring, k);
            let val = ring.sub(
                &ring.mul_rat(&point.tv(k), &rat(2, 1)),
                &ring.mul(&sk, &sk),
            );
            ring.mul(&zeta_pow(k * a), &val)
        })));
    }
    let image = ModuliPoint::new(level, s, t);
    if image.is_all_zero(ring) {
        return Err(Error::ZeroPoint);
    }
    Ok(image)
}

/// Fricke on a point over Q(zeta_p).
pub fn fricke_point_cyclo(
    point: &ModuliPoint<CyclotomicNumber>,
) -> Result<ModuliPoint<CyclotomicNumber>> {
    let f = CyclotomicField::new(point.level);
    fricke_point(&f, |k| f.zeta(k), point)
}

/// Exact involution check for the scaled operator, in reduced variables.
///
/// On the weight-one side W^2(s_a) = -p s_a holds identically. On the
/// weight-two side the identity only holds modulo the ideal: writing
/// G_a = sum_{k != 0,a} g_{k,a-k,-a} (a sum of canonical generators),
///
/// ```text
/// W^2(t_a) = p^2 t_a - p G_a + (2/3) sum_{b != 0} G_b
/// ```
///
/// is the exact polynomial identity, and is what this function verifies.
/// Both sides are symbolic; no point is involved.
pub fn fricke_involution_check(level: Level) -> Result<bool> {
    let f = CyclotomicField::new(level);
    let m = level.m();
    let vars = VarSet::ReducedSt { m };
    let images = fricke_images(level);
    let p = level.p();

    // generator combinations G_a, indexed by a = 1..p-1
    let g_of = |a: i64| -> SparsePoly<CyclotomicNumber> {
        let mut acc = SparsePoly::zero(vars);
        for k in level.units().filter(|&k| k != a) {
            let g = crate::quadrics::quad_generator(level, sort3(level, (k, a - k, -a)))
                .expect("valid triple");
            acc = acc.add(&f, &embed_poly(level, &g.poly));
        }
        acc
    };
    let mut g_total = SparsePoly::zero(vars);
    for b in level.units() {
        g_total = g_total.add(&f, &g_of(b));
    }

    for a in 1..=m as i64 {
        // W^2(s_a) + p s_a = 0
        let w2s = images[(a - 1) as usize].substitute(&f, &images);
        let mut expected = SparsePoly::zero(vars);
        expected.add_term(
            &f,
            SparsePoly::<CyclotomicNumber>::monomial_of_var(vars, (a - 1) as usize),
            f.from_rat(&rat_int(-p)),
        );
        if w2s != expected {
            return Ok(false);
        }

        // W^2(t_a) - p^2 t_a + p G_a - (2/3) sum_b G_b = 0
        let w2t = images[m + (a - 1) as usize].substitute(&f, &images);
        let mut rhs = SparsePoly::zero(vars);
        rhs.add_term(
            &f,
            SparsePoly::<CyclotomicNumber>::monomial_of_var(vars, m + (a - 1) as usize),
            f.from_rat(&rat_int(p * p)),
        );
        let rhs = rhs
            .add(&f, &g_of(a).mul_rat(&f, &rat_int(-p)))
            .add(&f, &g_total.mul_rat(&f, &rat(2, 3)));
        if w2t != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sort3(level: Level, (a, b, c): (i64, i64, i64)) -> (i64, i64, i64) {
    let mut v = [level.reduce(a), level.reduce(b), level.reduce(c)];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Checks that the diamond action permutes the generator family: the image
/// of g_{a,b,c} under k equals g_{ka,kb,kc} exactly.
pub fn diamond_permutes_generators(level: Level) -> bool {
    let fq = crate::ring::RationalField;
    for k in level.units() {
        let elt = DiamondElement::new(level, k).expect("unit");
        for triple in canonical_triples(level) {
            let g = crate::quadrics::quad_generator(level, triple).expect("valid");
            let moved = diamond_poly(&fq, level, elt, &g.poly);
            let target = crate::quadrics::quad_generator(
                level,
                sort3(level, (triple.0 * k, triple.1 * k, triple.2 * k)),
            )
            .expect("valid");
            if moved != target.poly {
                return false;
            }
        }
    }
    true
}
