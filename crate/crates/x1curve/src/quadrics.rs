//! The quadratic relations cutting out the curve in weighted projective
//! space, and the t-elimination that turns them into s-only quadrics.
//!
//! For every triple a, b, c of nonzero residues with a + b + c = 0 mod p the
//! expansions satisfy
//!
//! ```text
//! s_a s_b + s_b s_c + s_c s_a + t_a + t_b + t_c = 0.
//! ```
//!
//! Summing these over the triples (k, a-k, -a) and using sum s_k = 0 gives a
//! closed form for t_a in the s's alone:
//!
//! ```text
//! t_a = ( -sum_{k != 0,a} s_k s_{a-k} - 2 s_a^2 + (2/(p-2)) sum_{k != 0} s_k^2 ) / (p-4)
//! ```
//!
//! Substituting back produces the s-only quadrics; the coefficient kappa of
//! the sum-of-squares term is deliberately left as data and pinned by
//! [`determine_kappa`] against the q-expansions rather than hard-coded.

use num::BigRational;

use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, Level};
use crate::eisenstein::{eis_s, eis_t, eval_at_tau};
use crate::error::{Error, Result};
use crate::poly::{add_ss_term, add_t_term, map_coeffs, Evaluator, SparsePoly, VarSet};
use crate::ring::{rat, rat_int, ComplexField64, RationalField, Ring};
use crate::series::{SeriesRing, TruncatedSeries, Var};
use num::complex::Complex64;

/// A point of the weighted projective space P(1,..,1,2,..,2) in reduced
/// coordinates, over any coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliPoint<C> {
    pub level: Level,
    /// s_1..s_m.
    pub s: Vec<C>,
    /// t_1..t_m.
    pub t: Vec<C>,
}

impl<C: Clone + PartialEq + std::fmt::Debug + Send + Sync> ModuliPoint<C> {
    pub fn new(level: Level, s: Vec<C>, t: Vec<C>) -> Self {
        assert_eq!(s.len(), level.m());
        assert_eq!(t.len(), level.m());
        Self { level, s, t }
    }

    /// s_k for any nonzero k mod p, using s_{p-a} = -s_a.
    pub fn sv<R: Ring<Elem = C>>(&self, ring: &R, k: i64) -> C {
        let (sign, idx) = crate::poly::s_var(self.level, k);
        if sign > 0 {
            self.s[idx].clone()
        } else {
            ring.neg(&self.s[idx])
        }
    }

    /// t_k for any nonzero k mod p, using t_{p-a} = t_a.
    pub fn tv(&self, k: i64) -> C {
        let idx = crate::poly::t_var(self.level, k) - self.level.m();
        self.t[idx].clone()
    }

    /// Assignment vector s_1..s_m, t_1..t_m for the evaluator.
    pub fn values(&self) -> Vec<C> {
        self.s.iter().chain(self.t.iter()).cloned().collect()
    }

    /// The homothety (s, t) -> (lambda s, lambda^2 t).
    pub fn scale<R: Ring<Elem = C>>(&self, ring: &R, lambda: &C) -> Self {
        let l2 = ring.mul(lambda, lambda);
        Self {
            level: self.level,
            s: self.s.iter().map(|x| ring.mul(x, lambda)).collect(),
            t: self.t.iter().map(|x| ring.mul(x, &l2)).collect(),
        }
    }

    pub fn is_all_zero<R: Ring<Elem = C>>(&self, ring: &R) -> bool {
        self.s.iter().chain(self.t.iter()).all(|x| ring.is_zero(x))
    }
}

/// The point whose coordinates are the q-expansions themselves, as elements
/// of Q(zeta_p)[[q]] truncated at `n`.
pub fn expansion_point(
    level: Level,
    n: i64,
) -> Result<ModuliPoint<TruncatedSeries<CyclotomicNumber>>> {
    let m = level.m() as i64;
    let mut s = Vec::new();
    let mut t = Vec::new();
    for a in 1..=m {
        s.push(eis_s(level, a, n)?.series);
        t.push(eis_t(level, a, n)?.series);
    }
    Ok(ModuliPoint::new(level, s, t))
}

/// The numeric curve point at tau, from the expansions summed at q(tau).
pub fn numeric_point(level: Level, n: i64, tau: Complex64) -> Result<ModuliPoint<Complex64>> {
    let m = level.m() as i64;
    let mut s = Vec::new();
    let mut t = Vec::new();
    for a in 1..=m {
        s.push(eval_at_tau(&eis_s(level, a, n)?.series, tau));
        t.push(eval_at_tau(&eis_t(level, a, n)?.series, tau));
    }
    Ok(ModuliPoint::new(level, s, t))
}

/// One generator of the weighted quadratic ideal.
#[derive(Clone, Debug)]
pub struct QuadricGenerator {
    pub triple: (i64, i64, i64),
    pub poly: SparsePoly<BigRational>,
}

/// One sorted representative (a <= b <= c) per multiset of nonzero residues
/// with a + b + c = 0 mod p. Count: (p-1)(p+1)/6.
pub fn canonical_triples(level: Level) -> Vec<(i64, i64, i64)> {
    let p = level.p();
    let mut out = Vec::new();
    for a in 1..p {
        for b in a..p {
            let c = level.reduce(-(a + b));
            if c == 0 || c < b {
                continue;
            }
            out.push((a, b, c));
        }
    }
    out
}

fn validate_triple(level: Level, (a, b, c): (i64, i64, i64)) -> Result<()> {
    let ok = level.reduce(a) != 0
        && level.reduce(b) != 0
        && level.reduce(c) != 0
        && level.reduce(a + b + c) == 0;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidTriple(a, b, c))
    }
}

/// s_a s_b + s_b s_c + s_c s_a + t_a + t_b + t_c, reduced to the m-variable
/// set.
pub fn quad_generator(level: Level, triple: (i64, i64, i64)) -> Result<QuadricGenerator> {
    validate_triple(level, triple)?;
    let f = RationalField;
    let (a, b, c) = triple;
    let vars = VarSet::ReducedSt { m: level.m() };
    let one = rat(1, 1);
    let mut poly = SparsePoly::zero(vars);
    add_ss_term(&f, &mut poly, level, a, b, &one);
    add_ss_term(&f, &mut poly, level, b, c, &one);
    add_ss_term(&f, &mut poly, level, c, a, &one);
    add_t_term(&f, &mut poly, level, a, &one);
    add_t_term(&f, &mut poly, level, b, &one);
    add_t_term(&f, &mut poly, level, c, &one);
    Ok(QuadricGenerator { triple, poly })
}

pub fn all_generators(level: Level) -> Vec<QuadricGenerator> {
    canonical_triples(level)
        .into_iter()
        .map(|t| quad_generator(level, t).expect("canonical triples are valid"))
        .collect()
}

/// The generator polynomials with duplicates removed (negating a triple
/// produces the same reduced polynomial).
pub fn unique_generator_polys(level: Level) -> Vec<SparsePoly<BigRational>> {
    let mut seen: Vec<SparsePoly<BigRational>> = Vec::new();
    for g in all_generators(level) {
        if !seen.iter().any(|p| p == &g.poly) {
            seen.push(g.poly);
        }
    }
    seen
}

/// Evaluates the t-elimination formula on concrete s-values in any Q-algebra.
pub fn eliminate_t<R: Ring>(ring: &R, level: Level, s: &[R::Elem]) -> Result<Vec<R::Elem>> {
    assert_eq!(s.len(), level.m());
    let p = level.p();
    let point = ModuliPoint::new(level, s.to_vec(), vec![ring.zero(); level.m()]);
    // sum over all nonzero k of s_k^2
    let s2 = ring.sum(level.units().map(|k| {
        let v = point.sv(ring, k);
        ring.mul(&v, &v)
    }));
    let mut out = Vec::with_capacity(level.m());
    for a in 1..=level.m() as i64 {
        let conv = ring.sum(level.units().filter(|&k| k != a).map(|k| {
            let x = point.sv(ring, k);
            let y = point.sv(ring, a - k);
            ring.mul(&x, &y)
        }));
        let sa = point.sv(ring, a);
        let sa2 = ring.mul(&sa, &sa);
        let mut acc = ring.neg(&conv);
        acc = ring.sub(&acc, &ring.mul_rat(&sa2, &rat(2, 1)));
        acc = ring.add(&acc, &ring.mul_rat(&s2, &rat(2, p - 2)));
        out.push(ring.div_rat(&acc, &rat_int(p - 4))?);
    }
    Ok(out)
}

/// T = sum t_k over nonzero k; on the variety this equals
/// -(sum s_k^2)/(p-2).
pub fn t_sum_formula<R: Ring>(ring: &R, level: Level, s: &[R::Elem]) -> R::Elem {
    let point = ModuliPoint::new(level, s.to_vec(), vec![ring.zero(); level.m()]);
    let s2 = ring.sum(level.units().map(|k| {
        let v = point.sv(ring, k);
        ring.mul(&v, &v)
    }));
    ring.neg(&ring.div_rat(&s2, &rat_int(level.p() - 2)).expect("p > 2"))
}

/// The s-only quadric for `triple`, with the sum-of-squares coefficient
/// parameterized by kappa:
///
/// ```text
/// (p-4)(s_a s_b + s_b s_c + s_c s_a) - 2(s_a^2 + s_b^2 + s_c^2)
///   + (kappa/(p-2)) sum_{k != 0} s_k^2
///   - sum_{k != 0,a} s_k s_{a-k} - sum_{k != 0,b} s_k s_{b-k}
///   - sum_{k != 0,c} s_k s_{c-k}
/// ```
pub fn eliminated_quadric(
    level: Level,
    triple: (i64, i64, i64),
    kappa: &BigRational,
) -> Result<SparsePoly<BigRational>> {
    validate_triple(level, triple)?;
    let f = RationalField;
    let p = level.p();
    let (a, b, c) = triple;
    let vars = VarSet::ReducedSt { m: level.m() };
    let mut poly = SparsePoly::zero(vars);

    let pm4 = rat_int(p - 4);
    add_ss_term(&f, &mut poly, level, a, b, &pm4);
    add_ss_term(&f, &mut poly, level, b, c, &pm4);
    add_ss_term(&f, &mut poly, level, c, a, &pm4);

    let minus2 = rat(-2, 1);
    for x in [a, b, c] {
        add_ss_term(&f, &mut poly, level, x, x, &minus2);
    }

    let sq_coeff = kappa / rat_int(p - 2);
    for k in level.units() {
        add_ss_term(&f, &mut poly, level, k, k, &sq_coeff);
    }

    let minus1 = rat(-1, 1);
    for x in [a, b, c] {
        for k in level.units().filter(|&k| k != x) {
            add_ss_term(&f, &mut poly, level, k, x - k, &minus1);
        }
    }
    Ok(poly)
}

/// Outcome of the kappa resolution.
#[derive(Clone, Debug)]
pub struct EliminationData {
    pub level: Level,
    pub kappa: BigRational,
}

/// Decides which kappa in {4, 6} makes every eliminated quadric vanish on
/// the q-expansions through order `n`. Errors if both do or neither does.
pub fn determine_kappa(level: Level, n: i64) -> Result<EliminationData> {
    assert!(n >= 10, "need enough coefficients to separate the candidates");
    let base = CyclotomicField::new(level);
    let ring = SeriesRing::new(base, Var::Q, n);
    let m = level.m() as i64;
    let mut values = Vec::new();
    for a in 1..=m {
        values.push(eis_s(level, a, n)?.series);
    }
    // pad with dummy zero t-values; the eliminated quadrics never touch t
    for _ in 0..m {
        values.push(ring.zero());
    }
    let mut ev = Evaluator::new(&ring, values);

    let mut vanishing = Vec::new();
    for kappa in [rat_int(4), rat_int(6)] {
        let mut all_zero = true;
        for triple in canonical_triples(level) {
            let q = eliminated_quadric(level, triple, &kappa)?;
            let val = ev.eval(&q, |r| ring.constant(base.from_rat(r)))?;
            if !ring.is_zero(&val) {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            vanishing.push(kappa);
        }
    }
    match vanishing.len() {
        1 => Ok(EliminationData {
            level,
            kappa: vanishing.pop().expect("just checked"),
        }),
        0 => Err(Error::KappaInconsistent),
        _ => Err(Error::KappaAmbiguous),
    }
}

/// Evaluates every canonical generator on the exact q-expansions through
/// order `n`; returns the triples whose generator fails to vanish.
pub fn quad_rel_failures(level: Level, n: i64) -> Result<Vec<(i64, i64, i64)>> {
    let base = CyclotomicField::new(level);
    let ring = SeriesRing::new(base, Var::Q, n);
    let point = expansion_point(level, n)?;
    let mut ev = Evaluator::new(&ring, point.values());
    let mut failures = Vec::new();
    for g in all_generators(level) {
        let val = ev.eval(&g.poly, |r| ring.constant(base.from_rat(r)))?;
        if !ring.is_zero(&val) {
            failures.push(g.triple);
        }
    }
    Ok(failures)
}

/// Jacobian matrix of `polys` at `point`: rows are polynomials, columns the
/// 2m reduced coordinates.
pub fn jacobian<R: Ring>(
    ring: &R,
    polys: &[SparsePoly<BigRational>],
    point: &ModuliPoint<R::Elem>,
) -> Vec<Vec<R::Elem>> {
    let f = RationalField;
    let nvars = 2 * point.level.m();
    let mut ev = Evaluator::new(ring, point.values());
    polys
        .iter()
        .map(|poly| {
            (0..nvars)
                .map(|j| {
                    let d = poly.derivative(&f, j);
                    ev.eval(&d, |r| ring.from_rat(r)).expect("arity matches")
                })
                .collect()
        })
        .collect()
}

/// Evaluates a rational-coefficient polynomial at a point over `ring`.
pub fn eval_at_point<R: Ring>(
    ring: &R,
    poly: &SparsePoly<BigRational>,
    point: &ModuliPoint<R::Elem>,
) -> Result<R::Elem> {
    let mut ev = Evaluator::new(ring, point.values());
    ev.eval(poly, |r| ring.from_rat(r))
}

/// Embeds a rational st-polynomial into Q(zeta_p) coefficients.
pub fn embed_poly(level: Level, poly: &SparsePoly<BigRational>) -> SparsePoly<CyclotomicNumber> {
    let f = CyclotomicField::new(level);
    map_coeffs(poly, |r| f.from_rat(r))
}

/// The complex point with eps-aware arithmetic used by the numeric paths.
pub fn complex_ring() -> ComplexField64 {
    ComplexField64::default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::equal_to_order;

    fn lvl(p: u64) -> Level {
        Level::new(p).unwrap()
    }

    /// The rational cusp at p = 5: s = (3/5, 1/5), t = (1/75, -11/75).
    fn cusp5() -> ModuliPoint<BigRational> {
        ModuliPoint::new(
            lvl(5),
            vec![rat(3, 5), rat(1, 5)],
            vec![rat(1, 75), rat(-11, 75)],
        )
    }

    #[test]
    fn triple_counts() {
        assert_eq!(
            canonical_triples(lvl(5)),
            vec![(1, 1, 3), (1, 2, 2), (2, 4, 4), (3, 3, 4)]
        );
        assert_eq!(canonical_triples(lvl(7)).len(), 8);
        assert_eq!(canonical_triples(lvl(13)).len(), 28);
        for p in [5u64, 7, 11, 13] {
            let level = lvl(p);
            let n = (level.p() - 1) * (level.p() + 1) / 6;
            assert_eq!(canonical_triples(level).len() as i64, n);
        }
    }

    #[test]
    fn generator_reduction() {
        let f = RationalField;
        let level = lvl(5);
        // (1,1,3): s1^2 - 2 s1 s2 + 2 t1 + t2
        let g = quad_generator(level, (1, 1, 3)).unwrap();
        let mut expected = SparsePoly::zero(VarSet::ReducedSt { m: 2 });
        expected.add_term(&f, vec![2, 0, 0, 0], rat(1, 1));
        expected.add_term(&f, vec![1, 1, 0, 0], rat(-2, 1));
        expected.add_term(&f, vec![0, 0, 1, 0], rat(2, 1));
        expected.add_term(&f, vec![0, 0, 0, 1], rat(1, 1));
        assert_eq!(g.poly, expected);

        // (1,2,2): 2 s1 s2 + s2^2 + t1 + 2 t2
        let g2 = quad_generator(level, (1, 2, 2)).unwrap();
        let mut expected2 = SparsePoly::zero(VarSet::ReducedSt { m: 2 });
        expected2.add_term(&f, vec![1, 1, 0, 0], rat(2, 1));
        expected2.add_term(&f, vec![0, 2, 0, 0], rat(1, 1));
        expected2.add_term(&f, vec![0, 0, 1, 0], rat(1, 1));
        expected2.add_term(&f, vec![0, 0, 0, 1], rat(2, 1));
        assert_eq!(g2.poly, expected2);

        // negated triple gives the same reduced polynomial
        let g3 = quad_generator(level, (3, 3, 4)).unwrap();
        assert_eq!(g3.poly, g2.poly);
        assert_eq!(unique_generator_polys(level).len(), 2);

        assert!(quad_generator(level, (1, 2, 3)).is_err());
        assert!(quad_generator(level, (5, 1, 4)).is_err());
    }

    #[test]
    fn generators_vanish_at_cusp5() {
        let f = RationalField;
        let cusp = cusp5();
        for g in all_generators(lvl(5)) {
            let v = eval_at_point(&f, &g.poly, &cusp).unwrap();
            assert!(f.is_zero(&v), "triple {:?}", g.triple);
        }
    }

    #[test]
    fn eliminate_t_at_cusp5() {
        let f = RationalField;
        let level = lvl(5);
        let s = vec![rat(3, 5), rat(1, 5)];
        let t = eliminate_t(&f, level, &s).unwrap();
        assert_eq!(t, vec![rat(1, 75), rat(-11, 75)]);

        // T = sum over nonzero k of t_k = -(sum s_k^2)/(p-2) = -4/15
        let total = f.add(
            &f.mul_rat(&t[0], &rat(2, 1)),
            &f.mul_rat(&t[1], &rat(2, 1)),
        );
        assert_eq!(total, rat(-4, 15));
        assert_eq!(t_sum_formula(&f, level, &s), rat(-4, 15));
    }

    #[test]
    fn eliminate_t_reproduces_expansions() {
        // q-series route: t(from s) must equal the weight-two expansions
        for p in [5u64, 7] {
            let level = lvl(p);
            let n = 30;
            let base = CyclotomicField::new(level);
            let ring = SeriesRing::new(base, Var::Q, n);
            let s: Vec<_> = (1..=level.m() as i64)
                .map(|a| eis_s(level, a, n).unwrap().series)
                .collect();
            let t = eliminate_t(&ring, level, &s).unwrap();
            for (idx, ta) in t.iter().enumerate() {
                let expected = eis_t(level, idx as i64 + 1, n).unwrap().series;
                assert!(
                    equal_to_order(&base, ta, &expected, n).unwrap(),
                    "p={p} t_{}",
                    idx + 1
                );
            }
        }
    }

    #[test]
    fn eliminated_quadric_at_cusp5() {
        let f = RationalField;
        let level = lvl(5);
        let cusp = cusp5();
        let q6 = eliminated_quadric(level, (1, 1, 3), &rat_int(6)).unwrap();
        assert!(f.is_zero(&eval_at_point(&f, &q6, &cusp).unwrap()));

        let q4 = eliminated_quadric(level, (1, 1, 3), &rat_int(4)).unwrap();
        let residual = eval_at_point(&f, &q4, &cusp).unwrap();
        // nonzero, magnitude 40/75
        assert_eq!(residual, rat(-40, 75));
    }

    #[test]
    fn kappa_resolution() {
        let data = determine_kappa(lvl(5), 12).unwrap();
        assert_eq!(data.kappa, rat_int(6));
        let data7 = determine_kappa(lvl(7), 12).unwrap();
        assert_eq!(data7.kappa, data.kappa);
    }

    #[test]
    fn quad_rel_on_expansions_small() {
        assert!(quad_rel_failures(lvl(5), 12).unwrap().is_empty());
        assert!(quad_rel_failures(lvl(7), 12).unwrap().is_empty());
    }

    #[test]
    fn jacobian_entries() {
        let f = RationalField;
        let level = lvl(5);
        let g = quad_generator(level, (1, 1, 3)).unwrap();
        let rows = jacobian(&f, &[g.poly.clone()], &cusp5());
        // d/dt1 of s1^2 - 2 s1 s2 + 2 t1 + t2 is 2
        assert_eq!(rows[0][2], rat(2, 1));
        // d/ds1 at the cusp: 2 s1 - 2 s2 = 4/5
        assert_eq!(rows[0][0], rat(4, 5));

        let zero = SparsePoly::zero(VarSet::ReducedSt { m: 2 });
        let zrows = jacobian(&f, &[zero], &cusp5());
        assert!(zrows[0].iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn weighted_homogeneity() {
        let f = RationalField;
        let level = lvl(5);
        let lambda = rat(7, 3);
        let p0 = cusp5();
        // perturb off the variety so the check is not vacuous
        let off = ModuliPoint::new(
            level,
            vec![rat(1, 2), rat(-2, 7)],
            vec![rat(3, 4), rat(5, 11)],
        );
        for point in [p0, off] {
            let scaled = point.scale(&f, &lambda);
            for g in all_generators(level) {
                assert_eq!(g.poly.weighted_degree(), Some(2));
                let v = eval_at_point(&f, &g.poly, &point).unwrap();
                let vs = eval_at_point(&f, &g.poly, &scaled).unwrap();
                assert_eq!(vs, f.mul(&v, &f.mul(&lambda, &lambda)));
            }
        }
    }
}
