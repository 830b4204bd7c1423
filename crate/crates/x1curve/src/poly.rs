//! Sparse multivariate polynomials over a generic exact coefficient type.
//!
//! Two variable sets appear: the reduced embedding coordinates
//! s_1..s_m, t_1..t_m with m = (p-1)/2 (indices above m are rewritten on
//! construction through s_{p-a} = -s_a, t_{p-a} = t_a), and the projective
//! coordinates r_0..r_{p-1} of the associated degree-p curve.
//!
//! Monomials are exponent vectors; zero coefficients are never stored. The
//! BTreeMap keeps term order deterministic, which the exporters rely on.

use std::collections::{BTreeMap, HashMap};

use num::BigRational;

use crate::cyclotomic::Level;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Which polynomial ring a sparse polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSet {
    /// s_1..s_m followed by t_1..t_m.
    ReducedSt { m: usize },
    /// r_0..r_{p-1}.
    RVars { p: usize },
}

impl VarSet {
    pub fn nvars(&self) -> usize {
        match *self {
            VarSet::ReducedSt { m } => 2 * m,
            VarSet::RVars { p } => p,
        }
    }

    pub fn name(&self, i: usize) -> String {
        match *self {
            VarSet::ReducedSt { m } => {
                if i < m {
                    format!("s{}", i + 1)
                } else {
                    format!("t{}", i + 1 - m)
                }
            }
            VarSet::RVars { .. } => format!("r{}", i),
        }
    }
}

pub type Monomial = Vec<u16>;

/// A sparse polynomial; coefficient type `C` is any ring element.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<C> {
    pub vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Clone + PartialEq + std::fmt::Debug + Send + Sync> SparsePoly<C> {
    pub fn zero(vars: VarSet) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_of_var(vars: VarSet, idx: usize) -> Monomial {
        let mut m = vec![0u16; vars.nvars()];
        m[idx] = 1;
        m
    }

    /// Adds `c * monomial`, dropping the term if it cancels to zero.
    pub fn add_term<R: Ring<Elem = C>>(&mut self, ring: &R, monomial: Monomial, c: C) {
        if ring.is_zero(&c) {
            return;
        }
        debug_assert_eq!(monomial.len(), self.vars.nvars());
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "mixed variable sets");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(ring, m.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: Ring<Elem = C>>(&self, ring: &R) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), ring.neg(c)))
            .collect();
        Self {
            vars: self.vars,
            terms,
        }
    }

    pub fn sub<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: Ring<Elem = C>>(&self, ring: &R, c: &C) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, x) in self.terms() {
            out.add_term(ring, m.clone(), ring.mul(x, c));
        }
        out
    }

    pub fn mul_rat<R: Ring<Elem = C>>(&self, ring: &R, r: &BigRational) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, x) in self.terms() {
            out.add_term(ring, m.clone(), ring.mul_rat(x, r));
        }
        out
    }

    pub fn mul<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "mixed variable sets");
        let mut out = Self::zero(self.vars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(ring, m, ring.mul(ca, cb));
            }
        }
        out
    }

    /// Shifts every monomial by `shift` (multiplication by a monomial).
    pub fn shift_monomial(&self, shift: &Monomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let shifted: Monomial = m.iter().zip(shift).map(|(x, y)| x + y).collect();
                (shifted, c.clone())
            })
            .collect();
        Self {
            vars: self.vars,
            terms,
        }
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative<R: Ring<Elem = C>>(&self, ring: &R, idx: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in self.terms() {
            let e = m[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[idx] = e - 1;
            out.add_term(ring, dm, ring.mul_rat(c, &crate::ring::rat_int(e as i64)));
        }
        out
    }

    /// Substitutes each variable by the polynomial `images[idx]`.
    ///
    /// Exponents stay tiny here (everything is a quadric), so plain repeated
    /// multiplication is fine.
    pub fn substitute<R: Ring<Elem = C>>(&self, ring: &R, images: &[SparsePoly<C>]) -> Self {
        assert_eq!(images.len(), self.vars.nvars());
        let target_vars = images
            .first()
            .map(|f| f.vars)
            .unwrap_or(self.vars);
        let mut out = Self::zero(target_vars);
        for (m, c) in self.terms() {
            let mut acc = SparsePoly::zero(target_vars);
            acc.add_term(ring, vec![0u16; target_vars.nvars()], c.clone());
            for (idx, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(ring, &images[idx]);
                }
            }
            out = out.add(ring, &acc);
        }
        out
    }

    /// Total weighted degree of each monomial with s of weight one and t of
    /// weight two; `None` if the polynomial is not weighted-homogeneous.
    pub fn weighted_degree(&self) -> Option<u32> {
        let VarSet::ReducedSt { m } = self.vars else {
            return None;
        };
        let mut deg = None;
        for (mono, _) in self.terms() {
            let d: u32 = mono
                .iter()
                .enumerate()
                .map(|(i, &e)| if i < m { e as u32 } else { 2 * e as u32 })
                .sum();
            match deg {
                None => deg = Some(d),
                Some(old) if old != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Maps coefficients through `f`, e.g. to embed Q-coefficients into a bigger
/// ring before substitution.
pub fn map_coeffs<C, D, F>(poly: &SparsePoly<C>, f: F) -> SparsePoly<D>
where
    C: Clone + PartialEq + std::fmt::Debug + Send + Sync,
    D: Clone + PartialEq + std::fmt::Debug + Send + Sync,
    F: Fn(&C) -> D,
{
    SparsePoly {
        vars: poly.vars,
        terms: poly.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
    }
}

/// Evaluates polynomials at a fixed assignment, memoizing monomial values so
/// shared products (series products in particular) are computed once.
pub struct Evaluator<'a, R: Ring> {
    ring: &'a R,
    values: Vec<R::Elem>,
    memo: HashMap<Monomial, R::Elem>,
}

impl<'a, R: Ring> Evaluator<'a, R> {
    pub fn new(ring: &'a R, values: Vec<R::Elem>) -> Self {
        Self {
            ring,
            values,
            memo: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }

    fn monomial_value(&mut self, m: &Monomial) -> R::Elem {
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let mut acc = self.ring.one();
        for (idx, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc = self.ring.mul(&acc, &self.values[idx]);
            }
        }
        self.memo.insert(m.clone(), acc.clone());
        acc
    }

    /// Exact substitution value; `embed` carries coefficients into the ring.
    pub fn eval<C, F>(&mut self, poly: &SparsePoly<C>, embed: F) -> Result<R::Elem>
    where
        C: Clone + PartialEq + std::fmt::Debug + Send + Sync,
        F: Fn(&C) -> R::Elem,
    {
        if poly.vars.nvars() != self.values.len() {
            return Err(Error::MissingVariable(format!(
                "assignment has {} values, polynomial needs {}",
                self.values.len(),
                poly.vars.nvars()
            )));
        }
        let mut acc = self.ring.zero();
        for (m, c) in poly.terms() {
            let mv = self.monomial_value(m);
            acc = self.ring.add(&acc, &self.ring.mul(&embed(c), &mv));
        }
        Ok(acc)
    }
}

/// Sparse polynomials as a coefficient ring in their own right; handy for
/// verifying identities with free variables plugged into value-level code.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    pub vars: VarSet,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, vars: VarSet) -> Self {
        Self { base, vars }
    }

    pub fn var(&self, idx: usize) -> SparsePoly<R::Elem> {
        let mut p = SparsePoly::zero(self.vars);
        p.add_term(
            &self.base,
            SparsePoly::<R::Elem>::monomial_of_var(self.vars, idx),
            self.base.one(),
        );
        p
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = SparsePoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        SparsePoly::zero(self.vars)
    }
    fn one(&self) -> Self::Elem {
        let mut p = SparsePoly::zero(self.vars);
        p.add_term(&self.base, vec![0u16; self.vars.nvars()], self.base.one());
        p
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }
    fn mul_rat(&self, a: &Self::Elem, r: &BigRational) -> Self::Elem {
        a.mul_rat(&self.base, r)
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

/// Reduced s-variable accessor: index a in 1..p-1 becomes (sign, var index).
pub fn s_var(level: Level, a: i64) -> (i64, usize) {
    let a = level.reduce(a);
    debug_assert!(a != 0);
    let m = level.m() as i64;
    if a <= m {
        (1, (a - 1) as usize)
    } else {
        (-1, (level.p() - a - 1) as usize)
    }
}

/// Reduced t-variable accessor (always sign +1).
pub fn t_var(level: Level, a: i64) -> usize {
    let a = level.reduce(a);
    debug_assert!(a != 0);
    let m = level.m() as i64;
    if a <= m {
        level.m() + (a - 1) as usize
    } else {
        level.m() + (level.p() - a - 1) as usize
    }
}

/// Adds c * s_a s_b (indices in 1..p-1, reduced with signs) to `poly`.
pub fn add_ss_term<R: Ring>(
    ring: &R,
    poly: &mut SparsePoly<R::Elem>,
    level: Level,
    a: i64,
    b: i64,
    c: &R::Elem,
) {
    let (sig_a, va) = s_var(level, a);
    let (sig_b, vb) = s_var(level, b);
    let mut m = vec![0u16; poly.vars.nvars()];
    m[va] += 1;
    m[vb] += 1;
    let mut coeff = c.clone();
    if sig_a * sig_b < 0 {
        coeff = ring.neg(&coeff);
    }
    poly.add_term(ring, m, coeff);
}

/// Adds c * t_a to `poly`.
pub fn add_t_term<R: Ring>(
    ring: &R,
    poly: &mut SparsePoly<R::Elem>,
    level: Level,
    a: i64,
    c: &R::Elem,
) {
    let m = SparsePoly::<R::Elem>::monomial_of_var(poly.vars, t_var(level, a));
    poly.add_term(ring, m, c.clone());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, RationalField};

    #[test]
    fn arithmetic_and_cancellation() {
        let f = RationalField;
        let vars = VarSet::ReducedSt { m: 2 };
        let mut p = SparsePoly::zero(vars);
        p.add_term(&f, vec![1, 0, 0, 0], rat(2, 1));
        p.add_term(&f, vec![1, 0, 0, 0], rat(-2, 1));
        assert!(p.is_zero());

        p.add_term(&f, vec![1, 1, 0, 0], rat(1, 1));
        let q = p.mul(&f, &p);
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.terms().next().unwrap().0, &vec![2, 2, 0, 0]);
    }

    #[test]
    fn derivative_of_quadratic() {
        let f = RationalField;
        let vars = VarSet::ReducedSt { m: 2 };
        // s1^2 - 2 s1 s2
        let mut p = SparsePoly::zero(vars);
        p.add_term(&f, vec![2, 0, 0, 0], rat(1, 1));
        p.add_term(&f, vec![1, 1, 0, 0], rat(-2, 1));
        let d = p.derivative(&f, 0);
        // 2 s1 - 2 s2
        let mut ev = Evaluator::new(&f, vec![rat(3, 5), rat(1, 5), rat(0, 1), rat(0, 1)]);
        assert_eq!(ev.eval(&d, Clone::clone).unwrap(), rat(4, 5));
    }

    #[test]
    fn eval_checks_arity() {
        let f = RationalField;
        let vars = VarSet::RVars { p: 5 };
        let mut p = SparsePoly::zero(vars);
        p.add_term(&f, vec![1, 1, 0, 0, 0], rat(1, 1));
        let mut ev = Evaluator::new(&f, vec![rat(1, 1); 4]);
        assert!(ev.eval(&p, Clone::clone).is_err());
        let mut ev5 = Evaluator::new(&f, vec![rat(2, 1); 5]);
        assert_eq!(ev5.eval(&p, Clone::clone).unwrap(), rat(4, 1));
    }

    #[test]
    fn reduced_variable_mapping() {
        let level = Level::new(5).unwrap();
        assert_eq!(s_var(level, 1), (1, 0));
        assert_eq!(s_var(level, 2), (1, 1));
        assert_eq!(s_var(level, 3), (-1, 1));
        assert_eq!(s_var(level, 4), (-1, 0));
        assert_eq!(t_var(level, 3), 3);
        assert_eq!(t_var(level, 1), 2);
    }

    #[test]
    fn substitution_identity() {
        let f = RationalField;
        let vars = VarSet::ReducedSt { m: 1 };
        let mut p = SparsePoly::zero(vars);
        p.add_term(&f, vec![2, 0], rat(1, 1));
        p.add_term(&f, vec![0, 1], rat(3, 1));
        let images: Vec<SparsePoly<BigRational>> = (0..2)
            .map(|i| {
                let mut v = SparsePoly::zero(vars);
                v.add_term(&f, SparsePoly::<BigRational>::monomial_of_var(vars, i), rat(1, 1));
                v
            })
            .collect();
        assert_eq!(p.substitute(&f, &images), p);
    }
}
