//! Truncated power series (in q) and Laurent series (in z) over a generic
//! exact coefficient ring.
//!
//! A series tracks the lowest stored exponent, the stored coefficients, and a
//! truncation order: coefficients are known for every exponent strictly below
//! the order, stored or not (unstored known exponents are zero). Arithmetic
//! never claims anything at or beyond the truncation order, and products use
//! the pessimistic rule
//! `order(fg) = min(low(f) + order(g), low(g) + order(f))`.
//!
//! The same type nests: a z-series over the ring of q-series over Q(zeta_p)
//! is the workhorse for verifying Laurent-solution identities on expansions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Orders at or above this value mean "known to all orders".
pub const UNBOUNDED: i64 = i64::MAX / 4;

fn ord_add(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(UNBOUNDED)
}

/// Series variable tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    Z,
}

/// A truncated series sum_{e} c_e var^e.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries<C> {
    pub var: Var,
    low: i64,
    order: i64,
    coeffs: Vec<C>,
}

impl<C: Clone + PartialEq + std::fmt::Debug + Send + Sync> TruncatedSeries<C> {
    pub fn zero(var: Var, order: i64) -> Self {
        Self {
            var,
            low: 0,
            order,
            coeffs: vec![],
        }
    }

    pub fn constant(var: Var, c: C, order: i64) -> Self {
        Self {
            var,
            low: 0,
            order,
            coeffs: vec![c],
        }
    }

    pub fn monomial(var: Var, exponent: i64, c: C, order: i64) -> Self {
        Self {
            var,
            low: exponent,
            order,
            coeffs: vec![c],
        }
    }

    /// Builds from consecutive coefficients starting at exponent `low`.
    pub fn from_coeffs(var: Var, low: i64, coeffs: Vec<C>, order: i64) -> Self {
        debug_assert!(low + coeffs.len() as i64 <= order);
        Self {
            var,
            low,
            order,
            coeffs,
        }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Truncation order: coefficients are known for exponents < order.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn stored(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (self.low + i as i64, c))
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::RingMismatch(format!(
                "series variables {:?} and {:?}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    /// The coefficient at exponent `e`; errors past the truncation order.
    pub fn coeff<R: Ring<Elem = C>>(&self, ring: &R, e: i64) -> Result<C> {
        if e >= self.order {
            return Err(Error::TruncationExceeded {
                requested: e,
                available: self.order,
            });
        }
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(ring.zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    pub fn is_zero<R: Ring<Elem = C>>(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    pub fn add<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let low = self.low.min(other.low);
        let hi = (self.low + self.coeffs.len() as i64)
            .max(other.low + other.coeffs.len() as i64)
            .min(order);
        let mut coeffs = Vec::with_capacity((hi - low).max(0) as usize);
        for e in low..hi {
            let a = self.coeff_unchecked(ring, e);
            let b = other.coeff_unchecked(ring, e);
            coeffs.push(ring.add(&a, &b));
        }
        Ok(Self::trimmed(self.var, low, coeffs, order, ring))
    }

    fn coeff_unchecked<R: Ring<Elem = C>>(&self, ring: &R, e: i64) -> C {
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            ring.zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    fn trimmed<R: Ring<Elem = C>>(var: Var, mut low: i64, mut coeffs: Vec<C>, order: i64, ring: &R) -> Self {
        while coeffs.last().map_or(false, |c| ring.is_zero(c)) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| ring.is_zero(c)).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            low += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            low = 0;
        }
        Self {
            var,
            low,
            order,
            coeffs,
        }
    }

    pub fn neg<R: Ring<Elem = C>>(&self, ring: &R) -> Self {
        Self {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: Ring<Elem = C>>(&self, ring: &R, c: &C) -> Self {
        Self {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| ring.mul(x, c)).collect(),
        }
    }

    /// Cauchy product with pessimistic truncation bookkeeping.
    pub fn mul<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = ord_add(self.low, other.order).min(ord_add(other.low, self.order));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::zero(self.var, order));
        }
        let low = self.low + other.low;
        let full_len = self.coeffs.len() + other.coeffs.len() - 1;
        let len = (full_len as i64).min(order - low).max(0) as usize;
        let mut coeffs = vec![ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let t = ring.mul(a, b);
                coeffs[i + j] = ring.add(&coeffs[i + j], &t);
            }
        }
        Ok(Self::trimmed(self.var, low, coeffs, order, ring))
    }

    /// Term-wise d/dz; the truncation order drops by one.
    pub fn derivative<R: Ring<Elem = C>>(&self, ring: &R) -> Self {
        let order = if self.order >= UNBOUNDED {
            self.order
        } else {
            self.order - 1
        };
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.stored() {
            coeffs.push(ring.mul_rat(c, &crate::ring::rat_int(e)));
        }
        Self::trimmed(self.var, self.low - 1, coeffs, order, ring)
    }

    /// Re-coefficients the series through `f`, keeping shape and orders.
    pub fn map<D, F>(&self, f: F) -> TruncatedSeries<D>
    where
        D: Clone + PartialEq + std::fmt::Debug + Send + Sync,
        F: Fn(&C) -> D,
    {
        TruncatedSeries {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Exact coefficient agreement below exponent `M`; errors if `M` overruns
/// either truncation order.
pub fn equal_to_order<R: Ring>(
    ring: &R,
    f: &TruncatedSeries<R::Elem>,
    g: &TruncatedSeries<R::Elem>,
    m: i64,
) -> Result<bool> {
    f.check_var(g)?;
    for s in [f, g] {
        if m > s.order {
            return Err(Error::TruncationExceeded {
                requested: m,
                available: s.order,
            });
        }
    }
    // Beyond both stored ranges every coefficient below m is a known zero.
    let low = f.low.min(g.low);
    let hi = (f.low + f.coeffs.len() as i64)
        .max(g.low + g.coeffs.len() as i64)
        .min(m);
    for e in low..hi {
        if !ring.eq(&f.coeff_unchecked(ring, e), &g.coeff_unchecked(ring, e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The ring of truncated series in `var` over `base`, truncated at `order`.
///
/// Mixed-order arithmetic follows the min rule, so elements of lower order
/// simply propagate their (smaller) range of validity. The structural
/// constants `zero` and `one` are exact (unbounded order): truncating them
/// to the ambient order would make the min rule discard knowledge whenever a
/// Laurent element with a pole is multiplied by one.
#[derive(Clone, Debug)]
pub struct SeriesRing<R: Ring> {
    pub base: R,
    pub var: Var,
    pub order: i64,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, var: Var, order: i64) -> Self {
        Self { base, var, order }
    }

    /// The series `var^1` as an element of this ring, at the ambient order.
    pub fn gen(&self) -> TruncatedSeries<R::Elem> {
        TruncatedSeries::monomial(self.var, 1, self.base.one(), self.order)
    }

    /// An exact constant.
    pub fn constant(&self, c: R::Elem) -> TruncatedSeries<R::Elem> {
        TruncatedSeries::constant(self.var, c, UNBOUNDED)
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncatedSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncatedSeries::zero(self.var, UNBOUNDED)
    }
    fn one(&self) -> Self::Elem {
        TruncatedSeries::constant(self.var, self.base.one(), UNBOUNDED)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b).expect("series ring variable mismatch")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b).expect("series ring variable mismatch")
    }
    fn mul_rat(&self, a: &Self::Elem, r: &num::BigRational) -> Self::Elem {
        a.map(|c| self.base.mul_rat(c, r))
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        let m = a.order().min(b.order());
        equal_to_order(&self.base, a, b, m).unwrap_or(false)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero(&self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, RationalField};

    type S = TruncatedSeries<num::BigRational>;

    fn qring(order: i64) -> SeriesRing<RationalField> {
        SeriesRing::new(RationalField, Var::Q, order)
    }

    #[test]
    fn product_truncates() {
        let r = qring(3);
        // (1+q)(1-q) mod q^3 = 1 - q^2
        let one_plus = r.add(&r.one(), &r.gen());
        let one_minus = r.sub(&r.one(), &r.gen());
        let prod = r.mul(&one_plus, &one_minus);
        let q2 = S::monomial(Var::Q, 2, rat(1, 1), 3);
        let expected = r.sub(&r.one(), &q2);
        assert!(r.eq(&prod, &expected));
        assert_eq!(prod.order(), 3);
    }

    #[test]
    fn laurent_pole_cancels() {
        let f = RationalField;
        let zinv = S::monomial(Var::Z, -1, rat(1, 1), 10);
        let z = S::monomial(Var::Z, 1, rat(1, 1), 10);
        let prod = zinv.mul(&f, &z).unwrap();
        assert_eq!(prod.coeff(&f, 0).unwrap(), rat(1, 1));
        assert!(prod.stored().count() == 1);
        // order: min(-1 + 10, 1 + 10) = 9
        assert_eq!(prod.order(), 9);
    }

    #[test]
    fn binomial_with_formal_symbol() {
        // coefficient ring = q-series over Q, s = the formal symbol q itself
        let inner = qring(20);
        let zr = SeriesRing::new(inner.clone(), Var::Z, 10);
        let s = zr.constant(inner.gen());
        let pole = TruncatedSeries::monomial(Var::Z, -1, inner.one(), 10);
        let f = zr.add(&pole, &s);
        let sq = zr.mul(&f, &f);
        // (1/z + s)^2 = z^-2 + 2s/z + s^2
        let two_s = inner.mul_rat(&inner.gen(), &rat(2, 1));
        let s_sq = inner.mul(&inner.gen(), &inner.gen());
        assert!(inner.eq(&sq.coeff(&zr.base, -2).unwrap(), &inner.one()));
        assert!(inner.eq(&sq.coeff(&zr.base, -1).unwrap(), &two_s));
        assert!(inner.eq(&sq.coeff(&zr.base, 0).unwrap(), &s_sq));
        assert!(inner.is_zero(&sq.coeff(&zr.base, 1).unwrap()));
    }

    #[test]
    fn derivative_rules() {
        let f = RationalField;
        let zinv = S::monomial(Var::Z, -1, rat(1, 1), 10);
        let d = zinv.derivative(&f);
        assert_eq!(d.coeff(&f, -2).unwrap(), rat(-1, 1));
        let c = S::constant(Var::Z, rat(5, 1), 10);
        assert!(c.derivative(&f).is_zero(&f));
        let tz = S::monomial(Var::Z, 1, rat(7, 1), 10);
        let dt = tz.derivative(&f);
        assert_eq!(dt.coeff(&f, 0).unwrap(), rat(7, 1));
    }

    #[test]
    fn leibniz_rule() {
        let f = RationalField;
        let a = S::from_coeffs(Var::Z, -1, vec![rat(1, 1), rat(2, 1), rat(-1, 3)], 6);
        let b = S::from_coeffs(Var::Z, 0, vec![rat(3, 1), rat(0, 1), rat(1, 2)], 6);
        let lhs = a.mul(&f, &b).unwrap().derivative(&f);
        let rhs = a
            .derivative(&f)
            .mul(&f, &b)
            .unwrap()
            .add(&f, &a.mul(&f, &b.derivative(&f)).unwrap())
            .unwrap();
        let m = lhs.order().min(rhs.order());
        assert!(equal_to_order(&f, &lhs, &rhs, m).unwrap());
    }

    #[test]
    fn equality_to_order() {
        let f = RationalField;
        let r = qring(10);
        let base = r.add(&r.one(), &r.gen());
        // difference at exponent M is invisible at order M
        let bump = S::monomial(Var::Q, 5, rat(1, 1), 10);
        let g = r.add(&base, &bump);
        assert!(equal_to_order(&f, &base, &g, 5).unwrap());
        assert!(!equal_to_order(&f, &base, &g, 6).unwrap());
        assert!(equal_to_order(&f, &base, &g, 11).is_err());
        let z = S::monomial(Var::Z, 1, rat(1, 1), 10);
        assert!(equal_to_order(&f, &base, &z, 5).is_err());
    }

    #[test]
    fn var_mismatch_rejected() {
        let f = RationalField;
        let q = S::monomial(Var::Q, 1, rat(1, 1), 10);
        let z = S::monomial(Var::Z, 1, rat(1, 1), 10);
        assert!(q.mul(&f, &z).is_err());
        assert!(q.add(&f, &z).is_err());
    }

    #[test]
    fn json_shape() {
        use crate::cyclotomic::{CyclotomicField, Level};
        let f = CyclotomicField::new(Level::new(5).unwrap());
        let s = TruncatedSeries::from_coeffs(Var::Q, 0, vec![f.one(), f.zeta(2)], 5);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["var"], "q");
        assert_eq!(v["low"], 0);
        assert_eq!(v["order"], 5);
        assert!(v["coeffs"].is_array());
        let back: TruncatedSeries<crate::cyclotomic::CyclotomicNumber> =
            serde_json::from_value(v).unwrap();
        assert!(equal_to_order(&f, &s, &back, 5).unwrap());
    }
}
