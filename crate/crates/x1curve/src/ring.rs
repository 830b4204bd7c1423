//! Coefficient rings.
//!
//! Everything downstream (series, polynomials, the flow solver) is generic
//! over an exact commutative Q-algebra. Rings are passed around as context
//! objects because some of them carry data that a bare element type cannot
//! supply: the cyclotomic field needs its level to build a zero, a truncated
//! series ring needs its truncation order.
//!
//! Concrete instances:
//! - [`RationalField`]: arbitrary-precision rationals,
//! - [`crate::cyclotomic::CyclotomicField`]: Q(zeta_p),
//! - [`crate::series::SeriesRing`]: truncated series over any of the above,
//! - [`ComplexField64`]: double-precision complex numbers for numeric oracles.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// A commutative Q-algebra with exact equality, presented as a context object.
///
/// `mul_rat` / `div_rat` give the Q-algebra structure; division is only ever
/// requested for nonzero rationals, so every instance stays exact.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul_rat(&self, a: &Self::Elem, r: &BigRational) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    fn div_rat(&self, a: &Self::Elem, r: &BigRational) -> Result<Self::Elem> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_rat(a, &r.recip()))
    }

    fn from_rat(&self, r: &BigRational) -> Self::Elem {
        self.mul_rat(&self.one(), r)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rat(&BigRational::from(BigInt::from(n)))
    }

    /// Sums a sequence of elements; empty sums are zero.
    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, iter: I) -> Self::Elem {
        iter.into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, &x))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; errors on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Exact matrix rank. The default runs Gaussian elimination over the
    /// field; the rationals override it with fraction-free elimination over
    /// the integers.
    fn rank(&self, rows: &[Vec<Self::Elem>]) -> usize {
        crate::linalg::rank_field(self, rows)
    }
}

/// The rational numbers, backed by `num::BigRational`.
#[derive(Clone, Debug, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn mul_rat(&self, a: &BigRational, r: &BigRational) -> BigRational {
        a * r
    }
    fn eq(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        Zero::is_zero(a)
    }
}

impl Field for RationalField {
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if Zero::is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn rank(&self, rows: &[Vec<BigRational>]) -> usize {
        crate::linalg::rank_rational(rows)
    }
}

/// Double-precision complex numbers.
///
/// This is the one inexact instance; `eq`/`is_zero` compare up to `eps` so
/// that on-variety checks tolerate float noise. `eps = 0.0` turns equality
/// back into the bitwise one.
#[derive(Clone, Debug)]
pub struct ComplexField64 {
    pub eps: f64,
}

impl ComplexField64 {
    pub fn new(eps: f64) -> Self {
        Self { eps }
    }
}

impl Default for ComplexField64 {
    fn default() -> Self {
        Self { eps: 1e-9 }
    }
}

impl Ring for ComplexField64 {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn mul_rat(&self, a: &Complex64, r: &BigRational) -> Complex64 {
        a * rat_to_f64(r)
    }
    fn eq(&self, a: &Complex64, b: &Complex64) -> bool {
        (a - b).norm() <= self.eps
    }
}

impl Field for ComplexField64 {
    fn inv(&self, a: &Complex64) -> Result<Complex64> {
        if a.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a.inv())
    }
}

/// Shorthand for small rationals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Rounds a big rational to the nearest f64.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
