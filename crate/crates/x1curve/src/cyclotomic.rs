//! Exact arithmetic in the cyclotomic field Q(zeta_p), p an odd prime >= 5.
//!
//! Elements are stored on the power basis 1, zeta, ..., zeta^(p-2); the
//! coordinate of zeta^(p-1) is always eliminated through
//! 1 + zeta + ... + zeta^(p-1) = 0, which makes equality a coordinate-wise
//! comparison. Inversion runs the extended Euclidean algorithm against the
//! p-th cyclotomic polynomial, so everything stays in exact rationals.

use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{rat_to_f64, Field, Ring};

/// The level p: an odd prime at least 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Level(u32);

impl Level {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 5 && is_prime(p) {
            Ok(Level(p as u32))
        } else {
            Err(Error::InvalidLevel(p))
        }
    }

    pub fn p(self) -> i64 {
        self.0 as i64
    }

    /// (p-1)/2, the number of reduced s (or t) coordinates.
    pub fn m(self) -> usize {
        (self.0 as usize - 1) / 2
    }

    /// Reduces any integer to a representative in 0..p.
    pub fn reduce(self, a: i64) -> i64 {
        a.rem_euclid(self.p())
    }

    /// Reduces and insists the result is nonzero.
    pub fn nonzero(self, a: i64) -> Result<i64> {
        let r = self.reduce(a);
        if r == 0 {
            Err(Error::ZeroIndex(a))
        } else {
            Ok(r)
        }
    }

    /// Nonzero residues 1..p-1 in order.
    pub fn units(self) -> impl Iterator<Item = i64> {
        1..self.p()
    }

    /// Inverse of k mod p; errors when k is divisible by p.
    pub fn inv_mod(self, k: i64) -> Result<i64> {
        let k = self.nonzero(k).map_err(|_| Error::NotAUnit(k))?;
        let p = self.p();
        // p is prime, so Fermat does the job.
        let mut acc = 1i64;
        let mut base = k % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl TryFrom<u64> for Level {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Level::new(p)
    }
}

impl From<Level> for u64 {
    fn from(l: Level) -> u64 {
        l.0 as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of Q(zeta_p) in canonical power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    level: Level,
    /// Length p-1; coords[i] multiplies zeta^i.
    coords: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(level: Level) -> Self {
        Self {
            level,
            coords: vec![BigRational::zero(); level.p() as usize - 1],
        }
    }

    pub fn from_rat(level: Level, r: BigRational) -> Self {
        let mut x = Self::zero(level);
        x.coords[0] = r;
        x
    }

    /// zeta^k for any integer k, canonicalized.
    pub fn zeta_pow(level: Level, k: i64) -> Self {
        let k = level.reduce(k) as usize;
        let p = level.p() as usize;
        let mut full = vec![BigRational::zero(); p];
        full[k] = BigRational::one();
        Self::from_full(level, full)
    }

    /// Builds from coordinates over 1, zeta, ..., zeta^(p-1) (length p),
    /// eliminating the top coordinate.
    fn from_full(level: Level, mut full: Vec<BigRational>) -> Self {
        let p = level.p() as usize;
        debug_assert_eq!(full.len(), p);
        let top = full.pop().unwrap();
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Self {
            level,
            coords: full,
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when the element lies in Q, i.e. all basis coordinates beyond the
    /// constant one vanish.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::RingMismatch(format!(
                "levels {} and {}",
                self.level.p(),
                other.level.p()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_level(other).expect("mixed levels");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            level: self.level,
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            level: self.level,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_level(other).expect("mixed levels");
        let p = self.level.p() as usize;
        // Convolve mod zeta^p = 1, then canonicalize.
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                full[k] += a * b;
            }
        }
        Self::from_full(self.level, full)
    }

    pub fn mul_rat(&self, r: &BigRational) -> Self {
        Self {
            level: self.level,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Applies the Galois automorphism zeta -> zeta^k; k must be a unit mod p.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let k = self.level.nonzero(k).map_err(|_| Error::NotAUnit(k))?;
        let p = self.level.p() as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = (i * k as usize) % p;
            full[j] += c;
        }
        Ok(Self::from_full(self.level, full))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the p-th cyclotomic polynomial 1 + x + ... + x^(p-1).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.level.p() as usize;
        let phi: Vec<BigRational> = vec![BigRational::one(); p];
        let f = trim(self.coords.clone());

        // Invariants: r0 = u0*f mod phi, r1 = u1*f mod phi.
        let mut r0 = phi;
        let mut r1 = f;
        let mut u0: Vec<BigRational> = vec![];
        let mut u1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = u2;
        }
        // r0 is a nonzero constant c with u0*f = c mod phi.
        debug_assert_eq!(r0.len(), 1, "cyclotomic polynomial is irreducible");
        let c = r0[0].clone();
        let mut coords = vec![BigRational::zero(); p - 1];
        for (i, v) in u0.iter().enumerate() {
            coords[i] = v / &c;
        }
        Ok(Self {
            level: self.level,
            coords,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Numeric value with zeta = exp(2 pi i / p).
    pub fn to_complex(&self) -> Complex64 {
        let p = self.level.p() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / p;
            acc += rat_to_f64(c) * Complex64::new(theta.cos(), theta.sin());
        }
        acc
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})w", c)?,
                _ => write!(f, "({})w^{}", c, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Ring/Field context for Q(zeta_p).
#[derive(Clone, Copy, Debug)]
pub struct CyclotomicField {
    pub level: Level,
}

impl CyclotomicField {
    pub fn new(level: Level) -> Self {
        Self { level }
    }

    pub fn zeta(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.level, k)
    }
}

impl Ring for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::zero(self.level)
    }
    fn one(&self) -> CyclotomicNumber {
        CyclotomicNumber::from_rat(self.level, BigRational::one())
    }
    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a.add(b)
    }
    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        a.neg()
    }
    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a.mul(b)
    }
    fn mul_rat(&self, a: &CyclotomicNumber, r: &BigRational) -> CyclotomicNumber {
        a.mul_rat(r)
    }
    fn eq(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> bool {
        a == b
    }
    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }
}

impl Field for CyclotomicField {
    fn inv(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        a.inv()
    }
}

// --- dense univariate polynomial helpers over Q, used only by inversion ---

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quot.len()).rev() {
        let idx = k + b.len() - 1;
        if rem.len() <= idx || rem[idx].is_zero() {
            continue;
        }
        let q = &rem[idx] / lead;
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[k + j] -= t;
        }
        quot[k] = q;
    }
    (trim(quot), trim(rem))
}

// --- serialization: {"p": int, "coords": [["num","den"], ...]} ---

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("p", &(self.level.p() as u64))?;
        let coords: Vec<[String; 2]> = self
            .coords
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            coords: Vec<[String; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        let level = Level::new(raw.p).map_err(D::Error::custom)?;
        if raw.coords.len() != raw.p as usize - 1 {
            return Err(D::Error::custom("wrong coordinate count"));
        }
        let coords = raw
            .coords
            .iter()
            .map(|[n, den]| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let den: BigInt = den.parse().map_err(D::Error::custom)?;
                if den <= BigInt::zero() {
                    return Err(D::Error::custom("denominator must be positive"));
                }
                Ok(BigRational::new(n, den))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(CyclotomicNumber { level, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn lvl(p: u64) -> Level {
        Level::new(p).unwrap()
    }

    #[test]
    fn level_checks_primality() {
        assert!(Level::new(5).is_ok());
        assert!(Level::new(13).is_ok());
        assert!(Level::new(4).is_err());
        assert!(Level::new(9).is_err());
        assert!(Level::new(3).is_err());
        assert!(Level::new(2).is_err());
    }

    #[test]
    fn zeta_power_reduction() {
        let p5 = lvl(5);
        assert_eq!(
            CyclotomicNumber::zeta_pow(p5, 0),
            CyclotomicNumber::from_rat(p5, rat(1, 1))
        );
        // exponents reduce mod 5
        assert_eq!(
            CyclotomicNumber::zeta_pow(p5, 7),
            CyclotomicNumber::zeta_pow(p5, 2)
        );
        // zeta^4 = -1 - zeta - zeta^2 - zeta^3
        let z4 = CyclotomicNumber::zeta_pow(p5, 4);
        assert_eq!(
            z4.coords(),
            &[rat(-1, 1), rat(-1, 1), rat(-1, 1), rat(-1, 1)]
        );
    }

    #[test]
    fn powers_sum_to_zero() {
        for p in [5u64, 7, 11, 13] {
            let level = lvl(p);
            let mut acc = CyclotomicNumber::zero(level);
            for k in 0..p as i64 {
                acc = acc.add(&CyclotomicNumber::zeta_pow(level, k));
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let p5 = lvl(5);
        let f = CyclotomicField::new(p5);
        let one = f.one();

        assert_eq!(f.inv(&one).unwrap(), one);
        // zeta^-1 = zeta^(p-1)
        let z = f.zeta(1);
        assert_eq!(z.inv().unwrap(), f.zeta(4));
        // (zeta - 1)^-1, checked by multiplying back
        let x = f.sub(&f.zeta(1), &one);
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), one);
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn inv_is_involutive() {
        let f = CyclotomicField::new(lvl(7));
        let x = f
            .add(&f.zeta(1), &f.mul_rat(&f.zeta(3), &rat(2, 3)))
            .add(&CyclotomicNumber::from_rat(lvl(7), rat(-1, 5)));
        let x2 = x.inv().unwrap().inv().unwrap();
        assert_eq!(x, x2);
    }

    #[test]
    fn zeta_pow_times_opposite_is_one() {
        for p in [5i64, 7, 11] {
            let level = lvl(p as u64);
            let f = CyclotomicField::new(level);
            for k in 1..p {
                assert_eq!(f.mul(&f.zeta(k), &f.zeta(p - k)), f.one());
            }
        }
    }

    #[test]
    fn galois_action() {
        let p5 = lvl(5);
        let f = CyclotomicField::new(p5);
        assert_eq!(f.one().galois(3).unwrap(), f.one());
        assert_eq!(f.zeta(1).galois(3).unwrap(), f.zeta(3));
        // group law on a random-ish element
        let x = f.add(&f.zeta(1), &f.mul_rat(&f.zeta(2), &rat(7, 2)));
        let a = x.galois(2).unwrap().galois(3).unwrap();
        let b = x.galois(6).unwrap();
        assert_eq!(a, b);
        assert!(x.galois(5).is_err());
    }

    #[test]
    fn galois_is_ring_hom() {
        let f = CyclotomicField::new(lvl(7));
        let x = f.add(&f.zeta(1), &f.from_rat(&rat(1, 2)));
        let y = f.sub(&f.zeta(5), &f.zeta(2));
        for k in [2i64, 3, 6] {
            let gx = x.galois(k).unwrap();
            let gy = y.galois(k).unwrap();
            assert_eq!(x.add(&y).galois(k).unwrap(), gx.add(&gy));
            assert_eq!(x.mul(&y).galois(k).unwrap(), gx.mul(&gy));
        }
    }

    #[test]
    fn to_complex_matches_trig() {
        let p5 = lvl(5);
        let z = CyclotomicNumber::zeta_pow(p5, 1);
        let c = z.to_complex();
        let expected = Complex64::new(
            (2.0 * std::f64::consts::PI / 5.0).cos(),
            (2.0 * std::f64::consts::PI / 5.0).sin(),
        );
        assert!((c - expected).norm() < 1e-14);

        // zeta + zeta^4 = 2 cos(2 pi / 5)
        let s = z.add(&CyclotomicNumber::zeta_pow(p5, 4));
        let sc = s.to_complex();
        assert!((sc.re - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-14);
        assert!(sc.im.abs() < 1e-14);
    }

    #[test]
    fn json_roundtrip() {
        let f = CyclotomicField::new(lvl(5));
        let x = f.add(&f.zeta(2), &f.from_rat(&rat(-3, 7)));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains("\"p\":5"));
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
