//! Numeric Jacobi theta oracle.
//!
//! theta(z, tau) = q^(1/8) (2 sin pi z) prod_{l>=1} (1-q^l)(1-q^l e^{2 pi i z})(1-q^l e^{-2 pi i z})
//!
//! with q = e^{2 pi i tau}. The product is truncated at `product_terms`
//! factors; the truncation error shrinks geometrically since |q| < 1. The
//! branch of q^(1/8) is fixed by exp(2 pi i tau / 8); it cancels in every
//! quantity this module is consulted for (log-derivatives and quotients).

use num::complex::Complex64;

use crate::cyclotomic::Level;
use crate::eisenstein::{eis_s, eval_at_tau};
use crate::error::Result;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Where and how precisely to evaluate the theta product.
#[derive(Clone, Copy, Debug)]
pub struct NumericContext {
    /// Point on the upper half plane.
    pub tau: Complex64,
    /// Number of factors kept in each infinite product.
    pub product_terms: usize,
}

impl NumericContext {
    pub fn new(tau: Complex64) -> Self {
        assert!(tau.im > 0.0, "tau must lie in the upper half plane");
        Self {
            tau,
            product_terms: 64,
        }
    }

    pub fn q(&self) -> Complex64 {
        (Complex64::new(0.0, TWO_PI) * self.tau).exp()
    }
}

/// Truncated triple product for theta(z, tau).
pub fn theta_eval(ctx: &NumericContext, z: Complex64) -> Complex64 {
    let q = ctx.q();
    let e_plus = (Complex64::new(0.0, TWO_PI) * z).exp();
    let e_minus = (Complex64::new(0.0, -TWO_PI) * z).exp();
    let mut acc = (Complex64::new(0.0, TWO_PI) * ctx.tau / 8.0).exp()
        * 2.0
        * (std::f64::consts::PI * z).sin();
    let mut ql = Complex64::new(1.0, 0.0);
    for _ in 0..ctx.product_terms {
        ql *= q;
        acc *= (1.0 - ql) * (1.0 - ql * e_plus) * (1.0 - ql * e_minus);
    }
    acc
}

/// theta_z(0, tau) = 2 pi q^(1/8) prod (1-q^l)^3, from differentiating the
/// sine factor of the product at z = 0.
pub fn theta_z_at_zero(ctx: &NumericContext) -> Complex64 {
    let q = ctx.q();
    let mut acc = (Complex64::new(0.0, TWO_PI) * ctx.tau / 8.0).exp() * TWO_PI;
    let mut ql = Complex64::new(1.0, 0.0);
    for _ in 0..ctx.product_terms {
        ql *= q;
        let f = 1.0 - ql;
        acc *= f * f * f;
    }
    acc
}

/// d/dz log theta at `z` by a central finite difference with one Richardson
/// step. The step h = 1e-5 balances truncation against double-precision
/// roundoff.
pub fn theta_log_derivative(ctx: &NumericContext, z: Complex64) -> Complex64 {
    let h = 1e-5;
    let diff = |h: f64| {
        let hi = theta_eval(ctx, z + Complex64::new(h, 0.0)).ln();
        let lo = theta_eval(ctx, z - Complex64::new(h, 0.0)).ln();
        (hi - lo) / (2.0 * h)
    };
    let d1 = diff(h);
    let d2 = diff(h / 2.0);
    (4.0 * d2 - d1) / 3.0
}

/// |q-sum of s_a at q(tau)  -  (2 pi i)^(-1) d/dz log theta(a/p, tau)|.
///
/// The left side is the exact expansion truncated at order `n` and evaluated
/// numerically; the right side never sees the expansion, so agreement checks
/// the series against its defining log-derivative.
pub fn s_numeric_crosscheck(level: Level, ctx: &NumericContext, a: i64, n: i64) -> Result<f64> {
    let a = level.nonzero(a)?;
    let series_value = eval_at_tau(&eis_s(level, a, n)?.series, ctx.tau);
    let z = Complex64::new(a as f64 / level.p() as f64, 0.0);
    let log_deriv = theta_log_derivative(ctx, z) / Complex64::new(0.0, TWO_PI);
    Ok((series_value - log_deriv).norm())
}

/// The elliptic quotient theta(x - v) theta_z(0) / (theta(-v) theta(x)) with
/// x = a/p; simple pole of residue -1 at v = 0.
pub fn elliptic_quotient(ctx: &NumericContext, x: f64, v: Complex64) -> Complex64 {
    let x = Complex64::new(x, 0.0);
    theta_eval(ctx, x - v) * theta_z_at_zero(ctx) / (theta_eval(ctx, -v) * theta_eval(ctx, x))
}
