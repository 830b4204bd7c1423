//! Exact equations of the modular curve X1(p) from weight-one Eisenstein
//! series, with machine verification of every finite claim about them.
//!
//! The crate builds the q-expansions s_a (weight one) and t_a (weight two),
//! the quadratic relations they satisfy, the diamond and Fricke symmetries,
//! the cusp points, the associated system of ordinary differential equations
//! and its Laurent-series solutions, and the Hilbert function of the graded
//! ring cut out by the induced relations in P^(p-1). All of it runs in exact
//! arithmetic over Q(zeta_p); double-precision theta functions serve as an
//! independent numeric oracle.
//!
//! See the `book/` guide for a walk-through, or start with
//! [`eisenstein::eis_s`] and [`quadrics::canonical_triples`].

pub mod actions;
pub mod book;
pub mod cusps;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod export;
pub mod hilbert;
pub mod linalg;
pub mod ode;
pub mod poly;
pub mod quadrics;
pub mod report;
pub mod ring;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
