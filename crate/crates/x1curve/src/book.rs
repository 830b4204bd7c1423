//! The guide chapters under `book/src` double as documentation tests: every
//! fenced Rust block below compiles and runs with `cargo test --doc`, so the
//! book cannot drift from the library. mdBook renders the same files, and
//! this module renders them on docs.rs too.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic_arithmetic {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod truncated_series {}

#[doc = include_str!("../../../book/src/eisenstein.md")]
pub mod eisenstein_expansions {}

#[doc = include_str!("../../../book/src/quadrics.md")]
pub mod quadratic_relations {}

#[doc = include_str!("../../../book/src/symmetries.md")]
pub mod symmetries {}

#[doc = include_str!("../../../book/src/cusps.md")]
pub mod cusps_and_smoothness {}

#[doc = include_str!("../../../book/src/flow.md")]
pub mod laurent_solutions {}

#[doc = include_str!("../../../book/src/hilbert.md")]
pub mod graded_counting {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod command_line {}
