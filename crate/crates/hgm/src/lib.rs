//! Rank-2 hypergeometric motives: Euler factors via the p-adic Gamma
//! function, exact finite-field oracles, Hodge data and congruences.
//!
//! The crate is organised bottom-up:
//!
//! - [`hgdata`]: parameter parsing and combinatorial invariants
//! - [`cyclotomic`]: exact arithmetic in `Z[zeta_N]`
//! - [`ffield`]: tabulated finite fields, characters and character sums
//! - [`padic`]: fixed-precision p-adic numbers, Morita's Gamma, Gross–Koblitz
//! - [`recognize`]: rational and real-quadratic reconstruction
//! - [`engine`]: hypergeometric sums, Frobenius data, Jacobi motives and the
//!   exact-vs-p-adic cross checks

pub mod arith;
pub mod cyclotomic;
pub mod engine;
pub mod error;
pub mod ffield;
pub mod hgdata;
pub mod padic;
pub mod recognize;

pub use error::{Error, Result};
pub use hgdata::{HgData, Q};
