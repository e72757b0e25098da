//! Exact computer algebra for linear free divisors.
//!
//! The crate is organized bottom-up: [`rat`] and [`poly`] give exact
//! polynomial arithmetic, [`linalg`] handles rational matrices, and the
//! remaining modules build vector fields, Lie algebra cohomology, quiver
//! and minor-family discriminants, and Euler-homogeneity checks on top.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod eulerhom;
pub mod liecoh;
pub mod linalg;
pub mod logder;
pub mod minorfam;
pub mod par;
pub mod poly;
pub mod quiverrep;
pub mod rat;

pub use error::{Error, Result};
pub use par::Exec;
pub use poly::{MPoly, PolyMatrix, Ring};
pub use rat::Rat;

/// Seed used when none is given, so repeated runs agree.
pub const DEFAULT_SEED: u64 = 1729;

/// Random lines or points tried before a sampled test gives up.
pub const DEFAULT_TRIALS: usize = 20;
