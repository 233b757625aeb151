//! Exact enumeration and certification of loadouts for linear-program game
//! designs.
//!
//! A design is a pair `(A, c)` of a nonnegative `m x n` constraint matrix and
//! a nonnegative cost vector. Players solve `max { c^T x | Ax <= b, x >= 0 }`
//! for varying resource vectors `b`; a *loadout* is the support of a unique
//! optimum. This crate builds the known designs, enumerates their loadouts
//! through the regular subdivision `Δ_c(A)` and cross-checks every result with
//! an exact simplex oracle. The cyclic-polytope combinatorics that bound the
//! loadout counts live in [`cyclic`] and [`bounds`].
//!
//! Everything here is exact: rationals are arbitrary precision and the only
//! non-rational data (square roots in one construction) is carried in
//! outward-rounded intervals whose signs are certified or reported as
//! indeterminate, never guessed.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod cells;
pub mod cyclic;
pub mod designs;
pub mod error;
pub mod exactmath;
pub mod lpsolver;

pub use error::{Error, Result};
pub use exactmath::{Interval, Matrix, Rational, Scalar, Sign};

/// 1-indexed subset of `[n]`, sorted ascending.
pub type Subset = alloc::vec::Vec<usize>;
