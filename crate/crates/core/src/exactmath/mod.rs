//! Exact rational arithmetic, outward-rounded intervals and fraction-free
//! dense linear algebra.

mod interval;
mod matrix;
mod rational;
mod scalar;

pub use interval::{Dyadic, Interval};
pub use matrix::{Entry, Matrix, DEFAULT_DET_CAP};
pub use rational::{format_rational, int, parse_rational, ratio, to_decimal, Rational, Rounding};
pub use scalar::{certified_sign, PrecisionPolicy, Scalar, Sign};
