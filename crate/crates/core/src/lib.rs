//! Exact character tables and Galois orbits of finite groups, and a decision
//! procedure for whether equal-degree non-linear characters are Galois conjugate.

pub mod arith;
pub mod catalog;
pub mod chartab;
pub mod classifier;
pub mod cyclotomic;
pub mod error;
pub mod galois;
pub mod group;
pub mod pipeline;
pub mod structure;

pub use cyclotomic::{field_index, Coeff, Cyclotomic};
pub use error::{Error, Result};

/// Arbitrary-precision rational coefficient.
pub type Rat = num_rational::BigRational;
/// Exact cyclotomic number over arbitrary-precision rationals.
pub type Cyc = Cyclotomic<Rat>;
/// Cyclotomic number over machine-word rationals; overflows panic.
pub type Cyc64 = Cyclotomic<num_rational::Rational64>;
