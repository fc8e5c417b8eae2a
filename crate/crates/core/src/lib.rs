//! Bernstein-Sato ideals of polynomial tuples along monoid ideals.

pub mod arith;
pub mod bsideal;
pub mod frontend;
pub mod groebner;
pub mod monoid;
pub mod support;
pub mod weyl;
