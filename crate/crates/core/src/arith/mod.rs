//! Exact arithmetic: rationals, sparse commutative polynomials over Q,
//! integer matrices with Smith/Hermite normal forms, and small dense
//! linear algebra over Q.

mod intmat;
pub mod linalg;
mod mono;
mod poly;
mod rational;
mod roots;

pub use intmat::{hermite_normal_form, invariant_factors, smith_normal_form, IntMatrix};
pub use mono::Mono;
pub use poly::{var_names, MultiPoly};
pub(crate) use poly::{mono_factors, write_coeff_term};
pub use rational::{big, denom_lcm, frac_mod1, int, is_integer, numer_gcd, parse_rational, rat, Rational};
pub use roots::rational_roots;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("variable profiles differ: {left:?} vs {right:?}")]
    ProfileMismatch { left: Vec<String>, right: Vec<String> },
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("expected a univariate polynomial, got {0}")]
    NotUnivariate(String),
}
