//! Left Gröbner bases in the (homogenized) Weyl algebra: Buchberger
//! completion with cofactor tracking, normal forms, elimination, weight
//! bases, central colon ideals and commutative ideals.

mod cache;
mod colon;
mod comm;
mod engine;
mod ideal;

pub use cache::{BasisCache, CacheStats};
pub use colon::{colon_central, ColonResult};
pub use comm::{eliminate_poly, PolyIdeal};
pub use engine::{GbConfig, GbStats};
pub use ideal::{
    buchberger_ideal, eliminate, initial_form, normal_form, weight_gb, GroebnerBasis, LeftIdeal, WeightBasis,
};

use crate::weyl::WeylElement;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum GroebnerError {
    #[error("degree cap exceeded (degree {degree}, order {order}); partial basis of {} elements", partial.len())]
    Capped { degree: u64, order: String, partial: Vec<WeylElement> },
    #[error("time budget exhausted")]
    Timeout,
    #[error("Gröbner basis not computed")]
    NotComputed,
    #[error("cofactors were not tracked")]
    NoCofactors,
    #[error("order {0} is not a well-order here")]
    NotWellOrder(String),
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("empty generator list")]
    Empty,
}
