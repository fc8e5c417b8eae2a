//! The D-module pipeline: annihilators of `F^s`, Bernstein-Sato ideals
//! along monoid ideals, localized ideals via colon chains, b-functions,
//! support towers and oracle certification.

mod ann;
mod bfunction;
mod bs;
mod localized;
mod tower;

pub use ann::{ann_fs, AnnResult, SelectionStep};
pub use bfunction::{b_function, b_function_initial, BFunction};
pub use tower::{support_tower, Tower, TowerLevel, TowerMode};
pub use localized::{bs_ideal_localized, ChainConfig};
pub use bs::{bs_ideal, certify, shift_s, BsResult, Certificate, ChainStep, ChainTrace};

use crate::groebner::GroebnerError;
use crate::weyl::WeylError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum BsError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("oracle check failed: {0}")]
    Oracle(String),
}
