//! The extended Weyl algebra `D_{n+r}[s][h]`: variable layouts, term orders,
//! normally ordered elements and the action on `O[1/f, s]·F^s`.
//!
//! Convention: `s_i = -dt_i t_i`, so `t_i dt_i = -s_i - 1`.

mod element;
mod order;
mod profile;
pub(crate) mod sparse;
mod twisted;

pub use element::{right_transporter, weyl_mul, WeylElement};
pub use order::{weight_admissible, OrderKind, TermOrder};
pub use profile::AlgebraProfile;
pub use twisted::{act_central, act_on_twisted, t_shift_action, TwistContext, TwistedElement};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("profile mismatch: {left} vs {right}")]
    ProfileMismatch { left: String, right: String },
    #[error("operator is not in D_n[s]: {0}")]
    NotInDns(String),
    #[error("no right transporter for {0}: division leaves a remainder")]
    NotTransportable(String),
    #[error("expected {expected} components, got {got}")]
    Dimension { expected: usize, got: usize },
}
