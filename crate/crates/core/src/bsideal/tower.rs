//! Finite levels of the support tower and their Exp-images.

use super::ann::AnnResult;
use super::bs::BsResult;
use super::localized::{bs_ideal_localized, ChainConfig};
use super::BsError;
use crate::groebner::GbConfig;
use crate::monoid::{power, scaled, MonoidIdeal};
use crate::support::{decompose_locus, exp_locus, LinearLocus, TorsionCoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerMode {
    /// `⟨j·v_1, …, j·v_p⟩`.
    Scaled,
    /// `K^j`.
    Power,
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub j: u32,
    pub ideal: MonoidIdeal,
    pub result: BsResult,
    /// `None` when some generator does not split.
    pub locus: Option<LinearLocus>,
    pub exp_components: Vec<TorsionCoset>,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub mode: TowerMode,
    pub levels: Vec<TowerLevel>,
    /// Every level has a split locus and all Exp-images coincide.
    pub exp_constant: bool,
}

pub fn support_tower(
    ann: &AnnResult,
    k: &MonoidIdeal,
    m: &[u32],
    jmax: u32,
    mode: TowerMode,
    chain: &ChainConfig,
    cfg: &GbConfig,
) -> Result<Tower, BsError> {
    if jmax == 0 {
        return Err(BsError::Input("jmax must be at least 1".into()));
    }
    let r = ann.ctx.r();
    let mut levels = Vec::new();
    for j in 1..=jmax {
        let ideal = match mode {
            TowerMode::Scaled => scaled(k, j),
            TowerMode::Power => power(k, j),
        };
        let result = bs_ideal_localized(ann, &ideal, m, chain, cfg)?;
        let locus = decompose_locus(r, &result.generators).ok();
        let exp_components = locus.as_ref().map(exp_locus).unwrap_or_default();
        levels.push(TowerLevel { j, ideal, result, locus, exp_components });
    }
    let exp_constant = levels.iter().all(|l| l.locus.is_some())
        && levels.windows(2).all(|w| w[0].exp_components == w[1].exp_components);
    Ok(Tower { mode, levels, exp_constant })
}
