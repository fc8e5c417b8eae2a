//! `B^{K_m}` from the ascending chain
//! `J_k = { b : b(s + k·m) ∈ (I : f^{k·m}) ∩ Q[s] }`, where
//! `I = Ann(F^s) + Σ_j D[s]·f^{v_j}`. The chain is read until it repeats
//! for a full window or reaches the unit ideal.

use super::ann::AnnResult;
use super::bs::{bs_ideal, canonical_terms, certify, f_power, presentation, shift_poly, s_vars, BsResult, Certificate, ChainStep, ChainTrace};
use super::BsError;
use crate::arith::MultiPoly;
use crate::groebner::{colon_central, GbConfig, GroebnerBasis, PolyIdeal};
use crate::monoid::MonoidIdeal;
use crate::weyl::{TermOrder, WeylElement};

#[derive(Clone, Debug)]
pub struct ChainConfig {
    /// Consecutive equal steps required after the plateau start.
    pub window: u32,
    /// Largest `k` tried.
    pub kmax: u32,
    /// Truncation degree bound for each colon.
    pub colon_degree: u32,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig { window: 3, kmax: 12, colon_degree: 8 }
    }
}

pub fn bs_ideal_localized(
    ann: &AnnResult,
    k: &MonoidIdeal,
    m: &[u32],
    chain: &ChainConfig,
    cfg: &GbConfig,
) -> Result<BsResult, BsError> {
    let r = ann.ctx.r();
    if m.len() != r {
        return Err(BsError::Input(format!("m has length {} but F has {} entries", m.len(), r)));
    }
    if m.iter().all(|&x| x == 0) {
        return bs_ideal(ann, k, cfg);
    }
    if k.rank() != r {
        return Err(BsError::Input(format!("K has rank {} but F has {} entries", k.rank(), r)));
    }
    let prof = ann.profile().clone();
    let svars = s_vars(&prof);
    let (gens, track) = presentation(ann, k);
    let mut tcfg = cfg.clone();
    tcfg.track = track;
    let gb = GroebnerBasis::compute(&prof, &TermOrder::degrevlex(&prof), &gens, &tcfg)?;

    let mut steps: Vec<ChainStep> = Vec::new();
    let mut ideals: Vec<PolyIdeal> = Vec::new();
    let mut k_star = None;
    let mut flags = Vec::new();
    for step in 0..=chain.kmax {
        let km: Vec<u32> = m.iter().map(|&x| x * step).collect();
        let h = f_power(&ann.ctx, &km);
        let col = colon_central(&gb, &h, 1, chain.colon_degree, cfg.deadline)?;
        let back: Vec<i64> = km.iter().map(|&x| -(x as i64)).collect();
        let shifted: Vec<MultiPoly> = col.generators.iter().map(|g| shift_poly(g, &back)).collect();
        let ideal = PolyIdeal::new(&svars, &shifted)?;
        if !col.stabilized {
            flags.push(format!("colon-truncated-at-k={step}"));
        }
        if let Some(prev) = ideals.last() {
            if !ideal.contains_ideal(prev) {
                return Err(BsError::Oracle(format!("chain is not ascending at k = {step}")));
            }
        }
        steps.push(ChainStep {
            k: step,
            generators: ideal.basis(),
            truncation: col.truncation,
            degree_stabilized: col.stabilized,
        });
        let unit = ideal.is_unit();
        ideals.push(ideal);
        if unit {
            k_star = Some(step);
            break;
        }
        let len = ideals.len();
        let w = chain.window as usize;
        if len > w && (len - w..len).all(|i| ideals[i].same_ideal(&ideals[len - w - 1])) {
            k_star = Some((len - w - 1) as u32);
            break;
        }
    }
    let Some(k_star) = k_star else {
        flags.push("no-stabilization".into());
        flags.push("heuristic-stabilization".into());
        let last = steps.last().map(|s| s.generators.clone()).unwrap_or_default();
        let trace = ChainTrace { m: m.to_vec(), window: chain.window, steps, k_star: None };
        return Ok(BsResult { generators: last, certificates: Vec::new(), empty_locus: false, chain: Some(trace), flags });
    };
    flags.push("heuristic-stabilization".into());
    let ideal = &ideals[k_star as usize];
    let generators = ideal.basis();
    let shift: Vec<u32> = m.iter().map(|&x| x * k_star).collect();
    let w: Vec<i64> = shift.iter().map(|&x| x as i64).collect();
    let fk = f_power(&ann.ctx, &shift);
    let mut certificates = Vec::new();
    for b in &generators {
        let c = WeylElement::from_poly(&prof, &shift_poly(b, &w), &prof.s_slots());
        let (rem, cofs) = gb.reduce_tracked(&(&c * &fk))?;
        if !rem.is_zero() {
            return Err(BsError::Oracle(format!("{b} does not reduce to zero at k = {k_star}")));
        }
        let raw = cofs.into_iter().zip(k.generators().iter().cloned()).collect();
        let terms = canonical_terms(ann, raw, cfg)?;
        let cert = Certificate { generator: b.clone(), lhs_shift: shift.clone(), terms };
        if !certify(&cert, &ann.ctx) {
            return Err(BsError::Oracle(format!("certificate for {b} fails")));
        }
        certificates.push(cert);
    }
    let empty_locus = ideal.is_unit();
    if empty_locus {
        flags.push("empty-locus".into());
    }
    let support: Vec<usize> = (0..r).filter(|&i| m[i] > 0).collect();
    if generators.iter().any(|g| support.iter().any(|&i| g.terms().iter().any(|(mo, _)| mo.get(i) > 0))) {
        flags.push("depends-on-inverted-s".into());
    }
    let trace = ChainTrace { m: m.to_vec(), window: chain.window, steps, k_star: Some(k_star) };
    Ok(BsResult { generators, certificates, empty_locus, chain: Some(trace), flags })
}
