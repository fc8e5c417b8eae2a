use super::ann::AnnResult;
use super::BsError;
use crate::arith::{Mono, MultiPoly, Rational};
use crate::groebner::{GbConfig, GroebnerBasis, PolyIdeal};
use crate::monoid::MonoidIdeal;
use crate::weyl::{act_central, act_on_twisted, AlgebraProfile, TermOrder, TwistContext, TwistedElement, WeylElement};
use std::sync::Arc;

/// `b(s + w)·f^w·F^s = Σ_j P_j·(f^{v_j}·F^s)` for one generator `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub generator: MultiPoly,
    /// Shift `w` on the left-hand side (`0` for plain B^K).
    pub lhs_shift: Vec<u32>,
    pub terms: Vec<(WeylElement, Vec<u32>)>,
}

/// Chain data of the localized computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub k: u32,
    pub generators: Vec<MultiPoly>,
    pub truncation: u32,
    pub degree_stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTrace {
    pub m: Vec<u32>,
    pub window: u32,
    pub steps: Vec<ChainStep>,
    /// First index of the plateau, when one was reached.
    pub k_star: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct BsResult {
    /// Reduced basis in graded reverse lex on `s`, each generator monic.
    pub generators: Vec<MultiPoly>,
    pub certificates: Vec<Certificate>,
    /// The quotient module is zero: the ideal is the unit ideal.
    pub empty_locus: bool,
    pub chain: Option<ChainTrace>,
    pub flags: Vec<String>,
}

impl BsResult {
    pub fn s_vars(&self) -> Option<&Arc<[String]>> {
        self.generators.first().map(|g| g.vars())
    }
}

pub(crate) fn s_vars(profile: &AlgebraProfile) -> Arc<[String]> {
    profile.s_names().into()
}

/// `f^v = Π f_i^{v_i}` as an operator.
pub(crate) fn f_power(ctx: &TwistContext, v: &[u32]) -> WeylElement {
    let n = ctx.n();
    let prof = ctx.profile();
    let mut acc = MultiPoly::one(ctx.vars().clone());
    for (fi, &e) in ctx.fs().iter().zip(v) {
        acc = &acc * &fi.pow(e);
    }
    let slots: Vec<usize> = (0..n).map(|j| prof.x(j)).chain((0..ctx.r()).map(|i| prof.s(i))).collect();
    WeylElement::from_poly(prof, &acc, &slots)
}

/// Substitutes `s ↦ s + shift` in an element of `D_n[s]`.
pub fn shift_s(g: &WeylElement, shift: &[Rational]) -> WeylElement {
    let prof = g.profile().clone();
    let r = prof.ns();
    assert_eq!(shift.len(), r);
    let svars = s_vars(&prof);
    let mut out = Vec::new();
    for (m, c) in g.terms() {
        let mut rest = m.clone();
        let mut sm = Mono::one(r);
        for i in 0..r {
            sm.set(i, m.get(prof.s(i)));
            rest.set(prof.s(i), 0);
        }
        let poly = MultiPoly::from_terms(svars.clone(), [(sm, c.clone())]).shift(shift);
        for (pm, pc) in poly.terms() {
            let mut full = rest.clone();
            for i in 0..r {
                full.set(prof.s(i), pm.get(i));
            }
            out.push((full, pc.clone()));
        }
    }
    WeylElement::from_terms(&prof, out)
}

/// `s ↦ s + c` on a polynomial in `s`.
pub(crate) fn shift_poly(b: &MultiPoly, c: &[i64]) -> MultiPoly {
    let sh: Vec<Rational> = c.iter().map(|&x| Rational::from_integer(x.into())).collect();
    b.shift(&sh)
}

/// Exact replay of a certificate against the twisted-module action:
/// `b(s + w)·f^w·F^s = Σ_j P_j·f^{v_j}·F^s` with `w` the left-hand shift.
pub fn certify(cert: &Certificate, ctx: &Arc<TwistContext>) -> bool {
    if cert.generator.nvars() != ctx.r() || cert.lhs_shift.len() != ctx.r() {
        return false;
    }
    let w: Vec<i64> = cert.lhs_shift.iter().map(|&x| x as i64).collect();
    let lhs = act_central(&shift_poly(&cert.generator, &w), &TwistedElement::power(ctx, &cert.lhs_shift));
    let mut rhs = TwistedElement::zero(ctx);
    for (p, v) in &cert.terms {
        match act_on_twisted(p, &TwistedElement::power(ctx, v)) {
            Ok(t) => rhs = rhs.add(&t),
            Err(_) => return false,
        }
    }
    lhs == rhs
}

/// Reduces each multiplier modulo the annihilator of `f^{v_j}·F^s`.
pub(crate) fn canonical_terms(
    ann: &AnnResult,
    raw: Vec<(WeylElement, Vec<u32>)>,
    cfg: &GbConfig,
) -> Result<Vec<(WeylElement, Vec<u32>)>, BsError> {
    let prof = ann.profile().clone();
    let mut out = Vec::new();
    for (p, v) in raw {
        if p.is_zero() {
            continue;
        }
        let sh: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let shifted: Vec<WeylElement> = ann.generators.iter().map(|g| shift_s(g, &sh)).collect();
        let gb = GroebnerBasis::compute(&prof, &TermOrder::degrevlex(&prof), &shifted, cfg)?;
        let q = gb.normal_form(&p);
        if !q.is_zero() {
            out.push((q, v));
        }
    }
    Ok(out)
}

/// `Ann(F^s) + Σ_j D_n[s]·f^{v_j}` with the `f^{v_j}` tracked.
pub(crate) fn presentation(ann: &AnnResult, k: &MonoidIdeal) -> (Vec<WeylElement>, Vec<bool>) {
    let mut gens = ann.generators.clone();
    let mut track = vec![false; gens.len()];
    for v in k.generators() {
        gens.push(f_power(&ann.ctx, v));
        track.push(true);
    }
    (gens, track)
}

pub fn bs_ideal(ann: &AnnResult, k: &MonoidIdeal, cfg: &GbConfig) -> Result<BsResult, BsError> {
    let prof = ann.profile().clone();
    if k.rank() != ann.ctx.r() {
        return Err(BsError::Input(format!("K has rank {} but F has {} entries", k.rank(), ann.ctx.r())));
    }
    let (gens, track) = presentation(ann, k);
    let xd: Vec<usize> = prof.x_slots();
    let order = TermOrder::elimination(&prof, &xd);
    let mut tcfg = cfg.clone();
    tcfg.track = track;
    let gb = GroebnerBasis::compute(&prof, &order, &gens, &tcfg)?;
    let cofs = gb.cofactors().expect("tracked");
    let svars = s_vars(&prof);
    let s_slots = prof.s_slots();
    let mut generators = Vec::new();
    let mut certificates = Vec::new();
    for (g, row) in gb.elements().iter().zip(cofs) {
        if !g.uses_only(&s_slots) {
            continue;
        }
        let b = g.to_poly(svars.clone(), &s_slots).expect("s-only element");
        let raw: Vec<(WeylElement, Vec<u32>)> = row.into_iter().zip(k.generators().iter().cloned()).collect();
        let terms = canonical_terms(ann, raw, cfg)?;
        let cert = Certificate { generator: b.clone(), lhs_shift: vec![0; k.rank()], terms };
        if !certify(&cert, &ann.ctx) {
            return Err(BsError::Oracle(format!("certificate for {b} fails")));
        }
        generators.push(b);
        certificates.push(cert);
    }
    let check = PolyIdeal::new(&svars, &generators)?;
    debug_assert_eq!(check.basis(), generators);
    let empty_locus = check.is_unit();
    let mut flags = Vec::new();
    if empty_locus {
        flags.push("empty-locus".to_string());
    }
    if generators.is_empty() {
        flags.push("zero-ideal".to_string());
    }
    Ok(BsResult { generators, certificates, empty_locus, chain: None, flags })
}
