//! Commutative polynomial ideals, computed with the same engine on a
//! profile without derivations.

use super::engine::GbConfig;
use super::ideal::GroebnerBasis;
use super::GroebnerError;
use crate::arith::MultiPoly;
use crate::weyl::{AlgebraProfile, TermOrder, WeylElement};
use std::sync::Arc;

/// Reduced Gröbner basis of a commutative ideal, in graded reverse lex.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    vars: Arc<[String]>,
    gb: GroebnerBasis,
}

fn profile_for(vars: &Arc<[String]>) -> Arc<AlgebraProfile> {
    AlgebraProfile::commutative(vars.to_vec())
}

fn to_elem(profile: &Arc<AlgebraProfile>, p: &MultiPoly) -> WeylElement {
    WeylElement::from_terms(profile, p.terms().iter().cloned())
}

impl PolyIdeal {
    pub fn new(vars: &Arc<[String]>, gens: &[MultiPoly]) -> Result<Self, GroebnerError> {
        Self::with_order(vars, gens, None, &GbConfig::with_cap(u64::MAX))
    }

    /// `eliminate`: slots forming the first block of an elimination order.
    pub fn with_order(
        vars: &Arc<[String]>,
        gens: &[MultiPoly],
        eliminate: Option<&[usize]>,
        cfg: &GbConfig,
    ) -> Result<Self, GroebnerError> {
        let prof = profile_for(vars);
        let order = match eliminate {
            Some(e) => TermOrder::elimination(&prof, e),
            None => TermOrder::degrevlex(&prof),
        };
        let els: Vec<WeylElement> = gens.iter().map(|g| to_elem(&prof, g)).collect();
        let gb = GroebnerBasis::compute(&prof, &order, &els, cfg)?;
        Ok(PolyIdeal { vars: vars.clone(), gb })
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    /// Basis polynomials, ascending by leading monomial.
    pub fn basis(&self) -> Vec<MultiPoly> {
        self.gb
            .elements()
            .into_iter()
            .map(|g| MultiPoly::from_terms(self.vars.clone(), g.terms().iter().cloned()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }

    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let prof = self.gb.profile().clone();
        let r = self.gb.normal_form(&to_elem(&prof, p));
        MultiPoly::from_terms(self.vars.clone(), r.terms().iter().cloned())
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &PolyIdeal) -> bool {
        other.basis().iter().all(|g| self.contains(g))
    }

    /// Equality of ideals: reduced bases under the same order are unique.
    pub fn same_ideal(&self, other: &PolyIdeal) -> bool {
        self.basis() == other.basis()
    }

    /// Elements of the basis using only the given variables.
    pub fn restricted_to(&self, keep: &[usize]) -> Vec<MultiPoly> {
        self.basis()
            .into_iter()
            .filter(|p| p.support().iter().all(|i| keep.contains(i)))
            .collect()
    }
}

/// `I ∩ Q[keep]` for a commutative ideal.
pub fn eliminate_poly(vars: &Arc<[String]>, gens: &[MultiPoly], keep: &[usize]) -> Result<Vec<MultiPoly>, GroebnerError> {
    let drop: Vec<usize> = (0..vars.len()).filter(|i| !keep.contains(i)).collect();
    let ideal = PolyIdeal::with_order(vars, gens, Some(&drop), &GbConfig::with_cap(u64::MAX))?;
    let kept = ideal.restricted_to(keep);
    Ok(PolyIdeal::new(vars, &kept)?.basis())
}
