//! Classical b-function, computed twice: as `B^{⟨1⟩}` of a single
//! polynomial, and independently from the initial ideal of the Malgrange
//! ideal under the weight `w(t) = −1, w(∂t) = 1`.

use super::ann::{ann_fs, x_poly};
use super::bs::{bs_ideal, BsResult};
use super::BsError;
use crate::arith::{linalg, Mono, MultiPoly, Rational};
use crate::groebner::{weight_gb, GbConfig, GroebnerBasis};
use crate::monoid::minimal_generators;
use crate::weyl::{AlgebraProfile, TermOrder, WeylElement};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct BFunction {
    /// Monic univariate polynomial in `s`.
    pub b: MultiPoly,
    pub bs: BsResult,
}

pub fn b_function(xs: &[String], f: &MultiPoly, cfg: &GbConfig) -> Result<BFunction, BsError> {
    if f.is_zero() || f.is_constant() {
        return Err(BsError::Input("b-function needs a nonconstant polynomial".into()));
    }
    let ann = ann_fs(xs, std::slice::from_ref(f), cfg)?;
    let k = minimal_generators(1, &[vec![1]]).expect("valid ideal");
    let bs = bs_ideal(&ann, &k, cfg)?;
    if bs.generators.len() != 1 {
        return Err(BsError::Oracle(format!("expected a principal ideal, got {} generators", bs.generators.len())));
    }
    let b = bs.generators[0].monic();
    let second = b_function_initial(xs, f, cfg)?;
    if second != b {
        return Err(BsError::Oracle(format!("b-function routes disagree: {b} vs {second}")));
    }
    Ok(BFunction { b, bs })
}

/// `b(s) = b̃(−s−1)` where `b̃(θ)` generates `in_w(I_f) ∩ Q[t∂t]`.
pub fn b_function_initial(xs: &[String], f: &MultiPoly, cfg: &GbConfig) -> Result<MultiPoly, BsError> {
    let n = xs.len();
    let prof = AlgebraProfile::new(xs.to_vec(), 1, 0);
    let t = WeylElement::var(&prof, prof.t(0));
    let dt = WeylElement::var(&prof, prof.dt(0));
    let mut gens = vec![&t - &x_poly(&prof, f)];
    for j in 0..n {
        let df = x_poly(&prof, &f.derivative(j));
        gens.push(&WeylElement::var(&prof, prof.dx(j)) + &(&df * &dt));
    }
    let mut w = vec![0i64; prof.nvars()];
    w[prof.t(0)] = -1;
    w[prof.dt(0)] = 1;
    let wb = weight_gb(&gens, &w, cfg)?;
    let initial = wb.initial_forms();
    let gb = GroebnerBasis::compute(&prof, &TermOrder::degrevlex(&prof), &initial, cfg)?;
    let theta = &t * &dt;
    let max_deg = cfg.degree_cap.min(64) as usize;
    let mut powers: Vec<WeylElement> = vec![gb.normal_form(&WeylElement::one(&prof))];
    let mut cur = WeylElement::one(&prof);
    for d in 1..=max_deg {
        cur = &cur * &theta;
        powers.push(gb.normal_form(&cur));
        if let Some(coeffs) = dependency(&powers) {
            let _ = d;
            return Ok(theta_to_s(&coeffs));
        }
    }
    Err(BsError::Oracle("no dependency among powers of t*dt".into()))
}

/// Monic `c` with `Σ c_k v_k = 0` using all vectors, if the last one is
/// dependent on the previous ones.
fn dependency(vs: &[WeylElement]) -> Option<Vec<Rational>> {
    let mut monos: Vec<Mono> = vs.iter().flat_map(|v| v.terms().iter().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            vs.iter()
                .map(|v| v.terms().iter().find(|(x, _)| x == m).map_or_else(Rational::zero, |(_, c)| c.clone()))
                .collect()
        })
        .collect();
    let ker = linalg::kernel(&rows, vs.len());
    let last = vs.len() - 1;
    let v = ker.into_iter().find(|v| !v[last].is_zero())?;
    let lead = v[last].clone();
    Some(v.into_iter().map(|c| c / &lead).collect())
}

/// `Σ c_k θ^k` with `θ = −s − 1`, as a monic polynomial in `s`.
fn theta_to_s(coeffs: &[Rational]) -> MultiPoly {
    let vars: Arc<[String]> = vec!["s".to_string()].into();
    let theta = &(-&MultiPoly::var(vars.clone(), 0)) - &MultiPoly::one(vars.clone());
    let mut acc = MultiPoly::zero(vars.clone());
    let mut pw = MultiPoly::one(vars);
    for c in coeffs {
        acc = &acc + &pw.scale(c);
        pw = &pw * &theta;
    }
    let lead = acc.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
    acc.scale(&lead.recip())
}
