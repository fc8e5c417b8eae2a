//! `Ann_{D_n[s]}(F^s)` from the graph embedding.
//!
//! The ideal `⟨t_i − u_i f_i, ∂x_j + Σ_i u_i ∂_j f_i ∂t_i, u_i v_i − 1⟩` is
//! homogeneous for the `Z^r`-grading `deg t_i = −e_i`, `deg ∂t_i = e_i`,
//! `deg u_i = −e_i`, `deg v_i = e_i`. Eliminating `u, v` leaves the ideal
//! generated by the homogeneous elements of the Malgrange ideal. Each
//! basis element is moved to degree 0 by a monomial in `t` or `∂t`, and
//! `t_i^a ∂t_i^a` is rewritten through `t_i ∂t_i = −s_i − 1`.

use super::BsError;
use crate::arith::{int, Mono, MultiPoly};
use crate::groebner::{GbConfig, GroebnerBasis};
use crate::weyl::{act_on_twisted, AlgebraProfile, TermOrder, TwistContext, TwistedElement, WeylElement};
use serde::Serialize;
use std::sync::Arc;

/// One homogeneous basis element and how it was moved to degree 0.
#[derive(Clone, Debug, Serialize)]
pub struct SelectionStep {
    pub element: String,
    pub degree: Vec<i64>,
    pub multiplier: String,
}

#[derive(Clone, Debug)]
pub struct AnnResult {
    pub ctx: Arc<TwistContext>,
    /// Reduced basis of the annihilator in `D_n[s]` (graded reverse lex).
    pub generators: Vec<WeylElement>,
    /// Homogeneous basis of the Malgrange ideal after eliminating `u, v`.
    pub malgrange_basis: Vec<String>,
    pub selection: Vec<SelectionStep>,
}

impl AnnResult {
    pub fn profile(&self) -> &Arc<AlgebraProfile> {
        self.ctx.profile()
    }
}

/// Embeds a polynomial in `x` into the given profile's `x` slots.
pub(crate) fn x_poly(profile: &Arc<AlgebraProfile>, f: &MultiPoly) -> WeylElement {
    let slots: Vec<usize> = (0..profile.n()).map(|j| profile.x(j)).collect();
    WeylElement::from_poly(profile, f, &slots)
}

/// `Z^r`-degree of a monomial: `∂t` and `v` count `+1`, `t` and `u` count `−1`.
fn grading(p: &AlgebraProfile, m: &Mono) -> Vec<i64> {
    let r = p.nt();
    (0..r)
        .map(|i| {
            m.get(p.dt(i)) as i64 - m.get(p.t(i)) as i64 + m.get(p.extra(r + i)) as i64 - m.get(p.extra(i)) as i64
        })
        .collect()
}

/// Rewrites a degree-0 element of `D_{n+r}` (every monomial has equal
/// `t_i` and `∂t_i` exponents) as an element of `D_n[s]`.
fn to_dns(src: &AlgebraProfile, dst: &Arc<AlgebraProfile>, g: &WeylElement) -> WeylElement {
    let n = src.n();
    let r = src.nt();
    let mut acc = WeylElement::zero(dst);
    for (m, c) in g.terms() {
        let mut base = Mono::one(dst.nvars());
        for j in 0..n {
            base.set(dst.x(j), m.get(src.x(j)));
            base.set(dst.dx(j), m.get(src.dx(j)));
        }
        let mut term = WeylElement::monomial(dst, base, c.clone());
        for i in 0..r {
            let a = m.get(src.t(i));
            debug_assert_eq!(a, m.get(src.dt(i)));
            // t^a dt^a = prod_{k<a} (theta - k) with theta = -s - 1
            let s = WeylElement::var(dst, dst.s(i));
            for k in 0..a {
                let factor = &(-&s) - &WeylElement::constant(dst, int(1 + k as i64));
                term = &term * &factor;
            }
        }
        acc = &acc + &term;
    }
    acc
}

pub fn ann_fs(xs: &[String], fs: &[MultiPoly], cfg: &GbConfig) -> Result<AnnResult, BsError> {
    if fs.is_empty() {
        return Err(BsError::Input("F is empty".into()));
    }
    if fs.iter().any(|f| f.is_zero()) {
        return Err(BsError::Input("F contains the zero polynomial".into()));
    }
    let n = xs.len();
    let r = fs.len();
    let ctx = TwistContext::new(xs.to_vec(), fs);
    let dns = ctx.profile().clone();
    let mut extra: Vec<String> = (0..r).map(|i| if r == 1 { "u".into() } else { format!("u{}", i + 1) }).collect();
    extra.extend((0..r).map(|i| if r == 1 { "v".into() } else { format!("v{}", i + 1) }));
    let big = AlgebraProfile::with_extra(xs.to_vec(), r, 0, extra);
    let u = |i: usize| WeylElement::var(&big, big.extra(i));
    let v = |i: usize| WeylElement::var(&big, big.extra(r + i));
    let one = WeylElement::one(&big);

    let mut gens = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        gens.push(&WeylElement::var(&big, big.t(i)) - &(&u(i) * &x_poly(&big, f)));
    }
    for j in 0..n {
        let mut g = WeylElement::var(&big, big.dx(j));
        for (i, f) in fs.iter().enumerate() {
            let df = x_poly(&big, &f.derivative(j));
            g = &g + &(&(&u(i) * &df) * &WeylElement::var(&big, big.dt(i)));
        }
        gens.push(g);
    }
    for i in 0..r {
        gens.push(&(&u(i) * &v(i)) - &one);
    }
    let uv: Vec<usize> = (0..2 * r).map(|i| big.extra(i)).collect();
    let order = TermOrder::elimination(&big, &uv);
    let gb = GroebnerBasis::compute(&big, &order, &gens, cfg)?;

    let plain = AlgebraProfile::new(xs.to_vec(), r, 0);
    let keep: Vec<usize> = (0..big.nvars()).filter(|i| !uv.contains(i)).collect();
    let map: Vec<usize> = (0..big.nvars()).map(|i| keep.iter().position(|&k| k == i).unwrap_or(0)).collect();
    let mut malgrange = Vec::new();
    let mut selection = Vec::new();
    let mut candidates = Vec::new();
    for g in gb.elements() {
        if !g.uses_only(&keep) {
            continue;
        }
        let deg = grading(&big, &g.terms()[0].0);
        debug_assert!(g.terms().iter().all(|(m, _)| grading(&big, m) == deg), "inhomogeneous element {g}");
        let g = g.embed(&plain, &map);
        malgrange.push(g.to_string());
        let mut mult = WeylElement::one(&plain);
        for (i, &d) in deg.iter().enumerate() {
            let var = if d > 0 { plain.t(i) } else { plain.dt(i) };
            mult = &mult * &WeylElement::var(&plain, var).pow(d.unsigned_abs() as u32);
        }
        let moved = &mult * &g;
        selection.push(SelectionStep { element: g.to_string(), degree: deg, multiplier: mult.to_string() });
        candidates.push(to_dns(&plain, &dns, &moved));
    }

    let reduced = GroebnerBasis::compute(&dns, &TermOrder::degrevlex(&dns), &candidates, cfg)?;
    let generators = reduced.elements();
    let fs_gen = TwistedElement::generator(&ctx);
    for g in &generators {
        let out = act_on_twisted(g, &fs_gen)?;
        if !out.is_zero() {
            return Err(BsError::Oracle(format!("annihilator candidate {g} does not kill F^s")));
        }
    }
    Ok(AnnResult { ctx, generators, malgrange_basis: malgrange, selection })
}
