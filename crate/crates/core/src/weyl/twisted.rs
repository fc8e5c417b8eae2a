//! The twisted module `O[1/f, s]·F^s` and the action of `D_n[s]` on it.
//! This is the oracle every Bernstein-Sato certificate is replayed against.

use super::element::WeylElement;
use super::profile::AlgebraProfile;
use super::WeylError;
use crate::arith::{Mono, MultiPoly, Rational};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// The tuple `F` with the data the action needs, all living in the ring
/// `Q[x_1..x_n, s_1..s_r]`.
#[derive(PartialEq, Eq)]
pub struct TwistContext {
    profile: Arc<AlgebraProfile>,
    vars: Arc<[String]>,
    fs: Vec<MultiPoly>,
    f: MultiPoly,
    /// `L_j = sum_i s_i * d_j f_i * prod_{k != i} f_k`
    log_terms: Vec<MultiPoly>,
    f_derivs: Vec<MultiPoly>,
}

impl TwistContext {
    /// `fs` are polynomials in the `x` names of `xs`.
    pub fn new(xs: Vec<String>, fs: &[MultiPoly]) -> Arc<Self> {
        let r = fs.len();
        let profile = AlgebraProfile::dns(xs.clone(), r);
        let n = xs.len();
        let mut names = xs.clone();
        names.extend(profile.s_names());
        let vars: Arc<[String]> = names.into();
        let map: Vec<usize> = (0..n).collect();
        let fs: Vec<MultiPoly> = fs.iter().map(|g| g.embed(vars.clone(), &map)).collect();
        let mut f = MultiPoly::one(vars.clone());
        for g in &fs {
            f = &f * g;
        }
        let f_derivs = (0..n).map(|j| f.derivative(j)).collect();
        let log_terms = (0..n)
            .map(|j| {
                let mut acc = MultiPoly::zero(vars.clone());
                for (i, fi) in fs.iter().enumerate() {
                    let mut term = &MultiPoly::var(vars.clone(), n + i) * &fi.derivative(j);
                    for (k, fk) in fs.iter().enumerate() {
                        if k != i {
                            term = &term * fk;
                        }
                    }
                    acc = &acc + &term;
                }
                acc
            })
            .collect();
        Arc::new(TwistContext { profile, vars, fs, f, log_terms, f_derivs })
    }

    /// The `D_n[s]` profile the action expects.
    pub fn profile(&self) -> &Arc<AlgebraProfile> {
        &self.profile
    }

    /// Variable names of the coefficient ring `(x, s)`.
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn r(&self) -> usize {
        self.fs.len()
    }

    pub fn fs(&self) -> &[MultiPoly] {
        &self.fs
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }
}

impl fmt::Debug for TwistContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F={:?}", self.fs.iter().map(|g| g.to_string()).collect::<Vec<_>>())
    }
}

/// `numerator / f^N · F^s`, kept reduced: `f` does not divide the numerator
/// when `N > 0`. Reduced forms are canonical, so structural equality is
/// equality in the module.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedElement {
    ctx: Arc<TwistContext>,
    numerator: MultiPoly,
    denom_exp: u32,
}

impl TwistedElement {
    pub fn new(ctx: &Arc<TwistContext>, numerator: MultiPoly, denom_exp: u32) -> Self {
        assert_eq!(numerator.vars(), ctx.vars());
        let mut v = TwistedElement { ctx: ctx.clone(), numerator, denom_exp };
        v.reduce();
        v
    }

    /// `F^s` itself.
    pub fn generator(ctx: &Arc<TwistContext>) -> Self {
        Self::new(ctx, MultiPoly::one(ctx.vars.clone()), 0)
    }

    /// `F^v · F^s = prod f_i^{v_i} · F^s`.
    pub fn power(ctx: &Arc<TwistContext>, v: &[u32]) -> Self {
        assert_eq!(v.len(), ctx.r());
        let mut a = MultiPoly::one(ctx.vars.clone());
        for (fi, &e) in ctx.fs.iter().zip(v) {
            a = &a * &fi.pow(e);
        }
        Self::new(ctx, a, 0)
    }

    pub fn zero(ctx: &Arc<TwistContext>) -> Self {
        Self::new(ctx, MultiPoly::zero(ctx.vars.clone()), 0)
    }

    pub fn context(&self) -> &Arc<TwistContext> {
        &self.ctx
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
            return;
        }
        while self.denom_exp > 0 {
            match self.numerator.div_exact(&self.ctx.f) {
                Some(q) => {
                    self.numerator = q;
                    self.denom_exp -= 1;
                }
                None => break,
            }
        }
    }

    /// Brings two elements over the common denominator `f^max(N, M)`.
    fn align(&self, other: &TwistedElement) -> (MultiPoly, MultiPoly, u32) {
        let n = self.denom_exp.max(other.denom_exp);
        let a = &self.numerator * &self.ctx.f.pow(n - self.denom_exp);
        let b = &other.numerator * &self.ctx.f.pow(n - other.denom_exp);
        (a, b, n)
    }

    pub fn add(&self, other: &TwistedElement) -> TwistedElement {
        let (a, b, n) = self.align(other);
        Self::new(&self.ctx, &a + &b, n)
    }

    /// Multiplication by a coefficient `c(x, s)`.
    pub fn mul_poly(&self, c: &MultiPoly) -> TwistedElement {
        Self::new(&self.ctx, c * &self.numerator, self.denom_exp)
    }

    /// `d/dx_j` of the element, including the derivative of `F^s`.
    pub fn derive(&self, j: usize) -> TwistedElement {
        let ctx = &self.ctx;
        let a = &self.numerator;
        let n = Rational::from_integer(self.denom_exp.into());
        let num = &(&(&ctx.f * &a.derivative(j)) - &a.scale(&n).checked_mul(&ctx.f_derivs[j]).expect("ring"))
            + &(a * &ctx.log_terms[j]);
        Self::new(ctx, num, self.denom_exp + 1)
    }
}

impl fmt::Debug for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "({})·F^s", self.numerator)
        } else {
            write!(f, "({})/f^{}·F^s", self.numerator, self.denom_exp)
        }
    }
}

/// The `D_n[s]` action on the twisted module.
pub fn act_on_twisted(p: &WeylElement, v: &TwistedElement) -> Result<TwistedElement, WeylError> {
    let ctx = v.context();
    let prof = p.profile();
    if prof.nt() != 0 || prof.n() != ctx.n() || prof.ns() != ctx.r() || prof.is_homogenized() || prof.nextra() != 0 {
        return Err(WeylError::NotInDns(format!("{prof:?}")));
    }
    let n = ctx.n();
    let r = ctx.r();
    let mut cache: HashMap<Vec<u32>, TwistedElement> = HashMap::new();
    cache.insert(vec![0; n], v.clone());
    let mut acc = TwistedElement::zero(ctx);
    for (m, c) in p.terms() {
        let dexp: Vec<u32> = (0..n).map(|j| m.get(prof.dx(j))).collect();
        let derived = derive_multi(&mut cache, &dexp);
        let mut coef = Mono::one(n + r);
        for j in 0..n {
            coef.set(j, m.get(prof.x(j)));
        }
        for i in 0..r {
            coef.set(n + i, m.get(prof.s(i)));
        }
        acc = acc.add(&TwistedElement::new(ctx, derived.numerator.mul_mono(&coef, c), derived.denom_exp));
    }
    Ok(acc)
}

fn derive_multi(cache: &mut HashMap<Vec<u32>, TwistedElement>, dexp: &[u32]) -> TwistedElement {
    if let Some(v) = cache.get(dexp) {
        return v.clone();
    }
    let j = dexp.iter().position(|&e| e > 0).expect("base case cached");
    let mut lower = dexp.to_vec();
    lower[j] -= 1;
    let out = derive_multi(cache, &lower).derive(j);
    cache.insert(dexp.to_vec(), out.clone());
    out
}

/// `t^gamma` acting by `a(x, s) F^s -> a(x, s + gamma) f^gamma F^s`.
pub fn t_shift_action(gamma: &[u32], v: &TwistedElement) -> TwistedElement {
    let ctx = v.context();
    assert_eq!(gamma.len(), ctx.r());
    let n = ctx.n();
    let mut shift = vec![Rational::from_integer(0.into()); n];
    shift.extend(gamma.iter().map(|&g| Rational::from_integer(g.into())));
    let mut num = v.numerator().shift(&shift);
    for (fi, &g) in ctx.fs().iter().zip(gamma) {
        num = &num * &fi.pow(g);
    }
    TwistedElement::new(ctx, num, v.denom_exp())
}

/// Evaluation of a central polynomial `b(s)` on `v`.
pub fn act_central(b: &MultiPoly, v: &TwistedElement) -> TwistedElement {
    let ctx = v.context();
    let n = ctx.n();
    let map: Vec<usize> = (0..b.nvars()).map(|i| n + i).collect();
    v.mul_poly(&b.embed(ctx.vars().clone(), &map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, var_names};

    fn xy_ctx() -> Arc<TwistContext> {
        let v = var_names(&["x", "y"]);
        TwistContext::new(vec!["x".into(), "y".into()], &[MultiPoly::var(v.clone(), 0), MultiPoly::var(v, 1)])
    }

    #[test]
    fn euler_operator_kills_x_to_s() {
        let v = var_names(&["x"]);
        let ctx = TwistContext::new(vec!["x".into()], &[MultiPoly::var(v, 0)]);
        let p = ctx.profile().clone();
        let x = WeylElement::var(&p, p.x(0));
        let dx = WeylElement::var(&p, p.dx(0));
        let s = WeylElement::var(&p, p.s(0));
        let op = &(&x * &dx) - &s;
        assert!(act_on_twisted(&op, &TwistedElement::generator(&ctx)).unwrap().is_zero());
    }

    #[test]
    fn mixed_derivative_on_xy() {
        let ctx = xy_ctx();
        let p = ctx.profile().clone();
        let dxdy = &WeylElement::var(&p, p.dx(0)) * &WeylElement::var(&p, p.dx(1));
        let out = act_on_twisted(&dxdy, &TwistedElement::power(&ctx, &[1, 1])).unwrap();
        assert_eq!(out.denom_exp(), 0);
        assert_eq!(out.numerator().to_string(), "s1*s2 + s1 + s2 + 1");
    }

    #[test]
    fn shift_examples() {
        let ctx = xy_ctx();
        let g = TwistedElement::generator(&ctx);
        assert_eq!(t_shift_action(&[1, 0], &g).numerator().to_string(), "x");
        let s1 = g.mul_poly(&MultiPoly::var(ctx.vars().clone(), 2));
        assert_eq!(t_shift_action(&[1, 0], &s1).numerator().to_string(), "x*s1 + x");
        assert_eq!(t_shift_action(&[0, 0], &s1), s1);
    }

    #[test]
    fn log_derivative_closed_form() {
        let v = var_names(&["x", "y"]);
        let f = &(&MultiPoly::var(v.clone(), 0).pow(2) + &MultiPoly::var(v.clone(), 1).pow(3)) + &MultiPoly::constant(v, int(1));
        let ctx = TwistContext::new(vec!["x".into(), "y".into()], &[f]);
        let p = ctx.profile().clone();
        let out = act_on_twisted(&WeylElement::var(&p, p.dx(0)), &TwistedElement::generator(&ctx)).unwrap();
        assert_eq!(out.denom_exp(), 1);
        assert_eq!(out.numerator().to_string(), "2*x*s");
    }
}
