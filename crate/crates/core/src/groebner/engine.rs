//! Buchberger completion for left ideals with optional cofactor tracking.
//!
//! Pairs are selected by sugar degree. The chain criterion prunes pairs in
//! the Gebauer-Möller style; the product criterion is applied only to pairs
//! whose elements commute, since a Weyl commutator otherwise breaks it.

use super::cache::BasisCache;
use super::GroebnerError;
use crate::arith::{Mono, Rational};
use crate::weyl::sparse::{self, Terms};
use crate::weyl::{AlgebraProfile, TermOrder, WeylElement};
use num_traits::One;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct GbConfig {
    pub degree_cap: u64,
    pub deadline: Option<Instant>,
    /// Per input generator: whether its cofactor is recorded. Empty means no tracking.
    pub track: Vec<bool>,
    pub cache: Option<Arc<BasisCache>>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { degree_cap: 40, deadline: None, track: Vec::new(), cache: None }
    }
}

impl GbConfig {
    pub fn with_cap(degree_cap: u64) -> Self {
        GbConfig { degree_cap, ..Default::default() }
    }

    pub fn timeout(mut self, t: Option<Duration>) -> Self {
        self.deadline = t.map(|d| Instant::now() + d);
        self
    }

    pub fn deadline(mut self, d: Option<Instant>) -> Self {
        self.deadline = d;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_degree: u64,
}

/// Raw engine output: basis term lists sorted under the order, ascending
/// by leading monomial, each monic.
#[derive(Clone, Debug)]
pub struct GbOutput {
    pub basis: Vec<Terms>,
    /// `cofactors[k][t]`: left coefficient of the `t`-th tracked generator in `basis[k]`.
    pub cofactors: Option<Vec<Vec<Terms>>>,
    pub stats: GbStats,
}

pub(crate) struct Ctx<'a> {
    pub profile: &'a AlgebraProfile,
    pub order: &'a TermOrder,
}

#[derive(Clone)]
struct Elem {
    terms: Terms,
    sugar: u64,
    cof: Option<Vec<Terms>>,
    mask: u128,
}

impl Elem {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u64,
}

fn slot_mask(terms: &Terms) -> u128 {
    let mut m = 0u128;
    for (mono, _) in terms {
        for (i, &e) in mono.exps().iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
    }
    m
}

/// True when the two elements share no (position, derivation) pair, so
/// they commute.
fn commute(profile: &AlgebraProfile, a: u128, b: u128) -> bool {
    let p = profile.npairs();
    (0..p).all(|i| {
        let (x, d) = (1u128 << i, 1u128 << (p + i));
        !((a & x != 0 && b & d != 0) || (a & d != 0 && b & x != 0))
    })
}

impl<'a> Ctx<'a> {
    pub fn new(profile: &'a AlgebraProfile, order: &'a TermOrder) -> Self {
        Ctx { profile, order }
    }

    /// `p - c * m * g` for sorted lists.
    fn sub_mul(&self, p: &[(Mono, Rational)], c: &Rational, m: &Mono, g: &[(Mono, Rational)]) -> Terms {
        let prod = sparse::left_mul_term(self.profile, self.order, m, &-c.clone(), g);
        sparse::axpy(p, &Rational::one(), &prod, self.order)
    }

    /// Full reduction of `p` (and its cofactor vector) by `basis`.
    pub fn reduce(
        &self,
        p: Terms,
        mut cof: Option<Vec<Terms>>,
        basis: &[(&Terms, Option<&Vec<Terms>>)],
        deadline: Option<Instant>,
    ) -> Result<(Terms, Option<Vec<Terms>>), GroebnerError> {
        let mut rem: Terms = Vec::new();
        let mut p = p;
        let mut off = 0usize;
        let mut steps = 0u64;
        while off < p.len() {
            steps += 1;
            if steps % 256 == 0 {
                check_deadline(deadline)?;
            }
            let (lead_m, lead_c) = (&p[off].0, &p[off].1);
            let mut best: Option<usize> = None;
            for (k, (g, _)) in basis.iter().enumerate() {
                if g[0].0.divides(lead_m) && best.is_none_or(|b| g.len() < basis[b].0.len()) {
                    best = Some(k);
                }
            }
            match best {
                None => {
                    rem.push(p[off].clone());
                    off += 1;
                }
                Some(k) => {
                    let (g, gcof) = basis[k];
                    let q = g[0].0.quotient_of(lead_m);
                    let c = lead_c / &g[0].1;
                    if let (Some(cv), Some(gc)) = (cof.as_mut(), gcof) {
                        for (t, slot) in cv.iter_mut().enumerate() {
                            if !gc[t].is_empty() {
                                *slot = self.sub_mul(slot, &c, &q, &gc[t]);
                            }
                        }
                    }
                    p = self.sub_mul(&p[off..], &c, &q, g);
                    off = 0;
                }
            }
        }
        Ok((rem, cof))
    }

    fn spoly(&self, f: &Elem, g: &Elem, lcm: &Mono) -> (Terms, Option<Vec<Terms>>) {
        let mf = f.lm().quotient_of(lcm);
        let mg = g.lm().quotient_of(lcm);
        let cf = f.terms[0].1.recip();
        let cg = g.terms[0].1.recip();
        let a = sparse::left_mul_term(self.profile, self.order, &mf, &cf, &f.terms);
        let b = sparse::left_mul_term(self.profile, self.order, &mg, &cg, &g.terms);
        let s = sparse::axpy(&a, &-Rational::one(), &b, self.order);
        let cof = match (&f.cof, &g.cof) {
            (Some(fc), Some(gc)) => Some(
                fc.iter()
                    .zip(gc)
                    .map(|(x, y)| {
                        let a = sparse::left_mul_term(self.profile, self.order, &mf, &cf, x);
                        let b = sparse::left_mul_term(self.profile, self.order, &mg, &cg, y);
                        sparse::axpy(&a, &-Rational::one(), &b, self.order)
                    })
                    .collect(),
            ),
            _ => None,
        };
        (s, cof)
    }
}

fn check_deadline(deadline: Option<Instant>) -> Result<(), GroebnerError> {
    if let Some(d) = deadline {
        if Instant::now() > d {
            return Err(GroebnerError::Timeout);
        }
    }
    Ok(())
}

fn degree(terms: &Terms) -> u64 {
    terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)
}

fn make_monic(terms: &mut Terms, cof: &mut Option<Vec<Terms>>) {
    let c = terms[0].1.clone();
    if c.is_one() {
        return;
    }
    let inv = c.recip();
    for (_, a) in terms.iter_mut() {
        *a *= &inv;
    }
    if let Some(cv) = cof.as_mut() {
        for t in cv.iter_mut() {
            for (_, a) in t.iter_mut() {
                *a *= &inv;
            }
        }
    }
}

/// Left Gröbner basis of the generators (term lists sorted under `order`).
pub fn buchberger(
    profile: &Arc<AlgebraProfile>,
    order: &TermOrder,
    gens: &[Terms],
    cfg: &GbConfig,
) -> Result<GbOutput, GroebnerError> {
    if !order.is_well_order() && !profile.is_homogenized() {
        return Err(GroebnerError::NotWellOrder(order.descriptor()));
    }
    assert!(profile.nvars() <= 128, "too many variables");
    let ctx = Ctx::new(profile, order);
    let tracking = !cfg.track.is_empty();
    let ntrack = cfg.track.iter().filter(|&&b| b).count();
    let mut stats = GbStats::default();
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Seed with the generators, each reduced against those already present.
    let mut tslot = 0;
    let mut seeds: Vec<(Terms, Option<Vec<Terms>>)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let cof = if tracking {
            let mut v = vec![Vec::new(); ntrack];
            if cfg.track[k] {
                v[tslot] = vec![(Mono::one(profile.nvars()), Rational::one())];
                tslot += 1;
            }
            Some(v)
        } else {
            None
        };
        if !g.is_empty() {
            seeds.push((g.clone(), cof));
        }
    }
    // Lowest generators first, which keeps the seeding reductions short.
    seeds.sort_by(|a, b| order.cmp(&a.0[0].0, &b.0[0].0));

    let add = |elems: &mut Vec<Elem>, pairs: &mut Vec<Pair>, mut terms: Terms, mut cof: Option<Vec<Terms>>, sugar: u64| {
        make_monic(&mut terms, &mut cof);
        let h = Elem { mask: slot_mask(&terms), terms, sugar, cof };
        let k = elems.len();
        let hlm = h.lm().clone();
        // chain criterion on old pairs
        pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lm().lcm(&hlm);
            let lj = elems[p.j].lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for (i, g) in elems.iter().enumerate() {
            let lcm = g.lm().lcm(&hlm);
            let prod = g.lm().coprime(&hlm) && commute(profile, g.mask, h.mask);
            let sugar = (g.sugar + lcm.deg() - g.lm().deg()).max(h.sugar + lcm.deg() - hlm.deg());
            fresh.push((Pair { i, j: k, lcm, sugar }, prod));
        }
        // criterion M: drop pairs whose lcm is properly divisible by another new lcm
        let keep: Vec<bool> = (0..fresh.len())
            .map(|a| {
                !(0..fresh.len()).any(|b| {
                    b != a && fresh[b].0.lcm.divides(&fresh[a].0.lcm) && fresh[b].0.lcm != fresh[a].0.lcm
                })
            })
            .collect();
        let mut survivors: Vec<(Pair, bool)> =
            fresh.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        // criterion F: one representative per lcm; drop the class if any member satisfies the product criterion
        survivors.sort_by(|a, b| order.cmp(&a.0.lcm, &b.0.lcm).then(a.0.i.cmp(&b.0.i)));
        let mut idx = 0;
        while idx < survivors.len() {
            let mut end = idx + 1;
            while end < survivors.len() && survivors[end].0.lcm == survivors[idx].0.lcm {
                end += 1;
            }
            let class_prod = survivors[idx..end].iter().any(|(_, p)| *p);
            if !class_prod {
                let (p, _) = &survivors[idx];
                pairs.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
            }
            idx = end;
        }
        elems.push(h);
    };

    for (terms, cof) in seeds {
        let basis: Vec<(&Terms, Option<&Vec<Terms>>)> = elems.iter().map(|e| (&e.terms, e.cof.as_ref())).collect();
        let sugar = degree(&terms);
        let (r, rc) = ctx.reduce(terms, cof, &basis, cfg.deadline)?;
        if r.is_empty() {
            continue;
        }
        let d = degree(&r);
        stats.max_degree = stats.max_degree.max(d);
        if d > cfg.degree_cap {
            return Err(capped(profile, order, &elems, d));
        }
        add(&mut elems, &mut pairs, r, rc, sugar);
    }

    while !pairs.is_empty() {
        check_deadline(cfg.deadline)?;
        if elems.iter().any(|e| e.lm().is_one()) {
            break;
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        stats.pairs_considered += 1;
        if pair.lcm.deg() > cfg.degree_cap {
            return Err(capped(profile, order, &elems, pair.lcm.deg()));
        }
        let (s, scof) = ctx.spoly(&elems[pair.i], &elems[pair.j], &pair.lcm);
        stats.pairs_reduced += 1;
        let basis: Vec<(&Terms, Option<&Vec<Terms>>)> = elems.iter().map(|e| (&e.terms, e.cof.as_ref())).collect();
        let (r, rc) = ctx.reduce(s, scof, &basis, cfg.deadline)?;
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        let d = degree(&r);
        stats.max_degree = stats.max_degree.max(d);
        if d > cfg.degree_cap {
            return Err(capped(profile, order, &elems, d));
        }
        add(&mut elems, &mut pairs, r, rc, pair.sugar);
    }

    let (basis, cofactors) = interreduce(&ctx, elems, cfg.deadline)?;
    Ok(GbOutput { basis, cofactors: if tracking { Some(cofactors) } else { None }, stats })
}

fn capped(profile: &Arc<AlgebraProfile>, order: &TermOrder, elems: &[Elem], degree: u64) -> GroebnerError {
    let partial = elems
        .iter()
        .map(|e| WeylElement::from_terms(profile, e.terms.iter().cloned()))
        .collect();
    GroebnerError::Capped { degree, order: order.descriptor(), partial }
}

/// Minimalizes, tail-reduces and sorts ascending by leading monomial.
fn interreduce(
    ctx: &Ctx<'_>,
    elems: Vec<Elem>,
    deadline: Option<Instant>,
) -> Result<(Vec<Terms>, Vec<Vec<Terms>>), GroebnerError> {
    let mut kept: Vec<Elem> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        let redundant = elems.iter().enumerate().any(|(j, g)| {
            j != i && g.lm().divides(e.lm()) && (g.lm() != e.lm() || j < i)
        });
        if !redundant {
            kept.push(e.clone());
        }
    }
    kept.sort_by(|a, b| ctx.order.cmp(a.lm(), b.lm()));
    let mut out: Vec<(Terms, Option<Vec<Terms>>)> = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let lead = kept[k].terms[0].clone();
        let tail: Terms = kept[k].terms[1..].to_vec();
        let others: Vec<(&Terms, Option<&Vec<Terms>>)> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, e)| (&e.terms, e.cof.as_ref()))
            .collect();
        let (r, rc) = ctx.reduce(tail, kept[k].cof.clone(), &others, deadline)?;
        let mut terms = vec![lead];
        terms.extend(r);
        out.push((terms, rc));
    }
    let mut basis = Vec::with_capacity(out.len());
    let mut cofs = Vec::with_capacity(out.len());
    for (mut t, mut c) in out {
        make_monic(&mut t, &mut c);
        basis.push(t);
        cofs.push(c.unwrap_or_default());
    }
    Ok((basis, cofs))
}
