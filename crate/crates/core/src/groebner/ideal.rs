use super::cache::BasisCache;
use super::engine::{buchberger, Ctx, GbConfig, GbStats};
use super::GroebnerError;
use crate::arith::{Mono, Rational};
use crate::weyl::sparse::{self, Terms};
use crate::weyl::{AlgebraProfile, TermOrder, WeylElement};
use std::sync::Arc;

/// A reduced left Gröbner basis, elements monic and sorted ascending by
/// leading monomial under `order`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    profile: Arc<AlgebraProfile>,
    order: TermOrder,
    elements: Vec<Terms>,
    cofactors: Option<Vec<Vec<Terms>>>,
    stats: GbStats,
}

impl GroebnerBasis {
    pub fn compute(
        profile: &Arc<AlgebraProfile>,
        order: &TermOrder,
        gens: &[WeylElement],
        cfg: &GbConfig,
    ) -> Result<Self, GroebnerError> {
        let raw: Vec<Terms> = gens
            .iter()
            .map(|g| {
                if g.profile() != profile {
                    return Err(GroebnerError::ProfileMismatch(format!("{:?}", g.profile())));
                }
                Ok(sparse::resort(g.terms(), order))
            })
            .collect::<Result<_, _>>()?;
        let key = cfg.cache.as_ref().map(|c| (c, BasisCache::key(profile, order, gens, &cfg.track)));
        if let Some((cache, key)) = &key {
            if let Some(gb) = cache.load(key, profile, order, gens) {
                return Ok(gb);
            }
        }
        let out = buchberger(profile, order, &raw, cfg)?;
        let gb = GroebnerBasis {
            profile: profile.clone(),
            order: order.clone(),
            elements: out.basis,
            cofactors: out.cofactors,
            stats: out.stats,
        };
        if let Some((cache, key)) = &key {
            cache.store(key, &gb);
        }
        Ok(gb)
    }

    pub(crate) fn from_parts(
        profile: &Arc<AlgebraProfile>,
        order: &TermOrder,
        elements: Vec<Terms>,
        cofactors: Option<Vec<Vec<Terms>>>,
    ) -> Self {
        GroebnerBasis { profile: profile.clone(), order: order.clone(), elements, cofactors, stats: GbStats::default() }
    }

    /// Rebuilds a basis from stored elements, e.g. a cache entry. The caller
    /// is responsible for verifying it.
    pub fn from_elements(profile: &Arc<AlgebraProfile>, order: &TermOrder, elements: &[WeylElement], stats: GbStats) -> Self {
        let mut els: Vec<Terms> = elements.iter().map(|g| sparse::resort(g.terms(), order)).collect();
        els.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        GroebnerBasis { profile: profile.clone(), order: order.clone(), elements: els, cofactors: None, stats }
    }

    pub fn profile(&self) -> &Arc<AlgebraProfile> {
        &self.profile
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<WeylElement> {
        self.elements.iter().map(|t| WeylElement::from_terms(&self.profile, t.iter().cloned())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.elements.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Cofactors of the tracked generators, per basis element.
    pub fn cofactors(&self) -> Option<Vec<Vec<WeylElement>>> {
        self.cofactors.as_ref().map(|cs| {
            cs.iter()
                .map(|row| row.iter().map(|t| WeylElement::from_terms(&self.profile, t.iter().cloned())).collect())
                .collect()
        })
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|t| t[0].0.is_one())
    }

    fn reducers(&self, with_cof: bool) -> Vec<(&Terms, Option<&Vec<Terms>>)> {
        self.elements
            .iter()
            .enumerate()
            .map(|(k, t)| (t, if with_cof { self.cofactors.as_ref().map(|c| &c[k]) } else { None }))
            .collect()
    }

    /// Remainder of `p` with no term divisible by a leading monomial.
    pub fn normal_form(&self, p: &WeylElement) -> WeylElement {
        assert_eq!(p.profile(), &self.profile, "profile mismatch");
        let ctx = Ctx::new(&self.profile, &self.order);
        let (r, _) = ctx
            .reduce(sparse::resort(p.terms(), &self.order), None, &self.reducers(false), None)
            .expect("no deadline");
        WeylElement::from_terms(&self.profile, r)
    }

    pub(crate) fn normal_form_terms(&self, p: Terms) -> Terms {
        let ctx = Ctx::new(&self.profile, &self.order);
        ctx.reduce(p, None, &self.reducers(false), None).expect("no deadline").0
    }

    /// Reduces `p` and returns `(remainder, c)` with
    /// `p - remainder = sum_t c[t] * g_t` modulo the untracked generators.
    pub fn reduce_tracked(&self, p: &WeylElement) -> Result<(WeylElement, Vec<WeylElement>), GroebnerError> {
        let cofs = self.cofactors.as_ref().ok_or(GroebnerError::NoCofactors)?;
        let ntrack = cofs.first().map_or(0, |c| c.len());
        let ctx = Ctx::new(&self.profile, &self.order);
        let (r, c) = ctx.reduce(
            sparse::resort(p.terms(), &self.order),
            Some(vec![Vec::new(); ntrack]),
            &self.reducers(true),
            None,
        )?;
        let neg = -Rational::from_integer(1.into());
        let c = c
            .unwrap_or_default()
            .into_iter()
            .map(|t| WeylElement::from_terms(&self.profile, t).scale(&neg))
            .collect();
        Ok((WeylElement::from_terms(&self.profile, r), c))
    }

    pub fn contains(&self, p: &WeylElement) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Checks that every generator reduces to zero and that the S-pairs
    /// selected by `pick` reduce to zero.
    pub fn verify(&self, gens: &[WeylElement], pick: impl Fn(usize) -> Vec<(usize, usize)>) -> bool {
        if !gens.iter().all(|g| self.contains(g)) {
            return false;
        }
        let ctx = Ctx::new(&self.profile, &self.order);
        for (i, j) in pick(self.elements.len()) {
            if i >= self.elements.len() || j >= self.elements.len() || i == j {
                continue;
            }
            let (f, g) = (&self.elements[i], &self.elements[j]);
            let lcm = f[0].0.lcm(&g[0].0);
            let a = sparse::left_mul_term(&self.profile, &self.order, &f[0].0.quotient_of(&lcm), &f[0].1.recip(), f);
            let b = sparse::left_mul_term(&self.profile, &self.order, &g[0].0.quotient_of(&lcm), &g[0].1.recip(), g);
            let s = sparse::axpy(&a, &-Rational::from_integer(1.into()), &b, &self.order);
            let (r, _) = ctx.reduce(s, None, &self.reducers(false), None).expect("no deadline");
            if !r.is_empty() {
                return false;
            }
        }
        true
    }
}

/// A left ideal with an optionally attached reduced basis.
#[derive(Clone, Debug)]
pub struct LeftIdeal {
    profile: Arc<AlgebraProfile>,
    generators: Vec<WeylElement>,
    order: TermOrder,
    basis: Option<Arc<GroebnerBasis>>,
}

impl LeftIdeal {
    pub fn new(profile: &Arc<AlgebraProfile>, generators: Vec<WeylElement>, order: TermOrder) -> Self {
        LeftIdeal { profile: profile.clone(), generators, order, basis: None }
    }

    pub fn profile(&self) -> &Arc<AlgebraProfile> {
        &self.profile
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> Result<&Arc<GroebnerBasis>, GroebnerError> {
        self.basis.as_ref().ok_or(GroebnerError::NotComputed)
    }

    /// Runs Buchberger and attaches the reduced basis.
    pub fn complete(mut self, cfg: &GbConfig) -> Result<Self, GroebnerError> {
        let gb = GroebnerBasis::compute(&self.profile, &self.order, &self.generators, cfg)?;
        self.basis = Some(Arc::new(gb));
        Ok(self)
    }

    pub fn with_basis(mut self, gb: Arc<GroebnerBasis>) -> Self {
        self.basis = Some(gb);
        self
    }
}

pub fn buchberger_ideal(ideal: LeftIdeal, degree_cap: u64) -> Result<LeftIdeal, GroebnerError> {
    ideal.complete(&GbConfig::with_cap(degree_cap))
}

pub fn normal_form(p: &WeylElement, ideal: &LeftIdeal) -> Result<WeylElement, GroebnerError> {
    Ok(ideal.basis()?.normal_form(p))
}

/// `I ∩ (subalgebra on keep)` via a block order eliminating the other slots.
pub fn eliminate(ideal: &LeftIdeal, keep: &[usize], cfg: &GbConfig) -> Result<Vec<WeylElement>, GroebnerError> {
    let prof = ideal.profile();
    let dropped: Vec<usize> = (0..prof.nvars()).filter(|i| !keep.contains(i)).collect();
    let order = if dropped.is_empty() { ideal.order().clone() } else { TermOrder::elimination(prof, &dropped) };
    let gb = GroebnerBasis::compute(prof, &order, ideal.generators(), cfg)?;
    Ok(gb.elements().into_iter().filter(|g| g.uses_only(keep)).collect())
}

/// Basis computed under a weight order in the homogenized algebra, then
/// dehomogenized.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub weight: Vec<i64>,
    pub elements: Vec<WeylElement>,
    pub stats: GbStats,
}

impl WeightBasis {
    /// Weight of a monomial (the `h` slot, if any, carries weight 0).
    pub fn weight_of(&self, m: &Mono) -> i64 {
        self.weight.iter().zip(m.exps()).map(|(w, &e)| w * e as i64).sum()
    }

    /// Top-weight parts `in_w(g)`.
    pub fn initial_forms(&self) -> Vec<WeylElement> {
        self.elements.iter().map(|g| initial_form(g, &self.weight)).collect()
    }
}

pub fn initial_form(g: &WeylElement, w: &[i64]) -> WeylElement {
    let wt = |m: &Mono| -> i64 { w.iter().zip(m.exps()).map(|(a, &e)| a * e as i64).sum() };
    let top = g.terms().iter().map(|(m, _)| wt(m)).max();
    match top {
        None => g.clone(),
        Some(top) => WeylElement::from_terms(g.profile(), g.terms().iter().filter(|(m, _)| wt(m) == top).cloned()),
    }
}

pub fn weight_gb(generators: &[WeylElement], w: &[i64], cfg: &GbConfig) -> Result<WeightBasis, GroebnerError> {
    let prof = generators.first().ok_or(GroebnerError::Empty)?.profile().clone();
    if prof.is_homogenized() {
        return Err(GroebnerError::ProfileMismatch("input is already homogenized".into()));
    }
    if w.len() != prof.nvars() {
        return Err(GroebnerError::ProfileMismatch(format!("weight of length {} for {:?}", w.len(), prof)));
    }
    if !crate::weyl::weight_admissible(&prof, w) {
        return Err(GroebnerError::NotWellOrder(format!("weight {w:?} is not admissible")));
    }
    let hp = prof.homogenized();
    let order = TermOrder::homogenized_weight(&hp, w.to_vec());
    let hgens: Vec<WeylElement> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.homogenize()).collect();
    let gb = GroebnerBasis::compute(&hp, &order, &hgens, cfg)?;
    let mut elements: Vec<WeylElement> = gb.elements().iter().map(|g| g.dehomogenize()).collect();
    elements.retain(|g| !g.is_zero());
    Ok(WeightBasis { weight: w.to_vec(), elements, stats: gb.stats().clone() })
}
