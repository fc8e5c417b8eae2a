use super::order::TermOrder;
use super::profile::AlgebraProfile;
use super::sparse::{self, Terms};
use super::WeylError;
use crate::arith::{mono_factors, write_coeff_term, Mono, MultiPoly, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// A normally ordered element of the extended Weyl algebra, terms sorted
/// descending in graded reverse lex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    profile: Arc<AlgebraProfile>,
    terms: Terms,
}

impl WeylElement {
    pub fn zero(profile: &Arc<AlgebraProfile>) -> Self {
        WeylElement { profile: profile.clone(), terms: Vec::new() }
    }

    pub fn constant(profile: &Arc<AlgebraProfile>, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Mono::one(profile.nvars()), c)] };
        WeylElement { profile: profile.clone(), terms }
    }

    pub fn one(profile: &Arc<AlgebraProfile>) -> Self {
        Self::constant(profile, Rational::one())
    }

    /// The generator sitting in exponent slot `slot`.
    pub fn var(profile: &Arc<AlgebraProfile>, slot: usize) -> Self {
        Self::monomial(profile, Mono::var(profile.nvars(), slot), Rational::one())
    }

    pub fn monomial(profile: &Arc<AlgebraProfile>, m: Mono, c: Rational) -> Self {
        assert_eq!(m.len(), profile.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        WeylElement { profile: profile.clone(), terms }
    }

    /// Builds an element from normally ordered monomials; duplicates are merged.
    pub fn from_terms(profile: &Arc<AlgebraProfile>, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let order = TermOrder::degrevlex(profile);
        let raw: Terms = terms.into_iter().inspect(|(m, _)| assert_eq!(m.len(), profile.nvars())).collect();
        WeylElement { profile: profile.clone(), terms: sparse::normalize(raw, &order) }
    }

    pub(crate) fn from_sorted(profile: Arc<AlgebraProfile>, terms: Terms) -> Self {
        WeylElement { profile, terms }
    }

    /// Embeds a commutative polynomial whose variable `i` maps to slot `slots[i]`.
    /// The target slots must pairwise commute.
    pub fn from_poly(profile: &Arc<AlgebraProfile>, p: &MultiPoly, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), p.nvars());
        let n = profile.nvars();
        Self::from_terms(
            profile,
            p.terms().iter().map(|(m, c)| {
                let mut out = Mono::one(n);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        out.set(slots[i], out.get(slots[i]) + e);
                    }
                }
                (out, c.clone())
            }),
        )
    }

    /// Reads the element back as a commutative polynomial in the given slots;
    /// `None` if any other slot occurs.
    pub fn to_poly(&self, vars: Arc<[String]>, slots: &[usize]) -> Option<MultiPoly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut pm = Mono::one(slots.len());
            let mut used = 0u64;
            for (i, &s) in slots.iter().enumerate() {
                pm.set(i, m.get(s));
                used += m.get(s) as u64;
            }
            if used != m.deg() {
                return None;
            }
            out.push((pm, c.clone()));
        }
        Some(MultiPoly::from_terms(vars, out))
    }

    /// Moves the element into another profile, slot `i` going to `map[i]`.
    /// Position slots must land on position slots of the same pair as their
    /// derivations.
    pub fn embed(&self, target: &Arc<AlgebraProfile>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.profile.nvars());
        let n = target.nvars();
        Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut out = Mono::one(n);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        out.set(map[i], out.get(map[i]) + e);
                    }
                }
                (out, c.clone())
            }),
        )
    }

    pub fn profile(&self) -> &Arc<AlgebraProfile> {
        &self.profile
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    /// Leading term in graded reverse lex.
    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    /// Union of the slots occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.profile.nvars()).filter(|&i| self.terms.iter().any(|(m, _)| m.get(i) > 0)).collect()
    }

    pub fn uses_only(&self, slots: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| m.deg_in(slots) == m.deg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.profile);
        }
        WeylElement {
            profile: self.profile.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn check(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.profile != other.profile {
            return Err(WeylError::ProfileMismatch {
                left: format!("{:?}", self.profile),
                right: format!("{:?}", other.profile),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<Self, WeylError> {
        self.check(other)?;
        let order = TermOrder::degrevlex(&self.profile);
        Ok(Self::from_sorted(
            self.profile.clone(),
            sparse::axpy(&self.terms, &Rational::one(), &other.terms, &order),
        ))
    }

    pub fn checked_sub(&self, other: &WeylElement) -> Result<Self, WeylError> {
        self.check(other)?;
        let order = TermOrder::degrevlex(&self.profile);
        Ok(Self::from_sorted(
            self.profile.clone(),
            sparse::axpy(&self.terms, &-Rational::one(), &other.terms, &order),
        ))
    }

    /// Normally ordered product.
    pub fn checked_mul(&self, other: &WeylElement) -> Result<Self, WeylError> {
        self.check(other)?;
        let order = TermOrder::degrevlex(&self.profile);
        Ok(Self::from_sorted(
            self.profile.clone(),
            sparse::mul_terms(&self.profile, &order, &self.terms, &other.terms),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.profile);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &WeylElement) -> Result<Self, WeylError> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Pads every term with `h` up to the top total degree. Already
    /// homogenized profiles are padded in place.
    pub fn homogenize(&self) -> Self {
        let hp = if self.profile.is_homogenized() { self.profile.clone() } else { self.profile.homogenized() };
        let hs = hp.h().expect("homogenized profile");
        let n = hp.nvars();
        let top = self.total_degree().unwrap_or(0);
        Self::from_terms(
            &hp,
            self.terms.iter().map(|(m, c)| {
                let mut out = Mono::one(n);
                for (i, &e) in m.exps().iter().enumerate() {
                    out.set(i, e);
                }
                let pad = u32::try_from(top - m.deg()).expect("exponent overflow");
                out.set(hs, out.get(hs) + pad);
                (out, c.clone())
            }),
        )
    }

    /// Sets `h = 1`.
    pub fn dehomogenize(&self) -> Self {
        let Some(hs) = self.profile.h() else {
            return self.clone();
        };
        let dp = self.profile.dehomogenized();
        Self::from_terms(
            &dp,
            self.terms.iter().map(|(m, c)| {
                let e: Vec<u32> = m.exps().iter().enumerate().filter(|&(i, _)| i != hs).map(|(_, &e)| e).collect();
                (Mono::from(e), c.clone())
            }),
        )
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.deg());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// The monomial `t^gamma`.
    pub fn t_power(profile: &Arc<AlgebraProfile>, gamma: &[u32]) -> Self {
        assert_eq!(gamma.len(), profile.nt());
        let mut m = Mono::one(profile.nvars());
        for (i, &g) in gamma.iter().enumerate() {
            m.set(profile.t(i), g);
        }
        Self::monomial(profile, m, Rational::one())
    }
}

/// Returns `Q` with `P * t^gamma = t^gamma * Q`.
///
/// Left multiplication by `t^gamma` only raises `t`-exponents of normally
/// ordered monomials, so `Q` is read off `P * t^gamma` by lowering them; a
/// term with too small a `t`-exponent means no such `Q` exists.
pub fn right_transporter(p: &WeylElement, gamma: &[u32]) -> Result<WeylElement, WeylError> {
    let prof = p.profile().clone();
    if gamma.len() != prof.nt() {
        return Err(WeylError::Dimension { expected: prof.nt(), got: gamma.len() });
    }
    let r = p * &WeylElement::t_power(&prof, gamma);
    let mut out = Vec::with_capacity(r.len());
    for (m, c) in r.terms() {
        let mut q = m.clone();
        for (i, &g) in gamma.iter().enumerate() {
            let slot = prof.t(i);
            if q.get(slot) < g {
                return Err(WeylError::NotTransportable(format!("{p}")));
            }
            q.set(slot, q.get(slot) - g);
        }
        out.push((q, c.clone()));
    }
    Ok(WeylElement::from_terms(&prof, out))
}

pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement, WeylError> {
    a.checked_mul(b)
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(rhs).expect("profile mismatch")
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.checked_sub(rhs).expect("profile mismatch")
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.checked_mul(rhs).expect("profile mismatch")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.profile.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_coeff_term(f, k == 0, c, &mono_factors(m, &names), " * ")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn d1() -> Arc<AlgebraProfile> {
        AlgebraProfile::new(vec!["x".into()], 1, 1)
    }

    #[test]
    fn commutation_relation() {
        let p = d1();
        let x = WeylElement::var(&p, p.x(0));
        let dx = WeylElement::var(&p, p.dx(0));
        assert_eq!(format!("{}", &dx * &x), "x * dx + 1");
        assert_eq!(dx.commutator(&x).unwrap(), WeylElement::one(&p));
    }

    #[test]
    fn second_order_leibniz() {
        let p = d1();
        let x = WeylElement::var(&p, p.x(0));
        let dx = WeylElement::var(&p, p.dx(0));
        let lhs = &dx.pow(2) * &x.pow(2);
        assert_eq!(format!("{lhs}"), "x^2 * dx^2 + 4 * x * dx + 2");
    }

    #[test]
    fn theta_shifts_t() {
        let p = d1();
        let t = WeylElement::var(&p, p.t(0));
        let dt = WeylElement::var(&p, p.dt(0));
        let theta = &t * &dt;
        let lhs = &theta * &t;
        let rhs = &t * &(&theta + &WeylElement::one(&p));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transporter_examples() {
        let p = d1();
        let t = WeylElement::var(&p, p.t(0));
        let dt = WeylElement::var(&p, p.dt(0));
        let theta = &t * &dt;
        let q = right_transporter(&theta, &[1]).unwrap();
        assert_eq!(q, &theta + &WeylElement::one(&p));
        let x = WeylElement::var(&p, p.x(0));
        assert_eq!(right_transporter(&x, &[3]).unwrap(), x);
        assert!(right_transporter(&dt, &[1]).is_err());
        // dt * t^2 = t * (t dt + 2): only one factor of t comes out on the left
        let lhs = &dt * &t.pow(2);
        assert_eq!(lhs, &t * &(&theta + &WeylElement::constant(&p, int(2))));
        assert!(right_transporter(&dt, &[2]).is_err());
    }

    #[test]
    fn homogenize_round_trip() {
        let p = AlgebraProfile::new(vec!["x".into()], 0, 0);
        let x = WeylElement::var(&p, p.x(0));
        let dx = WeylElement::var(&p, p.dx(0));
        let e = &(&x * &dx) + &WeylElement::one(&p);
        let h = e.homogenize();
        assert_eq!(format!("{h}"), "x * dx + h^2");
        assert_eq!(h.dehomogenize(), e);
        let hp = h.profile().clone();
        let hx = WeylElement::var(&hp, hp.x(0));
        let hd = WeylElement::var(&hp, hp.dx(0));
        assert_eq!(format!("{}", &hd * &hx), "x * dx + h^2");
    }
}
