use super::mono::Mono;
use super::rational::{denom_lcm, int, numer_gcd, Rational};
use super::ArithError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Sparse commutative polynomial over Q.
///
/// Terms are kept sorted in descending graded reverse lexicographic order,
/// so the leading term is always `terms[0]`. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: Vec<(Mono, Rational)>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: Vec::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.push((Mono::one(n), c));
        }
        p
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        MultiPoly::constant(vars, Rational::one())
    }

    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        MultiPoly { vars, terms: vec![(Mono::var(n, i), Rational::one())] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), vars.len());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.get(i)).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    fn check_profile(&self, other: &MultiPoly) -> Result<(), ArithError> {
        if self.vars != other.vars {
            return Err(ArithError::ProfileMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            });
        }
        Ok(())
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_degrevlex(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        MultiPoly { vars: self.vars.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_profile(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_profile(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_profile(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.vars.clone()));
        }
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(MultiPoly::from_terms(self.vars.clone(), acc))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.get(i) > 0).map(|(m, c)| {
            let e = m.get(i);
            let mut m2 = m.clone();
            m2.set(i, e - 1);
            (m2, c * int(e as i64))
        });
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Substitutes variable `i` by the polynomial `q` (same profile).
    pub fn substitute(&self, i: usize, q: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.vars.clone())];
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.get(i) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.set(i, 0);
            out = &out + &powers[e].mul_mono(&rest, c);
        }
        out
    }

    /// Replaces each variable `i` by `x_i + shift[i]`.
    pub fn shift(&self, shift: &[Rational]) -> MultiPoly {
        let mut p = self.clone();
        for (i, a) in shift.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let q = &MultiPoly::var(self.vars.clone(), i) + &MultiPoly::constant(self.vars.clone(), a.clone());
            p = p.substitute(i, &q);
        }
        p
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / q`, or `None` when `q` does not divide `self`.
    pub fn div_exact(&self, q: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.vars, q.vars, "profile mismatch in division");
        let (lq, cq) = q.leading()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lr, cr)) = rem.leading() {
            if !lq.divides(lr) {
                return None;
            }
            let m = lq.quotient_of(lr);
            let c = cr / cq;
            rem = &rem - &q.mul_mono(&m, &c);
            quot.push((m, c));
        }
        Some(MultiPoly::from_terms(self.vars.clone(), quot))
    }

    /// Clears denominators and content; leading coefficient positive.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = denom_lcm(self.terms.iter().map(|(_, c)| c));
        let scaled = self.scale(&Rational::from_integer(l));
        let g = numer_gcd(scaled.terms.iter().map(|(_, c)| c));
        let mut p = scaled.scale(&Rational::new(BigInt::one(), g));
        if p.terms[0].1.is_negative() {
            p = -&p;
        }
        p
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Re-expresses the polynomial over another variable list; `map[i]` is the
    /// target slot of variable `i`.
    pub fn embed(&self, vars: Arc<[String]>, map: &[usize]) -> MultiPoly {
        let n = vars.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Mono::one(n);
            for (i, &x) in m.exps().iter().enumerate() {
                let slot = map[i];
                e.set(slot, e.get(slot) + x);
            }
            (e, c.clone())
        });
        MultiPoly::from_terms(vars, terms)
    }

    /// Dense coefficients (index = degree) of a polynomial in the single variable `i`.
    pub fn univariate_coeffs(&self, i: usize) -> Option<Vec<Rational>> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            out[m.get(i) as usize] += c;
        }
        Some(out)
    }

    pub fn from_univariate(vars: Arc<[String]>, i: usize, coeffs: &[Rational]) -> MultiPoly {
        let n = vars.len();
        let terms = coeffs.iter().enumerate().map(|(d, c)| {
            let mut m = Mono::one(n);
            m.set(i, d as u32);
            (m, c.clone())
        });
        MultiPoly::from_terms(vars, terms)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("profile mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("profile mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("profile mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    factors: &[String],
    sep: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{}", factors.join(sep))
    } else {
        write!(f, "{abs}{sep}{}", factors.join(sep))
    }
}

pub(crate) fn mono_factors(m: &Mono, names: &[String]) -> Vec<String> {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_coeff_term(f, k == 0, c, &mono_factors(m, &self.vars), "*")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

pub fn var_names(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn xy() -> Arc<[String]> {
        var_names(&["x", "y"])
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let x = MultiPoly::var(v.clone(), 0);
        let one = MultiPoly::one(v.clone());
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn additive_identity() {
        let v = xy();
        let p = &MultiPoly::var(v.clone(), 0) + &MultiPoly::var(v.clone(), 1);
        assert_eq!(&p + &MultiPoly::zero(v), p);
    }

    #[test]
    fn scalar_distribution() {
        let v = xy();
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let p = &(&x.pow(2) * &y) + &y.pow(3).scale(&rat(3, 4));
        let q = &p * &MultiPoly::constant(v, int(2));
        assert_eq!(q.to_string(), "2*x^2*y + 3/2*y^3");
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let a = MultiPoly::var(xy(), 0);
        let b = MultiPoly::var(var_names(&["x", "z"]), 0);
        assert!(matches!(a.checked_add(&b), Err(ArithError::ProfileMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let f = &x * &y;
        let g = &(&x.pow(3) * &y) - &(&f * &y);
        assert_eq!(g.div_exact(&f), Some(&x.pow(2) - &y));
        assert_eq!(g.div_exact(&(&x + &y)), None);
    }

    #[test]
    fn shift_and_substitute() {
        let v = var_names(&["s"]);
        let s = MultiPoly::var(v.clone(), 0);
        let p = s.pow(2);
        assert_eq!(p.shift(&[int(1)]).to_string(), "s^2 + 2*s + 1");
        assert_eq!(p.evaluate(&[rat(1, 2)]), rat(1, 4));
    }

    #[test]
    fn derivative_and_primitive() {
        let v = xy();
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let p = &(&x.pow(3) * &y).scale(&rat(-1, 2)) + &y.scale(&rat(3, 4));
        assert_eq!(p.derivative(0).to_string(), "-3/2*x^2*y");
        assert_eq!(p.primitive().to_string(), "2*x^3*y - 3*y");
    }
}
