//! Sorted sparse term lists and the Leibniz product of normally ordered
//! monomials. Shared by `WeylElement` and the Gröbner engine.

use super::order::TermOrder;
use super::profile::AlgebraProfile;
use crate::arith::{Mono, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub type Terms = Vec<(Mono, Rational)>;

/// Product of two normally ordered monomials `a * b`, expanded by
/// `dx^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) dx^(b-k)` in every pair
/// (with `h^(2k)` in the homogenized algebra).
pub fn mono_product(profile: &AlgebraProfile, a: &Mono, b: &Mono) -> Vec<(Mono, BigInt)> {
    let p = profile.npairs();
    // (pair index, max k)
    let mut active: Vec<(usize, u32)> = Vec::new();
    for i in 0..p {
        let k = a.get(p + i).min(b.get(i));
        if k > 0 {
            active.push((i, k));
        }
    }
    let base = a.mul(b);
    if active.is_empty() {
        return vec![(base, BigInt::one())];
    }
    // per active pair: list of (k, coefficient)
    let tables: Vec<Vec<(u32, BigInt)>> = active
        .iter()
        .map(|&(i, kmax)| {
            let n = a.get(p + i) as u64;
            let c = b.get(i) as u64;
            let mut out = Vec::with_capacity(kmax as usize + 1);
            let mut coef = BigInt::one();
            out.push((0, coef.clone()));
            for k in 1..=kmax as u64 {
                coef = coef * BigInt::from((n - k + 1) * (c - k + 1)) / BigInt::from(k);
                out.push((k as u32, coef.clone()));
            }
            out
        })
        .collect();
    let h = profile.h();
    let mut result = Vec::new();
    let mut idx = vec![0usize; active.len()];
    loop {
        let mut m = base.clone();
        let mut coef = BigInt::one();
        let mut ksum = 0u32;
        for (slot, &(i, _)) in active.iter().enumerate() {
            let (k, ref c) = tables[slot][idx[slot]];
            if k > 0 {
                m.set(i, m.get(i) - k);
                m.set(p + i, m.get(p + i) - k);
                coef *= c;
                ksum += k;
            }
        }
        if let Some(hs) = h {
            m.set(hs, m.get(hs).checked_add(2 * ksum).expect("exponent overflow"));
        }
        result.push((m, coef));
        // odometer
        let mut j = 0;
        loop {
            if j == idx.len() {
                return result;
            }
            idx[j] += 1;
            if idx[j] < tables[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// True when left multiplication by `m` never triggers a commutation with `terms`.
fn commutes_trivially(profile: &AlgebraProfile, m: &Mono, terms: &[(Mono, Rational)]) -> bool {
    let p = profile.npairs();
    let ders: Vec<usize> = (0..p).filter(|&i| m.get(p + i) > 0).collect();
    if ders.is_empty() {
        return true;
    }
    terms.iter().all(|(t, _)| ders.iter().all(|&i| t.get(i) == 0))
}

/// `c * m * g`, returned sorted descending under `order`.
pub fn left_mul_term(
    profile: &AlgebraProfile,
    order: &TermOrder,
    m: &Mono,
    c: &Rational,
    g: &[(Mono, Rational)],
) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    if commutes_trivially(profile, m, g) {
        return g.iter().map(|(t, a)| (m.mul(t), a * c)).collect();
    }
    let mut raw: Vec<(Mono, Rational)> = Vec::with_capacity(g.len() * 2);
    for (t, a) in g {
        let ac = a * c;
        for (mono, k) in mono_product(profile, m, t) {
            if k.is_one() {
                raw.push((mono, ac.clone()));
            } else {
                raw.push((mono, &ac * Rational::from_integer(k)));
            }
        }
    }
    normalize(raw, order)
}

/// Sorts descending and merges equal monomials, dropping zeros.
pub fn normalize(mut raw: Terms, order: &TermOrder) -> Terms {
    raw.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Terms = Vec::with_capacity(raw.len());
    for (m, c) in raw {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

/// `a + k * b` for sorted term lists.
pub fn axpy(a: &[(Mono, Rational)], k: &Rational, b: &[(Mono, Rational)], order: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), &b[j].1 * k));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1 * k;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * k)));
    out
}

/// Full product of two sorted term lists.
pub fn mul_terms(
    profile: &AlgebraProfile,
    order: &TermOrder,
    a: &[(Mono, Rational)],
    b: &[(Mono, Rational)],
) -> Terms {
    let mut raw = Vec::new();
    for (m, c) in a {
        raw.extend(left_mul_term(profile, order, m, c, b));
    }
    normalize(raw, order)
}

pub fn resort(terms: &[(Mono, Rational)], order: &TermOrder) -> Terms {
    let mut t = terms.to_vec();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}
