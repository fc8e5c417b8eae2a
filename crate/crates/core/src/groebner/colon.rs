//! `{ c in Q[s] : c·h ∈ I }` by degree-truncated kernels of `c -> NF(c·h)`.

use super::comm::PolyIdeal;
use super::ideal::GroebnerBasis;
use super::GroebnerError;
use crate::arith::{linalg, Mono, MultiPoly, Rational};
use crate::weyl::sparse::{self, Terms};
use crate::weyl::WeylElement;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonResult {
    /// Reduced basis of the colon ideal in the `s` variables.
    pub generators: Vec<MultiPoly>,
    /// Largest truncation degree examined.
    pub truncation: u32,
    /// Kernel ideals agreed at two consecutive truncations (or reached the unit ideal).
    pub stabilized: bool,
}

impl ColonResult {
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

/// All exponent vectors in `r` variables of total degree `<= d`, graded.
fn monomials_upto(r: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; r]];
    let mut frontier = vec![vec![0u32; r]];
    for _ in 0..d {
        let mut next = Vec::new();
        for e in &frontier {
            let last = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for i in last..r {
                let mut f = e.clone();
                f[i] += 1;
                next.push(f);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `h` lives in the basis profile and should not involve `s`; the result
/// is reported in the ring of the profile's `s` names.
pub fn colon_central(
    gb: &GroebnerBasis,
    h: &WeylElement,
    start_degree: u32,
    max_degree: u32,
    deadline: Option<Instant>,
) -> Result<ColonResult, GroebnerError> {
    let prof = gb.profile().clone();
    let s_slots = prof.s_slots();
    let r = s_slots.len();
    let svars: std::sync::Arc<[String]> = prof.s_names().into();
    let order = gb.order().clone();
    if gb.is_unit() || h.is_zero() {
        return Ok(ColonResult {
            generators: vec![MultiPoly::one(svars)],
            truncation: 0,
            stabilized: true,
        });
    }
    let mut nf: HashMap<Vec<u32>, Terms> = HashMap::new();
    nf.insert(vec![0; r], gb.normal_form_terms(sparse::resort(h.terms(), &order)));
    let mut prev: Option<Vec<MultiPoly>> = None;
    let mut d = start_degree.min(max_degree);
    loop {
        if let Some(dl) = deadline {
            if Instant::now() > dl {
                return Err(GroebnerError::Timeout);
            }
        }
        let monos = monomials_upto(r, d);
        for e in &monos {
            if nf.contains_key(e) {
                continue;
            }
            let i = e.iter().rposition(|&x| x > 0).expect("nonzero exponent");
            let mut lower = e.clone();
            lower[i] -= 1;
            let base = nf[&lower].clone();
            let si = Mono::var(prof.nvars(), s_slots[i]);
            let shifted: Terms = base.into_iter().map(|(m, c)| (m.mul(&si), c)).collect();
            nf.insert(e.clone(), gb.normal_form_terms(shifted));
        }
        // rows indexed by the monomials occurring in the normal forms
        let mut rows: BTreeMap<Mono, Vec<Rational>> = BTreeMap::new();
        for (col, e) in monos.iter().enumerate() {
            for (m, c) in &nf[e] {
                rows.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); monos.len()])[col] = c.clone();
            }
        }
        let rows: Vec<Vec<Rational>> = rows.into_values().collect();
        let ker = linalg::kernel(&rows, monos.len());
        let polys: Vec<MultiPoly> = ker
            .iter()
            .map(|v| {
                MultiPoly::from_terms(
                    svars.clone(),
                    v.iter().zip(&monos).filter(|(c, _)| !c.is_zero()).map(|(c, e)| (Mono::from(e.clone()), c.clone())),
                )
            })
            .collect();
        let basis = PolyIdeal::new(&svars, &polys)?.basis();
        let unit = basis.iter().any(|g| g.is_constant());
        if unit || (!basis.is_empty() && prev.as_ref() == Some(&basis)) {
            return Ok(ColonResult { generators: basis, truncation: d, stabilized: true });
        }
        if d >= max_degree {
            return Ok(ColonResult { generators: basis, truncation: d, stabilized: false });
        }
        prev = Some(basis);
        d += 1;
    }
}
