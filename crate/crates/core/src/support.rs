//! Zero loci of Bernstein-Sato ideals and their images under
//! `Exp(α) = e^{−2πiα}`.
//!
//! A linear factor `a·s + c` is stored with a primitive integer slope whose
//! first nonzero entry is positive. Flats are reduced row echelon systems
//! over Q. A torsion coset `{λ : λ^n = e^{2πi φ(n)}, n ∈ L}` is stored by
//! the Hermite basis of `L` and one phase in `[0, 1)` per basis row, which
//! makes equality of sets structural.

use crate::arith::{frac_mod1, hermite_normal_form, linalg, rational_roots, smith_normal_form, IntMatrix, Mono, MultiPoly, Rational};
use crate::bsideal::BsResult;
use crate::groebner::{eliminate_poly, GroebnerError, PolyIdeal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SupportError {
    #[error("generator {generator} does not split into linear factors (residual {residual})")]
    NotSplit { generator: String, residual: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

fn s_name(r: usize, i: usize) -> String {
    if r == 1 {
        "s".into()
    } else {
        format!("s{}", i + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    slope: Vec<i64>,
    constant: Rational,
}

impl LinearForm {
    /// Normalizes `coeffs·s + constant`; `None` for a zero slope.
    pub fn new(coeffs: &[Rational], constant: &Rational) -> Option<LinearForm> {
        let first = coeffs.iter().find(|c| !c.is_zero())?;
        let mut scale = Rational::from_integer(crate::arith::denom_lcm(coeffs.iter()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        scale /= Rational::from_integer(g);
        if first.is_negative() {
            scale = -scale;
        }
        let slope = coeffs.iter().map(|c| (c * &scale).to_integer().to_i64().expect("slope fits in i64")).collect();
        Some(LinearForm { slope, constant: constant * &scale })
    }

    pub fn slope(&self) -> &[i64] {
        &self.slope
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn to_poly(&self, vars: Arc<[String]>) -> MultiPoly {
        let r = vars.len();
        let mut terms: Vec<(Mono, Rational)> = self
            .slope
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (Mono::var(r, i), Rational::from_integer(a.into())))
            .collect();
        terms.push((Mono::one(r), self.constant.clone()));
        MultiPoly::from_terms(vars, terms)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.slope.iter().zip(point).map(|(&a, x)| Rational::from_integer(a.into()) * x).sum::<Rational>() + &self.constant
    }

    /// Slope in `N^r` and constant `> 0`.
    pub fn is_natural(&self) -> bool {
        self.slope.iter().all(|&a| a >= 0) && self.constant.is_positive()
    }

    fn row(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.slope.iter().map(|&a| Rational::from_integer(a.into())).collect();
        v.push(self.constant.clone());
        v
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.slope.len()).map(|i| s_name(self.slope.len(), i)).collect();
        write!(f, "{}", self.to_poly(names.into()))
    }
}

/// `p = unit · Π factors^k · residual` with `residual` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(LinearForm, usize)>,
    pub residual: MultiPoly,
}

impl Factorization {
    pub fn splits(&self) -> bool {
        self.residual.is_constant()
    }

    pub fn product(&self) -> MultiPoly {
        let vars = self.residual.vars().clone();
        let mut acc = self.residual.scale(&self.unit);
        for (l, k) in &self.factors {
            acc = &acc * &l.to_poly(vars.clone()).pow(*k as u32);
        }
        acc
    }
}

fn top_part(p: &MultiPoly) -> MultiPoly {
    let d = p.total_degree().unwrap_or(0);
    MultiPoly::from_terms(p.vars().clone(), p.terms().iter().filter(|(m, _)| m.deg() == d).cloned())
}

/// `p` with every variable except `keep` replaced by the value in `point`.
fn restrict_to_line(p: &MultiPoly, keep: usize, point: &[Rational]) -> MultiPoly {
    let mut q = p.clone();
    for (k, z) in point.iter().enumerate() {
        if k != keep {
            q = q.substitute(k, &MultiPoly::constant(p.vars().clone(), z.clone()));
        }
    }
    q
}

/// Candidate primitive slopes of the linear factors of a homogeneous `top`.
/// A factor with first nonzero slope entry at `i0` restricts to a factor of
/// each binary form in the plane `(s_{i0}, s_j)`, which pins `a_j / a_{i0}`.
fn candidate_slopes(top: &MultiPoly) -> Vec<Vec<Rational>> {
    let r = top.nvars();
    let d = top.total_degree().unwrap_or(0) as i64;
    let mut out = Vec::new();
    for i0 in 0..r {
        let mut choices: Vec<Vec<Rational>> = Vec::new();
        for j in i0 + 1..r {
            let mut pt = vec![Rational::zero(); r];
            pt[j] = Rational::one();
            let g = restrict_to_line(top, i0, &pt);
            let ratios: Vec<Rational> = if g.is_zero() {
                (-d..=d).map(|x| Rational::from_integer(x.into())).collect()
            } else if g.is_constant() {
                Vec::new()
            } else {
                rational_roots(&g).expect("univariate").into_iter().map(|(u, _)| -u).collect()
            };
            choices.push(ratios);
        }
        let mut partial: Vec<Vec<Rational>> = vec![{
            let mut v = vec![Rational::zero(); i0];
            v.push(Rational::one());
            v
        }];
        for ratios in &choices {
            let mut next = Vec::new();
            for pre in &partial {
                for q in ratios {
                    let mut v = pre.clone();
                    v.push(q.clone());
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// Small integer points, ordered by size, for choosing a line on which `p`
/// does not vanish identically.
fn probe_points(r: usize) -> impl Iterator<Item = Vec<Rational>> {
    (0i64..).flat_map(move |radius| {
        let side = 2 * radius + 1;
        let total = (side as u64).pow(r as u32);
        (0..total).filter_map(move |mut idx| {
            let mut v = Vec::with_capacity(r);
            for _ in 0..r {
                v.push((idx % side as u64) as i64 - radius);
                idx /= side as u64;
            }
            (v.iter().any(|x| x.abs() == radius)).then(|| v.into_iter().map(|x| Rational::from_integer(x.into())).collect())
        })
    })
}

fn find_linear_factor(p: &MultiPoly) -> Option<LinearForm> {
    let vars = p.vars().clone();
    let r = p.nvars();
    let top = top_part(p);
    for cand in candidate_slopes(&top) {
        let Some(form) = LinearForm::new(&cand, &Rational::zero()) else { continue };
        if top.div_exact(&form.to_poly(vars.clone())).is_none() {
            continue;
        }
        let i0 = form.slope.iter().position(|&a| a != 0).expect("nonzero slope");
        let (z, line) = probe_points(r)
            .take(10_000)
            .map(|z| {
                let line = restrict_to_line(p, i0, &z);
                (z, line)
            })
            .find(|(_, l)| !l.is_zero())?;
        if line.is_constant() {
            continue;
        }
        for (u0, _) in rational_roots(&line).expect("univariate") {
            let mut pt = z.clone();
            pt[i0] = u0;
            let c = -form.evaluate(&pt);
            let l = LinearForm { slope: form.slope.clone(), constant: c };
            if p.div_exact(&l.to_poly(vars.clone())).is_some() {
                return Some(l);
            }
        }
    }
    None
}

/// Peels off every linear factor with rational data.
pub fn factor_linear(p: &MultiPoly) -> Factorization {
    assert!(!p.is_zero(), "factor_linear of the zero polynomial");
    let vars = p.vars().clone();
    let mut rest = p.clone();
    let mut factors = Vec::new();
    while rest.total_degree().unwrap_or(0) > 0 {
        let Some(l) = find_linear_factor(&rest) else { break };
        let lp = l.to_poly(vars.clone());
        let mut k = 0;
        while let Some(q) = rest.div_exact(&lp) {
            rest = q;
            k += 1;
        }
        factors.push((l, k));
    }
    factors.sort();
    let unit = rest.leading().map(|(_, c)| c.clone()).expect("nonzero");
    Factorization { residual: rest.scale(&unit.recip()), unit, factors }
}

/// Nonempty affine subspace `{ s : A s + c = 0 }` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineFlat {
    r: usize,
    rows: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn full(r: usize) -> AffineFlat {
        AffineFlat { r, rows: Vec::new() }
    }

    /// `None` when the system is inconsistent.
    pub fn from_rows(r: usize, mut rows: Vec<Vec<Rational>>) -> Option<AffineFlat> {
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        let pivots = linalg::rref(&mut rows);
        if pivots.contains(&r) {
            return None;
        }
        Some(AffineFlat { r, rows })
    }

    pub fn from_forms(r: usize, forms: &[LinearForm]) -> Option<AffineFlat> {
        AffineFlat::from_rows(r, forms.iter().map(LinearForm::row).collect())
    }

    pub fn ambient(&self) -> usize {
        self.r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.r - self.rows.len()
    }

    pub fn normals(&self) -> Vec<LinearForm> {
        self.rows
            .iter()
            .map(|row| LinearForm::new(&row[..self.r], &row[self.r]).expect("consistent row has a slope"))
            .collect()
    }

    pub fn intersect(&self, other: &AffineFlat) -> Option<AffineFlat> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        AffineFlat::from_rows(self.r, rows)
    }

    /// `other ⊆ self`.
    pub fn contains_flat(&self, other: &AffineFlat) -> bool {
        let mut rows = other.rows.clone();
        rows.extend(self.rows.iter().cloned());
        linalg::rank(&rows) == other.rank()
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.rows.iter().all(|row| {
            let v: Rational = row[..self.r].iter().zip(p).map(|(a, x)| a * x).sum::<Rational>() + &row[self.r];
            v.is_zero()
        })
    }

    pub fn free_coordinates(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self.rows.iter().map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
        (0..self.r).filter(|c| !pivots.contains(c)).collect()
    }

    /// The point with the given values on the free coordinates.
    pub fn point(&self, free_values: &[Rational]) -> Vec<Rational> {
        let free = self.free_coordinates();
        assert_eq!(free.len(), free_values.len());
        let mut p = vec![Rational::zero(); self.r];
        for (&c, v) in free.iter().zip(free_values) {
            p[c] = v.clone();
        }
        for row in &self.rows {
            let piv = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let rest: Rational = free.iter().map(|&c| &row[c] * &p[c]).sum();
            p[piv] = -(rest + &row[self.r]);
        }
        p
    }

    /// `p` with each pivot coordinate replaced by its value on the flat.
    pub fn restrict(&self, p: &MultiPoly) -> MultiPoly {
        let vars = p.vars().clone();
        let free = self.free_coordinates();
        let mut out = p.clone();
        for row in &self.rows {
            let piv = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let mut val = MultiPoly::constant(vars.clone(), -row[self.r].clone());
            for &c in &free {
                if !row[c].is_zero() {
                    val = &val - &MultiPoly::var(vars.clone(), c).scale(&row[c]);
                }
            }
            out = out.substitute(piv, &val);
        }
        out
    }

    /// Translation by `z`.
    pub fn translate(&self, z: &[Rational]) -> AffineFlat {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut row = row.clone();
                let shift: Rational = row[..self.r].iter().zip(z).map(|(a, x)| a * x).sum();
                row[self.r] -= shift;
                row
            })
            .collect();
        AffineFlat::from_rows(self.r, rows).expect("translate keeps consistency")
    }
}

impl fmt::Display for AffineFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "C^{}", self.r);
        }
        let eqs: Vec<String> = self.normals().iter().map(|l| format!("{l} = 0")).collect();
        write!(f, "{{{}}}", eqs.join(", "))
    }
}

/// Irredundant union of flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLocus {
    pub r: usize,
    pub components: Vec<AffineFlat>,
}

fn irredundant(mut flats: Vec<AffineFlat>) -> Vec<AffineFlat> {
    flats.sort();
    flats.dedup();
    let keep: Vec<bool> = (0..flats.len())
        .map(|i| !(0..flats.len()).any(|j| j != i && flats[j].contains_flat(&flats[i])))
        .collect();
    flats.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect()
}

/// Zero locus of an ideal of `Q[s_1..s_r]` whose zero set is a union of
/// rational flats. Each step restricts the reduced basis to the flat cut out
/// by its linear elements. A restricted element that splits is branched
/// over its factors; one with only some linear factor `L` is handled by
/// `Z(J) = Z(J + L) ∪ Z(J : L^∞)`. Univariate eliminants are tried last. An
/// ideal where none of this applies is reported with its residual.
pub fn decompose_locus(r: usize, gens: &[MultiPoly]) -> Result<LinearLocus, SupportError> {
    let gens: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(vars) = gens.first().map(|g| g.vars().clone()) else {
        return Ok(LinearLocus { r, components: vec![AffineFlat::full(r)] });
    };
    let mut flats = Vec::new();
    let mut stack = vec![gens];
    while let Some(gs) = stack.pop() {
        let basis = PolyIdeal::new(&vars, &gs)?.basis();
        if basis.iter().any(|g| g.is_constant()) {
            continue;
        }
        let (linear, rest): (Vec<MultiPoly>, Vec<MultiPoly>) =
            basis.into_iter().partition(|g| g.total_degree().unwrap_or(0) <= 1);
        let forms: Vec<LinearForm> = linear.iter().map(linear_form).collect();
        let Some(flat) = AffineFlat::from_forms(r, &forms) else { continue };
        let restricted: Vec<MultiPoly> = rest.iter().map(|g| flat.restrict(g)).filter(|g| !g.is_zero()).collect();
        if restricted.is_empty() {
            flats.push(flat);
            continue;
        }
        // the node's own generators often split where the reduced basis does not
        let mut candidates: Vec<MultiPoly> = gs.iter().map(|g| flat.restrict(g)).filter(|g| !g.is_constant()).collect();
        candidates.extend(restricted.iter().cloned());
        candidates.dedup();
        let with = |l: &LinearForm| {
            let mut next = linear.clone();
            next.extend(restricted.iter().cloned());
            next.push(l.to_poly(vars.clone()));
            next
        };
        let facs: Vec<(&MultiPoly, Factorization)> = candidates.iter().map(|g| (g, factor_linear(g))).collect();
        if let Some((_, f)) = facs.iter().filter(|(_, f)| f.splits()).min_by_key(|(_, f)| f.factors.len()) {
            for (l, _) in &f.factors {
                stack.push(with(l));
            }
            continue;
        }
        if let Some((_, f)) = facs.iter().find(|(_, f)| !f.factors.is_empty()) {
            let l = &f.factors[0].0;
            stack.push(with(l));
            let mut base = linear.clone();
            base.extend(restricted.iter().cloned());
            stack.push(saturate(&vars, &base, &l.to_poly(vars.clone()))?);
            continue;
        }
        let mut base = linear.clone();
        base.extend(restricted.iter().cloned());
        let mut branched = false;
        for i in flat.free_coordinates() {
            let keep = [i];
            let Some(e) = eliminate_poly(&vars, &base, &keep)?.into_iter().find(|e| !e.is_zero()) else { continue };
            let f = factor_linear(&e);
            if !f.splits() {
                return Err(SupportError::NotSplit { generator: e.to_string(), residual: f.residual.to_string() });
            }
            for (l, _) in &f.factors {
                stack.push(with(l));
            }
            branched = true;
            break;
        }
        if !branched {
            let (g, f) = &facs[0];
            return Err(SupportError::NotSplit { generator: g.to_string(), residual: f.residual.to_string() });
        }
    }
    Ok(LinearLocus { r, components: irredundant(flats) })
}

fn linear_form(p: &MultiPoly) -> LinearForm {
    let r = p.nvars();
    let mut a = vec![Rational::zero(); r];
    let mut c = Rational::zero();
    for (m, k) in p.terms() {
        match (0..r).find(|&i| m.get(i) > 0) {
            Some(i) => a[i] = k.clone(),
            None => c = k.clone(),
        }
    }
    LinearForm::new(&a, &c).expect("nonconstant linear polynomial")
}

/// `J : L^∞ = (J + ⟨1 − y·L⟩) ∩ Q[s]`.
fn saturate(vars: &Arc<[String]>, gens: &[MultiPoly], l: &MultiPoly) -> Result<Vec<MultiPoly>, SupportError> {
    let r = vars.len();
    let mut names: Vec<String> = vars.to_vec();
    names.push("_y".into());
    let big: Arc<[String]> = names.into();
    let map: Vec<usize> = (0..r).collect();
    let mut ext: Vec<MultiPoly> = gens.iter().map(|g| g.embed(big.clone(), &map)).collect();
    let yl = &MultiPoly::var(big.clone(), r) * &l.embed(big.clone(), &map);
    ext.push(&MultiPoly::one(big.clone()) - &yl);
    let kept = eliminate_poly(&big, &ext, &map)?;
    // kept elements are free of y, so y may map anywhere
    let back: Vec<usize> = (0..r).chain([0]).collect();
    Ok(kept.iter().map(|g| g.embed(vars.clone(), &back)).collect())
}

/// `{ λ ∈ (C*)^r : λ^{n_k} = e^{2πi φ_k} }` for the Hermite basis `n_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionCoset {
    r: usize,
    lattice: Vec<Vec<i64>>,
    phases: Vec<Rational>,
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Integer coordinates of `n` in the Hermite basis `h`, if `n` lies in its span.
fn lattice_coords(h: &[Vec<i64>], n: &[i64]) -> Option<Vec<i64>> {
    let mut rest: Vec<i64> = n.to_vec();
    let mut coords = Vec::with_capacity(h.len());
    for row in h {
        let p = row.iter().position(|&x| x != 0).expect("nonzero row");
        if rest[p] % row[p] != 0 {
            return None;
        }
        let k = rest[p] / row[p];
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= k * y;
        }
        coords.push(k);
    }
    rest.iter().all(|&x| x == 0).then_some(coords)
}

impl TorsionCoset {
    pub fn full(r: usize) -> TorsionCoset {
        TorsionCoset { r, lattice: Vec::new(), phases: Vec::new() }
    }

    /// Canonical form of the equations `λ^{rows_k} = e^{2πi phases_k}`;
    /// `None` when they are inconsistent.
    pub fn new(r: usize, rows: &[Vec<i64>], phases: &[Rational]) -> Option<TorsionCoset> {
        assert_eq!(rows.len(), phases.len());
        let k = rows.len();
        let aug: Vec<Vec<BigInt>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
                v.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                v
            })
            .collect();
        let h = hermite_normal_form(&IntMatrix::from_rows(&aug, r + k));
        let mut lattice = Vec::new();
        let mut out_phases = Vec::new();
        for row in h.row_vecs() {
            let t: Rational = row[r..].iter().zip(phases).map(|(c, p)| Rational::from_integer(c.clone()) * p).sum();
            if row[..r].iter().all(|x| x.is_zero()) {
                if !frac_mod1(&t).is_zero() {
                    return None;
                }
                continue;
            }
            lattice.push(row[..r].iter().map(|x| x.to_i64().expect("lattice entry fits in i64")).collect());
            out_phases.push(frac_mod1(&t));
        }
        Some(TorsionCoset { r, lattice, phases: out_phases })
    }

    pub fn ambient(&self) -> usize {
        self.r
    }

    pub fn lattice(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    pub fn phases(&self) -> &[Rational] {
        &self.phases
    }

    pub fn dimension(&self) -> usize {
        self.r - self.lattice.len()
    }

    /// Lattice is saturated: the set is a single translate of a subtorus.
    pub fn is_irreducible(&self) -> bool {
        if self.lattice.is_empty() {
            return true;
        }
        let f = crate::arith::invariant_factors(&IntMatrix::from_rows(&to_big(&self.lattice), self.r));
        f.iter().all(|d| d.is_one())
    }

    /// Whether `Exp(α) = e^{−2πiα}` lies in the set.
    pub fn contains_exp(&self, alpha: &[Rational]) -> bool {
        self.lattice.iter().zip(&self.phases).all(|(n, phi)| {
            let dot: Rational = n.iter().zip(alpha).map(|(&a, x)| Rational::from_integer(a.into()) * x).sum();
            frac_mod1(&(phi + dot)).is_zero()
        })
    }

    /// `other ⊆ self`.
    pub fn contains_coset(&self, other: &TorsionCoset) -> bool {
        self.lattice.iter().zip(&self.phases).all(|(n, phi)| match lattice_coords(&other.lattice, n) {
            None => false,
            Some(t) => {
                let val: Rational = t.iter().zip(&other.phases).map(|(&c, p)| Rational::from_integer(c.into()) * p).sum();
                frac_mod1(&(val - phi)).is_zero()
            }
        })
    }
}

impl fmt::Display for TorsionCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lattice.is_empty() {
            return write!(f, "(C*)^{}", self.r);
        }
        let eqs: Vec<String> = self
            .lattice
            .iter()
            .zip(&self.phases)
            .map(|(n, phi)| {
                let mut num = Vec::new();
                let mut den = Vec::new();
                for (i, &a) in n.iter().enumerate() {
                    let name = if self.r == 1 { "l".to_string() } else { format!("l{}", i + 1) };
                    let term = if a.abs() == 1 { name } else { format!("{name}^{}", a.abs()) };
                    if a > 0 {
                        num.push(term);
                    } else if a < 0 {
                        den.push(term);
                    }
                }
                let lhs = if num.is_empty() { "1".to_string() } else { num.join("*") };
                let rhs = if phi.is_zero() { "1".to_string() } else { format!("e(2pi*i*{phi})") };
                if den.is_empty() {
                    format!("{lhs} = {rhs}")
                } else {
                    format!("{lhs} = {rhs} * {}", den.join("*"))
                }
            })
            .collect();
        write!(f, "{{{}}}", eqs.join(", "))
    }
}

/// Integer basis of `rowspan_Q(rows) ∩ Z^r`.
fn saturated_lattice(rows: &[Vec<Rational>], r: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ker = linalg::kernel(rows, r);
    if ker.is_empty() {
        return (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    }
    let kint: Vec<Vec<BigInt>> = ker
        .iter()
        .map(|v| {
            let l = Rational::from_integer(crate::arith::denom_lcm(v.iter()));
            v.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let (_, d, v) = smith_normal_form(&IntMatrix::from_rows(&kint, r));
    let rank = (0..kint.len().min(r)).filter(|&i| !d[(i, i)].is_zero()).count();
    let basis: Vec<Vec<BigInt>> = (rank..r).map(|j| (0..r).map(|i| v[(i, j)].clone()).collect()).collect();
    let h = hermite_normal_form(&IntMatrix::from_rows(&basis, r));
    h.row_vecs().into_iter().map(|row| row.iter().map(|x| x.to_i64().expect("fits in i64")).collect()).collect()
}

/// Image of a flat under `Exp`: `a·s + c = 0` maps into `λ^a = e^{2πi c}`.
pub fn exp_image(v: &AffineFlat) -> TorsionCoset {
    let r = v.r;
    let slopes: Vec<Vec<Rational>> = v.rows.iter().map(|row| row[..r].to_vec()).collect();
    let consts: Vec<Rational> = v.rows.iter().map(|row| row[r].clone()).collect();
    let lattice = saturated_lattice(&slopes, r);
    // n = Σ μ_k a_k, so λ^n = e^{2πi Σ μ_k c_k} on the image
    let at: Vec<Vec<Rational>> = (0..r).map(|j| slopes.iter().map(|a| a[j].clone()).collect()).collect();
    let phases: Vec<Rational> = lattice
        .iter()
        .map(|n| {
            let b: Vec<Rational> = n.iter().map(|&x| Rational::from_integer(x.into())).collect();
            let mu = linalg::solve(&at, &b).expect("lattice row lies in the span");
            mu.iter().zip(&consts).map(|(m, c)| m * c).sum()
        })
        .collect();
    TorsionCoset::new(r, &lattice, &phases).expect("image of a nonempty flat")
}

pub fn coset_equal(a: &TorsionCoset, b: &TorsionCoset) -> bool {
    a == b
}

/// Irredundant, sorted list of the Exp-images of the components.
pub fn exp_locus(locus: &LinearLocus) -> Vec<TorsionCoset> {
    let mut cs: Vec<TorsionCoset> = locus.components.iter().map(exp_image).collect();
    cs.sort();
    cs.dedup();
    let keep: Vec<bool> = (0..cs.len()).map(|i| !(0..cs.len()).any(|j| j != i && cs[j].contains_coset(&cs[i]))).collect();
    cs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub factorizations: Vec<Factorization>,
    pub locus: Option<LinearLocus>,
    pub exp_components: Vec<TorsionCoset>,
    pub checks: Vec<Check>,
}

impl StructuralReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Shape checks on a computed ideal; `m` marks a localized result.
pub fn structural_check(result: &BsResult, r: usize, m: Option<&[u32]>) -> StructuralReport {
    let gens = &result.generators;
    let facs: Vec<Factorization> = gens.iter().filter(|g| !g.is_zero()).map(factor_linear).collect();
    let mut checks = Vec::new();
    checks.push(Check { name: "nonzero", passed: !gens.is_empty(), detail: format!("{} generators", gens.len()) });
    let unit = gens.iter().any(|g| g.is_constant() && !g.is_zero());
    checks.push(Check { name: "proper", passed: !unit, detail: if unit { "unit ideal".into() } else { String::new() } });

    let split: Vec<&Factorization> = facs.iter().filter(|f| f.splits()).collect();
    let detail = match facs.iter().find(|f| !f.splits()) {
        Some(f) if split.is_empty() => format!("residual {}", f.residual),
        _ => split.first().map(|f| f.product().to_string()).unwrap_or_default(),
    };
    checks.push(Check { name: "linear-factor", passed: !split.is_empty(), detail });

    let natural = split.iter().find(|f| f.factors.iter().all(|(l, _)| l.is_natural()));
    let detail = match natural {
        Some(f) => f.product().to_string(),
        None => split
            .iter()
            .flat_map(|f| f.factors.iter())
            .filter(|(l, _)| !l.is_natural())
            .map(|(l, _)| l.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    };
    checks.push(Check { name: "natural-slopes", passed: natural.is_some(), detail });

    let (locus, exp_components, residual) = match decompose_locus(r, gens) {
        Ok(l) => {
            let e = exp_locus(&l);
            (Some(l), e, None)
        }
        Err(e) => (None, Vec::new(), Some(e.to_string())),
    };
    checks.push(Check {
        name: "conjecture-shape",
        passed: residual.is_none(),
        detail: residual.clone().unwrap_or_else(|| format!("{} components", locus.as_ref().map_or(0, |l| l.components.len()))),
    });
    let torsion = locus.is_some()
        && exp_components.iter().all(|c| c.phases().iter().all(|p| !p.is_negative() && *p < Rational::one()));
    checks.push(Check {
        name: "torsion",
        passed: torsion,
        detail: format!("{} exp components", exp_components.len()),
    });

    if let Some(m) = m.filter(|m| m.iter().any(|&x| x > 0)) {
        let inverted: Vec<usize> = (0..r).filter(|&i| m[i] > 0).collect();
        let uses: Vec<String> = gens
            .iter()
            .filter(|g| g.terms().iter().any(|(mo, _)| inverted.iter().any(|&i| mo.get(i) > 0)))
            .map(|g| g.to_string())
            .collect();
        checks.push(Check { name: "independent-of-inverted", passed: uses.is_empty(), detail: uses.join("; ") });
        let flat: Vec<String> = split
            .iter()
            .flat_map(|f| f.factors.iter())
            .filter(|(l, _)| (0..r).filter(|i| !inverted.contains(i)).all(|i| l.slope[i] == 0))
            .map(|(l, _)| l.to_string())
            .collect();
        checks.push(Check { name: "slope-condition", passed: flat.is_empty(), detail: flat.join("; ") });
    }
    StructuralReport { factorizations: facs, locus, exp_components, checks }
}
