use logbs::arith::{int, Mono, MultiPoly};
use logbs::groebner::{
    colon_central, eliminate, normal_form, weight_gb, GbConfig, GroebnerBasis, GroebnerError, LeftIdeal, PolyIdeal,
};
use logbs::weyl::{AlgebraProfile, TermOrder, WeylElement};
use proptest::prelude::*;
use std::sync::Arc;
use std::time::Duration;

fn d1s() -> Arc<AlgebraProfile> {
    AlgebraProfile::dns(vec!["x".into()], 1)
}

struct Vars {
    p: Arc<AlgebraProfile>,
}

impl Vars {
    fn x(&self) -> WeylElement {
        WeylElement::var(&self.p, self.p.x(0))
    }
    fn dx(&self) -> WeylElement {
        WeylElement::var(&self.p, self.p.dx(0))
    }
    fn s(&self) -> WeylElement {
        WeylElement::var(&self.p, self.p.s(0))
    }
    fn c(&self, k: i64) -> WeylElement {
        WeylElement::constant(&self.p, int(k))
    }
}

fn ideal(p: &Arc<AlgebraProfile>, gens: Vec<WeylElement>) -> LeftIdeal {
    LeftIdeal::new(p, gens, TermOrder::degrevlex(p)).complete(&GbConfig::default()).unwrap()
}

#[test]
fn normal_form_examples() {
    let v = Vars { p: d1s() };
    let euler = &(&v.x() * &v.dx()) - &v.s();
    let i = ideal(&v.p, vec![euler.clone()]);
    assert!(normal_form(&euler, &i).unwrap().is_zero());
    assert!(normal_form(&WeylElement::zero(&v.p), &i).unwrap().is_zero());
    let p = &v.x().pow(2) * &v.dx().pow(2);
    let expect = &v.s().pow(2) - &v.s();
    assert_eq!(normal_form(&p, &i).unwrap(), expect);
}

#[test]
fn normal_form_needs_a_basis() {
    let v = Vars { p: d1s() };
    let i = LeftIdeal::new(&v.p, vec![v.x()], TermOrder::degrevlex(&v.p));
    assert!(matches!(normal_form(&v.x(), &i), Err(GroebnerError::NotComputed)));
}

#[test]
fn buchberger_examples() {
    let p = AlgebraProfile::new(vec!["x".into()], 0, 0);
    let v = Vars { p: p.clone() };
    assert_eq!(ideal(&p, vec![v.x()]).basis().unwrap().elements(), vec![v.x()]);
    assert_eq!(ideal(&p, vec![v.dx()]).basis().unwrap().elements(), vec![v.dx()]);
    // x and dx generate the unit ideal
    assert!(ideal(&p, vec![v.x(), v.dx()]).basis().unwrap().is_unit());
}

#[test]
fn elimination_examples() {
    let v = Vars { p: d1s() };
    let euler = &(&v.x() * &v.dx()) - &v.s();
    let i = LeftIdeal::new(&v.p, vec![euler, v.x()], TermOrder::degrevlex(&v.p));
    let keep = v.p.s_slots();
    let out = eliminate(&i, &keep, &GbConfig::default()).unwrap();
    assert_eq!(out, vec![&v.s() + &v.c(1)]);

    let i = LeftIdeal::new(&v.p, vec![v.x()], TermOrder::degrevlex(&v.p));
    assert!(eliminate(&i, &keep, &GbConfig::default()).unwrap().is_empty());

    let p2 = AlgebraProfile::dns(vec!["x".into()], 2);
    let s1 = WeylElement::var(&p2, p2.s(0));
    let s2 = WeylElement::var(&p2, p2.s(1));
    let i = LeftIdeal::new(&p2, vec![&s1 - &s2], TermOrder::degrevlex(&p2));
    assert_eq!(eliminate(&i, &p2.s_slots(), &GbConfig::default()).unwrap(), vec![&s1 - &s2]);
}

#[test]
fn colon_examples() {
    let v = Vars { p: d1s() };
    let euler = &(&v.x() * &v.dx()) - &v.s();
    let i = ideal(&v.p, vec![euler.clone(), v.x().pow(2)]);
    let gb = i.basis().unwrap();
    let out = colon_central(gb, &v.x(), 1, 6, None).unwrap();
    assert!(out.stabilized);
    let svars: Arc<[String]> = v.p.s_names().into();
    let s2 = &MultiPoly::var(svars.clone(), 0) + &MultiPoly::constant(svars.clone(), int(2));
    let col = PolyIdeal::new(&svars, &out.generators).unwrap();
    assert!(col.contains(&s2));

    // colon by 1 is the intersection with Q[s]
    let one = colon_central(gb, &v.c(1), 1, 6, None).unwrap();
    let elim = eliminate(&i, &v.p.s_slots(), &GbConfig::default()).unwrap();
    let elim: Vec<MultiPoly> = elim.iter().map(|g| g.to_poly(svars.clone(), &v.p.s_slots()).unwrap()).collect();
    assert!(PolyIdeal::new(&svars, &one.generators).unwrap().same_ideal(&PolyIdeal::new(&svars, &elim).unwrap()));

    let whole = ideal(&v.p, vec![v.c(1)]);
    assert!(colon_central(whole.basis().unwrap(), &v.x(), 1, 4, None).unwrap().is_unit());
}

#[test]
fn weight_basis_of_graph_ideal() {
    let p = AlgebraProfile::new(vec!["x".into()], 1, 0);
    let x = WeylElement::var(&p, p.x(0));
    let t = WeylElement::var(&p, p.t(0));
    let g = &t - &x.pow(2);
    let mut w = vec![0; p.nvars()];
    w[p.t(0)] = -1;
    w[p.dt(0)] = 1;
    let wb = weight_gb(&[g.clone()], &w, &GbConfig::default()).unwrap();
    assert_eq!(wb.elements.len(), 1);
    assert_eq!(wb.elements[0].monic(), g.monic());
    // t*dt has weight zero and is its own initial form
    let theta = &t * &WeylElement::var(&p, p.dt(0));
    assert_eq!(logbs::groebner::initial_form(&theta, &w), theta);
}

#[test]
fn cap_is_reported() {
    let v = Vars { p: d1s() };
    let g = &v.x().pow(3) - &v.dx().pow(3);
    let h = &(&v.x() * &v.dx()) - &v.s();
    let err = GroebnerBasis::compute(&v.p, &TermOrder::degrevlex(&v.p), &[g, h], &GbConfig::with_cap(3)).unwrap_err();
    assert!(matches!(err, GroebnerError::Capped { .. }));
}

fn profile_2s() -> Arc<AlgebraProfile> {
    AlgebraProfile::dns(vec!["x".into(), "y".into()], 1)
}

fn small_element() -> impl Strategy<Value = WeylElement> {
    let p = profile_2s();
    let nv = p.nvars();
    prop::collection::vec((prop::collection::vec(0u32..2, nv), -2i64..3), 1..=3).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > 2 {
                let i = e.iter().rposition(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            if e.iter().all(|&x| x == 0) {
                e[0] = 1;
            }
            (Mono::from(e), int(c))
        });
        WeylElement::from_terms(&p, terms)
    })
}

fn try_gb(gens: &[WeylElement]) -> Option<GroebnerBasis> {
    let p = profile_2s();
    let cfg = GbConfig::with_cap(14).timeout(Some(Duration::from_secs(5)));
    GroebnerBasis::compute(&p, &TermOrder::degrevlex(&p), gens, &cfg).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn basis_properties(gens in prop::collection::vec(small_element(), 1..=3), scale in 1i64..5) {
        let Some(gb) = try_gb(&gens) else { return Ok(()); };
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
        prop_assert!(gb.verify(&gens, |n| (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect()));
        let mut shuffled: Vec<WeylElement> = gens.iter().rev().map(|g| g.scale(&int(scale))).collect();
        shuffled.rotate_left(1);
        let gb2 = try_gb(&shuffled).expect("same ideal completes");
        prop_assert_eq!(gb.elements(), gb2.elements());
    }

    #[test]
    fn cofactors_reconstruct_basis(gens in prop::collection::vec(small_element(), 1..=3), q in small_element()) {
        let p = profile_2s();
        let mut cfg = GbConfig::with_cap(14).timeout(Some(Duration::from_secs(5)));
        cfg.track = vec![true; gens.len()];
        let Ok(gb) = GroebnerBasis::compute(&p, &TermOrder::degrevlex(&p), &gens, &cfg) else { return Ok(()); };
        let cofs = gb.cofactors().unwrap();
        for (b, row) in gb.elements().iter().zip(&cofs) {
            let mut acc = WeylElement::zero(&p);
            for (c, g) in row.iter().zip(&gens) {
                acc = &acc + &(c * g);
            }
            prop_assert_eq!(&acc, b);
        }
        let (r, c) = gb.reduce_tracked(&q).unwrap();
        let mut acc = r;
        for (c, g) in c.iter().zip(&gens) {
            acc = &acc + &(c * g);
        }
        prop_assert_eq!(acc, q);
    }

    #[test]
    fn normal_form_idempotent(gens in prop::collection::vec(small_element(), 1..=2), q in small_element()) {
        let Some(gb) = try_gb(&gens) else { return Ok(()); };
        let r = gb.normal_form(&q);
        prop_assert_eq!(gb.normal_form(&r), r.clone());
        // q - r lies in the ideal
        prop_assert!(gb.contains(&(&q - &r)));
    }

    #[test]
    fn elimination_respects_containment(gens in prop::collection::vec(small_element(), 1..=2), extra in small_element()) {
        let p = profile_2s();
        let cfg = GbConfig::with_cap(14).timeout(Some(Duration::from_secs(5)));
        let keep = p.s_slots();
        let small = LeftIdeal::new(&p, gens.clone(), TermOrder::degrevlex(&p));
        let mut more = gens.clone();
        more.push(extra);
        let big = LeftIdeal::new(&p, more.clone(), TermOrder::degrevlex(&p));
        let (Ok(a), Ok(gb_big)) = (eliminate(&small, &keep, &cfg), GroebnerBasis::compute(&p, &TermOrder::degrevlex(&p), &more, &cfg)) else {
            return Ok(());
        };
        for g in &a {
            prop_assert!(gb_big.contains(g));
        }
        let all: Vec<usize> = (0..p.nvars()).collect();
        if let Ok(full) = eliminate(&big, &all, &cfg) {
            let gb_full = GroebnerBasis::compute(&p, &TermOrder::degrevlex(&p), &full, &cfg).unwrap();
            prop_assert_eq!(gb_full.elements(), gb_big.elements());
        }
    }

    #[test]
    fn colon_contains_intersection(gens in prop::collection::vec(small_element(), 1..=2), hx in 0u32..3) {
        let p = profile_2s();
        let Some(gb) = try_gb(&gens) else { return Ok(()); };
        let h = WeylElement::var(&p, p.x(0)).pow(hx);
        let svars: Arc<[String]> = p.s_names().into();
        let cfg = GbConfig::with_cap(14).timeout(Some(Duration::from_secs(5)));
        let i = LeftIdeal::new(&p, gens.clone(), TermOrder::degrevlex(&p));
        let Ok(inter) = eliminate(&i, &p.s_slots(), &cfg) else { return Ok(()); };
        let col = colon_central(&gb, &h, 1, 4, None).unwrap();
        let col = PolyIdeal::new(&svars, &col.generators).unwrap();
        for g in inter {
            prop_assert!(col.contains(&g.to_poly(svars.clone(), &p.s_slots()).unwrap()));
        }
    }
}
