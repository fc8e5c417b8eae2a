use logbs::arith::{int, Mono, MultiPoly};
use logbs::weyl::{act_on_twisted, right_transporter, t_shift_action, AlgebraProfile, TwistContext, TwistedElement, WeylElement};
use proptest::prelude::*;
use std::sync::Arc;

fn profile_22() -> Arc<AlgebraProfile> {
    AlgebraProfile::new(vec!["x".into(), "y".into()], 2, 2)
}

/// Random element with at most `nterms` terms of total degree <= 4.
fn element(profile: Arc<AlgebraProfile>, nterms: usize) -> impl Strategy<Value = WeylElement> {
    let nv = profile.nvars();
    prop::collection::vec((prop::collection::vec(0u32..3, nv), -3i64..4), 1..=nterms).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > 4 {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (Mono::from(e), int(c))
        });
        WeylElement::from_terms(&profile, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative(
        a in element(profile_22(), 3),
        b in element(profile_22(), 3),
        c in element(profile_22(), 3),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn homogenize_round_trips(a in element(profile_22(), 4)) {
        let h = a.homogenize();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(), a);
    }

    #[test]
    fn homogenized_product_dehomogenizes(a in element(profile_22(), 3), b in element(profile_22(), 3)) {
        let ab = (&a.homogenize() * &b.homogenize()).dehomogenize();
        prop_assert_eq!(ab, &a * &b);
    }
}

/// Random element of the log subalgebra generated by x, dx, t, t*dt.
fn log_element() -> impl Strategy<Value = WeylElement> {
    let p = profile_22();
    prop::collection::vec((prop::collection::vec(0u32..3, 6), -3i64..4), 1..=3).prop_map(move |raw| {
        let mut acc = WeylElement::zero(&p);
        for (e, c) in raw {
            let mut term = WeylElement::constant(&p, int(c));
            for (j, slot) in [p.x(0), p.x(1), p.dx(0), p.dx(1)].into_iter().enumerate() {
                term = &term * &WeylElement::var(&p, slot).pow(e[j]);
            }
            for i in 0..2 {
                let theta = &WeylElement::var(&p, p.t(i)) * &WeylElement::var(&p, p.dt(i));
                term = &term * &theta.pow(e[4 + i] % 2);
            }
            acc = &acc + &term;
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transporter_identity(p in log_element(), g in prop::collection::vec(0u32..3, 2)) {
        let q = right_transporter(&p, &g).expect("log element transports");
        let prof = p.profile().clone();
        let tg = WeylElement::t_power(&prof, &g);
        prop_assert_eq!(&p * &tg, &tg * &q);
    }
}

fn dns_element(profile: Arc<AlgebraProfile>) -> impl Strategy<Value = WeylElement> {
    let nv = profile.nvars();
    prop::collection::vec((prop::collection::vec(0u32..2, nv), -2i64..3), 1..=3)
        .prop_map(move |raw| WeylElement::from_terms(&profile, raw.into_iter().map(|(e, c)| (Mono::from(e), int(c)))))
}

fn ctx() -> Arc<TwistContext> {
    let v = logbs::arith::var_names(&["x", "y"]);
    let x = MultiPoly::var(v.clone(), 0);
    let y = MultiPoly::var(v.clone(), 1);
    let f1 = &(&x * &x) + &y;
    let f2 = &(&x * &y) - &MultiPoly::constant(v, int(1));
    TwistContext::new(vec!["x".into(), "y".into()], &[f1, f2])
}

fn twisted() -> impl Strategy<Value = TwistedElement> {
    let c = ctx();
    (prop::collection::vec((prop::collection::vec(0u32..2, 4), -2i64..3), 1..=3), 0u32..2).prop_map(move |(raw, n)| {
        let num = MultiPoly::from_terms(c.vars().clone(), raw.into_iter().map(|(e, k)| (Mono::from(e), int(k))));
        TwistedElement::new(&c, num, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn action_is_a_module_action(
        p in dns_element(ctx().profile().clone()),
        q in dns_element(ctx().profile().clone()),
        v in twisted(),
    ) {
        let lhs = act_on_twisted(&(&p * &q), &v).unwrap();
        let rhs = act_on_twisted(&p, &act_on_twisted(&q, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shifts_compose(
        g1 in prop::collection::vec(0u32..3, 2),
        g2 in prop::collection::vec(0u32..3, 2),
        v in twisted(),
    ) {
        let sum: Vec<u32> = g1.iter().zip(&g2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t_shift_action(&sum, &v), t_shift_action(&g1, &t_shift_action(&g2, &v)));
    }
}

#[test]
fn generators_commute_as_expected() {
    let p = profile_22();
    let one = WeylElement::one(&p);
    let zero = WeylElement::zero(&p);
    for i in 0..2 {
        for j in 0..2 {
            let expect = if i == j { &one } else { &zero };
            let dx = WeylElement::var(&p, p.dx(i));
            let x = WeylElement::var(&p, p.x(j));
            assert_eq!(&dx.commutator(&x).unwrap(), expect);
            let dt = WeylElement::var(&p, p.dt(i));
            let t = WeylElement::var(&p, p.t(j));
            assert_eq!(&dt.commutator(&t).unwrap(), expect);
        }
    }
    let s = WeylElement::var(&p, p.s(0));
    for slot in 0..p.nvars() {
        assert!(s.commutator(&WeylElement::var(&p, slot)).unwrap().is_zero());
    }
    let h = p.homogenized();
    let hv = WeylElement::var(&h, h.h().unwrap());
    for slot in 0..h.nvars() {
        assert!(hv.commutator(&WeylElement::var(&h, slot)).unwrap().is_zero());
    }
}

#[test]
fn unit_acts_trivially() {
    let c = ctx();
    let g = TwistedElement::generator(&c);
    assert_eq!(act_on_twisted(&WeylElement::one(c.profile()), &g).unwrap(), g);
}
