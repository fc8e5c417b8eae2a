use logbs::arith::{rat, Mono, MultiPoly};
use logbs::frontend::{parse_job, parse_operator, parse_poly, JobOptions, JobSpec};
use logbs::weyl::{AlgebraProfile, WeylElement};
use proptest::prelude::*;
use std::sync::Arc;

fn xy() -> Arc<[String]> {
    vec!["x".to_string(), "y".to_string()].into()
}

fn poly(nterms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, 2), -9i64..10, 1i64..5), 0..=nterms).prop_map(|raw| {
        MultiPoly::from_terms(xy(), raw.into_iter().map(|(e, n, d)| (Mono::from(e), rat(n, d))))
    })
}

fn operator(nterms: usize) -> impl Strategy<Value = WeylElement> {
    let profile = AlgebraProfile::new(vec!["x".into(), "y".into()], 2, 2);
    let nv = profile.nvars();
    prop::collection::vec((prop::collection::vec(0u32..3, nv), -5i64..6, 1i64..4), 1..=nterms).prop_map(move |raw| {
        WeylElement::from_terms(&profile, raw.into_iter().map(|(e, n, d)| (Mono::from(e), rat(n, d))))
    })
}

fn job() -> impl Strategy<Value = JobSpec> {
    (1usize..=3)
        .prop_flat_map(|r| {
            (
                prop::collection::vec(poly(3).prop_filter("nonzero", |p| !p.is_zero()), r),
                prop::collection::vec(prop::collection::vec(0u32..3, r).prop_filter("nonzero", |v| v.iter().any(|&x| x > 0)), 1..3),
                prop::collection::vec(0u32..3, r),
                (1u32..6, 1u64..90, 1u64..900, 1u32..20, 1u32..5),
            )
        })
        .prop_map(|(f, k, m, (window, cap, timeout, kmax, jmax))| JobSpec {
            vars: vec!["x".into(), "y".into()],
            f,
            k,
            m,
            options: JobOptions { window, degree_cap: cap, timeout_secs: timeout, kmax, jmax },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_polynomials_reparse(p in poly(5)) {
        prop_assert_eq!(parse_poly(&p.to_string(), &xy()).unwrap(), p);
    }

    #[test]
    fn printed_operators_reparse(a in operator(4)) {
        prop_assert_eq!(parse_operator(&a.to_string(), a.profile()).unwrap(), a);
    }

    #[test]
    fn job_text_reparses(j in job()) {
        prop_assert_eq!(parse_job(&j.to_text()).unwrap(), j);
    }

    #[test]
    fn arithmetic_in_text_matches_arithmetic_on_values(a in poly(3), b in poly(3)) {
        let text = format!("({a}) * ({b}) - ({b})^2");
        let expected = &(&a * &b) - &(&b * &b);
        prop_assert_eq!(parse_poly(&text, &xy()).unwrap(), expected);
    }
}
