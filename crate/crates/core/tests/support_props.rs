use logbs::arith::{int, rat, var_names, MultiPoly, Rational};
use logbs::support::{coset_equal, decompose_locus, exp_image, factor_linear, AffineFlat, LinearForm, TorsionCoset};
use proptest::prelude::*;
use std::sync::Arc;

fn svars(r: usize) -> Arc<[String]> {
    (1..=r).map(|i| format!("s{i}")).collect::<Vec<_>>().into()
}

fn form(r: usize) -> impl Strategy<Value = LinearForm> {
    (prop::collection::vec(-2i64..3, r), -3i64..4, 1i64..3)
        .prop_filter_map("zero slope", move |(a, c, d)| {
            let a: Vec<Rational> = a.into_iter().map(int).collect();
            LinearForm::new(&a, &rat(c, d))
        })
}

fn product(vars: &Arc<[String]>, forms: &[LinearForm]) -> MultiPoly {
    forms.iter().fold(MultiPoly::one(vars.clone()), |acc, l| &acc * &l.to_poly(vars.clone()))
}

/// Zero set of products of linear forms by the distributive law, without
/// any Gröbner basis.
fn oracle_locus(r: usize, products: &[Vec<LinearForm>]) -> Vec<AffineFlat> {
    let mut comps = vec![AffineFlat::full(r)];
    for p in products {
        let mut next = Vec::new();
        for c in &comps {
            for l in p {
                if let Some(x) = c.intersect(&AffineFlat::from_forms(r, std::slice::from_ref(l)).unwrap()) {
                    next.push(x);
                }
            }
        }
        comps = next;
    }
    let mut keep: Vec<AffineFlat> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let strictly_inside = comps.iter().any(|d| d != c && d.contains_flat(c));
        let earlier_copy = comps[..i].contains(c);
        if !strictly_inside && !earlier_copy {
            keep.push(c.clone());
        }
    }
    keep.sort();
    keep
}

fn sample_points(flat: &AffineFlat, seeds: &[i64]) -> Vec<Vec<Rational>> {
    let free = flat.free_coordinates().len();
    (0..20)
        .map(|k| (0..free).map(|j| rat(seeds[(k + 3 * j) % seeds.len()], 1 + (k as i64 % 3))).collect::<Vec<_>>())
        .map(|vals| flat.point(&vals))
        .collect()
}

fn check_locus(r: usize, products: &[Vec<LinearForm>], mix: &[i64], seeds: &[i64]) -> Result<(), TestCaseError> {
    let v = svars(r);
    let polys: Vec<MultiPoly> = products.iter().map(|p| product(&v, p)).collect();
    // same ideal, generators mixed so they need not split
    let mut gens = polys.clone();
    for i in 1..gens.len() {
        gens[i] = &gens[i] + &polys[0].scale(&int(mix[i % mix.len()]));
    }
    let locus = decompose_locus(r, &gens).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut got = locus.components.clone();
    got.sort();
    prop_assert_eq!(&got, &oracle_locus(r, products));
    for c in &locus.components {
        for pt in sample_points(c, seeds) {
            for g in &gens {
                prop_assert!(g.evaluate(&pt) == Rational::from_integer(0.into()));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_multiplies_back(
        forms in prop::collection::vec(form(2), 0..4),
        extra in prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..3),
        unit in 1i64..5,
    ) {
        let v = svars(2);
        let mut p = product(&v, &forms).scale(&int(unit));
        if !extra.is_empty() {
            let q = MultiPoly::from_terms(v.clone(), extra.into_iter().map(|(a, b, c)| (vec![a, b].into(), int(c))));
            if !q.is_zero() {
                p = &p * &q;
            }
        }
        let f = factor_linear(&p);
        prop_assert_eq!(f.product(), p);
        if f.residual.is_constant() {
            prop_assert!(f.splits());
        }
    }

    #[test]
    fn split_products_factor_completely(forms in prop::collection::vec(form(3), 1..4)) {
        let v = svars(3);
        let p = product(&v, &forms);
        let f = factor_linear(&p);
        prop_assert!(f.splits());
        let degree: usize = f.factors.iter().map(|(_, k)| k).sum();
        prop_assert_eq!(degree, forms.len());
    }

    #[test]
    fn locus_matches_distributive_oracle(
        products in prop::collection::vec(prop::collection::vec(form(2), 1..3), 1..4),
        mix in prop::collection::vec(-2i64..3, 3),
        seeds in prop::collection::vec(-5i64..6, 4),
    ) {
        check_locus(2, &products, &mix, &seeds)?;
    }

    #[test]
    fn locus_matches_distributive_oracle_in_three_variables(
        products in prop::collection::vec(prop::collection::vec(form(3), 1..3), 1..4),
        mix in prop::collection::vec(-2i64..3, 3),
        seeds in prop::collection::vec(-5i64..6, 4),
    ) {
        check_locus(3, &products, &mix, &seeds)?;
    }

    #[test]
    fn exp_image_is_invariant_under_integer_translation(
        forms in prop::collection::vec(form(3), 1..3),
        z in prop::collection::vec(-4i64..5, 3),
    ) {
        let Some(flat) = AffineFlat::from_forms(3, &forms) else { return Ok(()); };
        let zr: Vec<Rational> = z.into_iter().map(int).collect();
        prop_assert_eq!(exp_image(&flat), exp_image(&flat.translate(&zr)));
    }

    #[test]
    fn coset_equality_is_an_equivalence(
        a in prop::collection::vec(form(2), 1..3),
        b in prop::collection::vec(form(2), 1..3),
        c in prop::collection::vec(form(2), 1..3),
        probes in prop::collection::vec((-6i64..7, -6i64..7, 1i64..5), 6),
    ) {
        let cosets: Vec<TorsionCoset> = [a, b, c]
            .iter()
            .filter_map(|fs| AffineFlat::from_forms(2, fs))
            .map(|f| exp_image(&f))
            .collect();
        for x in &cosets {
            prop_assert!(coset_equal(x, x));
            for y in &cosets {
                prop_assert_eq!(coset_equal(x, y), coset_equal(y, x));
                for z in &cosets {
                    if coset_equal(x, y) && coset_equal(y, z) {
                        prop_assert!(coset_equal(x, z));
                    }
                }
                if coset_equal(x, y) {
                    for (p, q, d) in &probes {
                        let alpha = [rat(*p, *d), rat(*q, *d)];
                        prop_assert_eq!(x.contains_exp(&alpha), y.contains_exp(&alpha));
                    }
                }
            }
        }
    }

    #[test]
    fn flat_points_exponentiate_into_the_image(forms in prop::collection::vec(form(3), 1..3), seeds in prop::collection::vec(-5i64..6, 3)) {
        let Some(flat) = AffineFlat::from_forms(3, &forms) else { return Ok(()); };
        let e = exp_image(&flat);
        for pt in sample_points(&flat, &seeds) {
            prop_assert!(flat.contains_point(&pt));
            prop_assert!(e.contains_exp(&pt));
        }
    }
}

#[test]
fn shape_negative_control() {
    let v = var_names(&["s1", "s2"]);
    let s1 = MultiPoly::var(v.clone(), 0);
    let g = &(&s1 * &s1) + &MultiPoly::one(v);
    let err = decompose_locus(2, &[g]).unwrap_err();
    assert!(err.to_string().contains("s1^2 + 1"));
}
