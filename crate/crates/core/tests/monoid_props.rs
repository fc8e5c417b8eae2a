use logbs::monoid::{localize, localize_again, membership, minimal_generators, power, MonoidIdeal};
use proptest::prelude::*;
use std::collections::HashSet;

/// All points of `[0, bound]^r` reachable from some generator by adding unit vectors.
fn closure_in_box(r: usize, gens: &[Vec<u32>], bound: u32) -> HashSet<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack: Vec<Vec<u32>> = gens.iter().filter(|g| g.iter().all(|&x| x <= bound)).cloned().collect();
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for i in 0..r {
            if v[i] < bound {
                let mut w = v.clone();
                w[i] += 1;
                stack.push(w);
            }
        }
    }
    seen
}

fn box_points(r: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out.into_iter().flat_map(|p| (0..=bound).map(move |x| { let mut q = p.clone(); q.push(x); q })).collect();
    }
    out
}

fn ideal(max_r: usize) -> impl Strategy<Value = MonoidIdeal> {
    (1..=max_r).prop_flat_map(|r| {
        prop::collection::vec(prop::collection::vec(0u32..4, r), 1..=4).prop_filter_map("nonzero", move |vs| {
            let vs: Vec<Vec<u32>> = vs.into_iter().filter(|v| v.iter().any(|&x| x > 0)).collect();
            minimal_generators(r, &vs).ok()
        })
    })
}

proptest! {
    #[test]
    fn membership_matches_box_search(k in ideal(3)) {
        let reach = closure_in_box(k.rank(), k.generators(), 6);
        for v in box_points(k.rank(), 6) {
            prop_assert_eq!(membership(&k, &v), reach.contains(&v));
        }
    }

    #[test]
    fn powers_add(k in ideal(3), j1 in 1u32..3, j2 in 1u32..3) {
        let lhs = power(&k, j1 + j2);
        let a = power(&k, j1);
        let b = power(&k, j2);
        let sums: Vec<Vec<u32>> = a.generators().iter()
            .flat_map(|x| b.generators().iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect()))
            .collect();
        let rhs = minimal_generators(k.rank(), &sums).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn localization_composes(k in ideal(3), m1 in prop::collection::vec(0u32..2, 3), m2 in prop::collection::vec(0u32..2, 3)) {
        let r = k.rank();
        let (m1, m2) = (&m1[..r], &m2[..r]);
        let sum: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(localize_again(&localize(&k, m1), m2), localize(&k, &sum));
    }

    #[test]
    fn localized_membership_matches_box_search(k in ideal(3), m in prop::collection::vec(0u32..2, 3)) {
        // v in K_m  iff  v + N*m lands in K for some multiple of m
        let r = k.rank();
        let m = &m[..r];
        let l = localize(&k, m);
        let comp = l.complement();
        for v in box_points(comp.len(), 4) {
            let mut full = vec![0u32; r];
            for (j, &i) in comp.iter().enumerate() {
                full[i] = v[j];
            }
            let brute = (0..8u32).any(|n| {
                let w: Vec<u32> = full.iter().zip(m).map(|(a, b)| a + n * b).collect();
                membership(&k, &w)
            });
            prop_assert_eq!(l.contains(&v), brute);
        }
    }
}
