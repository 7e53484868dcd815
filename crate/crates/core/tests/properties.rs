use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use z2_abelian::involution::{classify_involutions, graded_data, GradedData};
use z2_abelian::oracle::{enumerate_abelian_subalgebras, enumerate_abelian_subalgebras_ordered, is_abelian_stable};
use z2_abelian::rootsys::{build_affine_default, AffineKind, FiniteKind};
use z2_abelian::weyl::{
    enumerate_sigma_minuscule, enumerate_sigma_minuscule_ordered, inversion_set_by_definition, AffineWeylElement,
};

fn classes(base: &str) -> Vec<GradedData> {
    classify_involutions(base.parse().unwrap()).unwrap().iter().map(|s| graded_data(s).unwrap()).collect()
}

/// Generates the finite Weyl group from `s_1, …, s_n` by extending reduced
/// words and counts its elements.
fn generated_weyl_order(kind: FiniteKind) -> usize {
    let ars = build_affine_default(AffineKind::untwisted(kind)).unwrap();
    let e = AffineWeylElement::identity(&ars);
    let mut seen = HashSet::new();
    seen.insert(e.images.clone());
    let mut frontier = vec![e];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..ars.nodes() {
                if let Some(v) = w.extend_by_simple(&ars, i).unwrap() {
                    if seen.insert(v.images.clone()) {
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

#[test]
fn weyl_orders_by_generation() {
    for kind in FiniteKind::all_up_to(4) {
        assert_eq!(generated_weyl_order(kind) as u128, kind.weyl_order(), "{kind}");
    }
}

#[test]
fn inversion_sets_from_definition() {
    for base in ["B3", "C3", "A4", "G2"] {
        for gd in classes(base) {
            let bound = 3 * gd.roots.labels[0];
            for w in enumerate_sigma_minuscule(&gd).unwrap() {
                assert_eq!(inversion_set_by_definition(&gd.roots, &w, bound), w.inversion_set, "{}", gd.spec);
            }
        }
    }
}

#[test]
fn enumerated_sets_pass_the_membership_test() {
    for base in ["A3", "B3", "D4", "F4"] {
        for gd in classes(base) {
            for s in enumerate_abelian_subalgebras(&gd).unwrap() {
                assert_eq!(is_abelian_stable(&gd, &s).unwrap(), None, "{} {s}", gd.spec);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bfs_order_is_irrelevant(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        for gd in classes("F4") {
            let a = enumerate_sigma_minuscule(&gd).unwrap();
            let b = enumerate_sigma_minuscule_ordered(&gd, &perm).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn oracle_order_is_irrelevant(seed in any::<u64>()) {
        for gd in classes("B4") {
            let mut order: Vec<usize> = (0..gd.delta1.len()).collect();
            order.shuffle(&mut StdRng::seed_from_u64(seed));
            let a = enumerate_abelian_subalgebras(&gd).unwrap();
            let b = enumerate_abelian_subalgebras_ordered(&gd, &order).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
