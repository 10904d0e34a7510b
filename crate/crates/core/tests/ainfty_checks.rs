use std::sync::Arc;

use ainfty::ainfty::{
    check_all_higher_associativity, check_all_morphism, check_balanced, check_higher_associativity, check_morphism,
    compose, compositions, graded_map_to_multilinear, invert, shuffles, sign_l, AInftyMorphism,
};
use ainfty::{fixtures, random, AInftyAlgebra, Field, GradedMap};
use proptest::prelude::*;

fn passes(reports: &[ainfty::CheckReport]) -> bool {
    reports.iter().all(|r| r.passed())
}

/// `l = Σ_{j<k} (i_k - 1) i_j` by a double loop.
fn sign_l_oracle(parts: &[usize]) -> i64 {
    let mut e = 0;
    for k in 0..parts.len() {
        for j in 0..k {
            e += (parts[k] as i64 - 1) * parts[j] as i64;
        }
    }
    e
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

proptest! {
    #[test]
    fn sign_l_matches_double_sum(parts in proptest::collection::vec(1usize..5, 0..6)) {
        prop_assert_eq!(sign_l(&parts), sign_l_oracle(&parts));
    }

    #[test]
    fn compositions_are_all_distinct_and_sum_to_n(n in 1usize..9) {
        let all = compositions(n);
        prop_assert_eq!(all.len(), 1 << (n - 1));
        let mut sorted = all.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
        for c in &all {
            prop_assert_eq!(c.iter().sum::<usize>(), n);
            prop_assert!(c.iter().all(|&x| x > 0));
        }
    }

    #[test]
    fn shuffles_keep_both_blocks_in_order(p in 0usize..5, q in 0usize..5) {
        let all = shuffles(p, q);
        prop_assert_eq!(all.len(), binomial(p + q, p));
        for sigma in &all {
            let mut seen = sigma.clone();
            seen.sort();
            prop_assert_eq!(seen, (0..p + q).collect::<Vec<_>>());
            prop_assert!(sigma[..p].windows(2).all(|w| w[0] < w[1]));
            prop_assert!(sigma[p..].windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn every_fixture_satisfies_the_relations() {
    for name in fixtures::NAMES {
        let alg = fixtures::by_name(name, 5).unwrap();
        let reports = check_all_higher_associativity(&alg).unwrap();
        assert!(passes(&reports), "{name}: {:?}", reports.iter().find(|r| !r.passed()).map(|r| r.summary()));
        assert!(reports.iter().map(|r| r.tuples_checked).sum::<usize>() > 0);
    }
}

#[test]
fn unknown_fixture_lists_the_known_ones() {
    let e = fixtures::by_name("nope", 4).unwrap_err().to_string();
    assert!(e.contains("exterior-massey"));
}

#[test]
fn broken_unit_is_detected_at_arity_three() {
    let good = fixtures::truncated_polynomial(Field::Rational, -2, 3, 4).unwrap();
    let mut m2 = good.m(2);
    m2.add_entry(&[0, 0], 0, Field::Rational.one()).unwrap();
    let bad = AInftyAlgebra::new("bad", good.space.clone(), good.field, 4, vec![good.m(1), m2]).unwrap();
    assert!(check_higher_associativity(&bad, 2).unwrap().passed());
    let r = check_higher_associativity(&bad, 3).unwrap();
    assert!(!r.passed());
    assert!(!r.violations.is_empty());
}

#[test]
fn constructor_rejects_wrong_degrees_and_arities() {
    let alg = fixtures::exterior_massey(Field::Rational, 4).unwrap();
    assert!(AInftyAlgebra::new("x", alg.space.clone(), alg.field, 1, vec![alg.m(1), alg.m(2)]).is_err());
    assert!(AInftyAlgebra::new("x", alg.space.clone(), alg.field, 4, vec![alg.m(2)]).is_err());
    assert!(AInftyAlgebra::new("x", alg.space.clone(), alg.field, 0, vec![]).is_err());
}

#[test]
fn rescaled_identity_is_not_a_morphism() {
    let alg = Arc::new(fixtures::truncated_polynomial(Field::Rational, -2, 3, 4).unwrap());
    let two = GradedMap::identity(&alg.space, alg.field).scaled(&alg.field.from_i64(2));
    let f = AInftyMorphism::new(alg.clone(), alg.clone(), 4, vec![graded_map_to_multilinear(&two).unwrap()]).unwrap();
    assert!(check_morphism(&f, 1).unwrap().passed());
    assert!(!check_morphism(&f, 2).unwrap().passed());
    assert!(passes(&check_all_morphism(&AInftyMorphism::identity(&alg)).unwrap()));
}

#[test]
fn pushforward_produces_algebras_and_morphisms() {
    for seed in 0..6 {
        let mut rng = random::rng(seed);
        let field = if seed % 2 == 0 { Field::Rational } else { Field::Prime(7) };
        let alg = random::ainfty_algebra(&mut rng, field, 4).unwrap();
        assert!(passes(&check_all_higher_associativity(&alg).unwrap()), "seed {seed}");
        let f = random::morphism_from(&mut rng, &alg).unwrap();
        assert!(passes(&check_all_higher_associativity(&f.target).unwrap()), "seed {seed}");
        assert!(passes(&check_all_morphism(&f).unwrap()), "seed {seed}");
    }
}

#[test]
fn composite_and_inverse_of_a_random_morphism() {
    let mut rng = random::rng(11);
    let alg = random::ainfty_algebra(&mut rng, Field::Rational, 4).unwrap();
    let f = random::morphism_from(&mut rng, &alg).unwrap();
    let g = random::morphism_from(&mut rng, &f.target).unwrap();
    assert!(passes(&check_all_morphism(&compose(&f, &g).unwrap()).unwrap()));
    let inv = invert(&f).unwrap();
    assert!(passes(&check_all_morphism(&inv).unwrap()));
    assert!(compose(&g, &f).is_err());
}

#[test]
fn graded_commutative_products_are_balanced() {
    for name in ["truncated-poly", "exterior-pair", "exterior-massey", "trivial"] {
        let alg = fixtures::by_name(name, 4).unwrap();
        let reports = check_balanced(&alg).unwrap();
        assert!(passes(&reports), "{name}");
    }
    let alg = fixtures::upper_triangular(Field::Rational, 4).unwrap();
    assert!(!check_balanced(&alg).unwrap()[0].passed());
}
