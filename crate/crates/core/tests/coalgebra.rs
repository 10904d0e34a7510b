use std::collections::BTreeMap;
use std::sync::Arc;

use ainfty::ainfty::{graded_map_to_multilinear, AInftyMorphism};
use ainfty::coalgebra::{
    bar_differential, bar_morphism, check_coalgebra_map, check_coderivation, check_equal, check_square_zero,
    coproduct, counit, lift_coderivation, lift_morphism, oracle_transfer, perturb, Perturbation, TensorCoalgebra,
    WeightGradedMap,
};
use ainfty::retract::build_retract;
use ainfty::{fixtures, random, AInftyAlgebra, CheckReport, Error, Field, GradedMap, GradedSpace, Index, Op, Shape, Tensor};

const W: usize = 4;

fn ok(r: CheckReport) {
    assert!(r.passed(), "{}: {:?}", r.identity, r.violations.first());
    assert!(r.tuples_checked > 0);
}

fn zero_map(like: &WeightGradedMap, degree: i64) -> WeightGradedMap {
    WeightGradedMap::new(&like.source, &like.target, degree)
}

fn algebras() -> Vec<Arc<AInftyAlgebra>> {
    let mut out: Vec<Arc<AInftyAlgebra>> = ["exterior-massey", "twisted-ainfty", "upper-triangular"]
        .iter()
        .map(|n| Arc::new(fixtures::by_name(n, W).unwrap()))
        .collect();
    let mut rng = random::rng(9);
    out.push(random::ainfty_algebra(&mut rng, Field::Rational, W).unwrap());
    out
}

fn perturbation(alg: &AInftyAlgebra) -> Perturbation {
    let r = build_retract(&alg.space, &alg.differential()).unwrap();
    perturb(alg, &r, W).unwrap()
}

#[test]
fn deconcatenation_and_counit() {
    let f = Field::Rational;
    let x = Tensor::basis(Index::from_slice(&[0, 1, 2]), f.one());
    let d = coproduct(&x);
    assert_eq!(d.iter().count(), 4);
    assert!(d.iter().all(|((a, b), _)| a.len() + b.len() == 3));
    assert!(counit(&x, f).is_zero());
    assert_eq!(counit(&Tensor::basis(Index::new(), f.from_i64(3)), f), f.from_i64(3));
}

#[test]
fn bar_differential_squares_to_zero_and_is_a_coderivation() {
    for alg in algebras() {
        let (_, _, d) = bar_differential(&alg, W).unwrap();
        ok(check_square_zero(&d, W).unwrap());
        ok(check_coderivation(&d, W));
    }
}

#[test]
fn broken_structure_gives_nonzero_square() {
    let good = fixtures::truncated_polynomial(Field::Rational, -2, 3, 3).unwrap();
    let mut m2 = good.m(2);
    m2.add_entry(&[0, 0], 0, Field::Rational.one()).unwrap();
    let bad = AInftyAlgebra::new("bad", good.space.clone(), good.field, 3, vec![good.m(1), m2]).unwrap();
    let (_, _, d) = bar_differential(&bad, 3).unwrap();
    assert!(!check_square_zero(&d, 3).unwrap().passed());
}

#[test]
fn one_sided_lift_is_not_a_coderivation() {
    let alg = fixtures::exterior_massey(Field::Rational, 3).unwrap();
    let (susp, coalg, _) = bar_differential(&alg, 3).unwrap();
    let b2 = ainfty::coalgebra::suspend_map(&alg.m_op(2), &susp, &susp).unwrap();
    let mut bad = WeightGradedMap::new(&coalg, &coalg, -1);
    bad.add_block(3, 2, Op::tensor(&[b2, Op::id_power(&coalg.base, 1, alg.field)], alg.field)).unwrap();
    assert!(!check_coderivation(&bad, 3).passed());
}

#[test]
fn curvature_term_is_allowed() {
    let f = Field::Rational;
    let v = Arc::new(GradedSpace::from_pairs([("u", -1), ("w", 0)]).unwrap());
    let coalg = TensorCoalgebra::new(&v, 3, f);
    let b0 = Op::func(Shape(vec![]), Shape::single(&v), -1, f, move |_| Tensor::basis(Index::from_slice(&[0]), f.one()));
    let d = lift_coderivation(&coalg, &BTreeMap::from([(0, b0)]), -1).unwrap();
    ok(check_coderivation(&d, 3));
    assert_eq!(d.apply(&coalg.unit()), Tensor::basis(Index::from_slice(&[0]), f.one()));
}

#[test]
fn lifted_morphisms_are_coalgebra_maps_and_chain_maps() {
    let mut rng = random::rng(4);
    for alg in algebras() {
        let f = random::morphism_from(&mut rng, &alg).unwrap();
        let big_f = bar_morphism(&f, W).unwrap();
        ok(check_coalgebra_map(&big_f, W));
        let (_, _, d_src) = bar_differential(&f.source, W).unwrap();
        let (_, _, d_tgt) = bar_differential(&f.target, W).unwrap();
        ok(check_equal("D' F = F D", &d_tgt.compose(&big_f).unwrap(), &big_f.compose(&d_src).unwrap(), W));
    }
}

#[test]
fn non_morphism_does_not_commute_with_the_differentials() {
    let alg = Arc::new(fixtures::truncated_polynomial(Field::Rational, -2, 3, 3).unwrap());
    let two = GradedMap::identity(&alg.space, alg.field).scaled(&alg.field.from_i64(2));
    let f = AInftyMorphism::new(alg.clone(), alg.clone(), 3, vec![graded_map_to_multilinear(&two).unwrap()]).unwrap();
    let big_f = bar_morphism(&f, 3).unwrap();
    ok(check_coalgebra_map(&big_f, 3));
    let (_, _, d) = bar_differential(&alg, 3).unwrap();
    assert!(!check_equal("D F = F D", &d.compose(&big_f).unwrap(), &big_f.compose(&d).unwrap(), 3).passed());
}

#[test]
fn nonzero_weight_zero_component_is_rejected() {
    let f = Field::Rational;
    let v = Arc::new(GradedSpace::from_pairs([("u", 0)]).unwrap());
    let c = TensorCoalgebra::new(&v, 2, f);
    let f0 = Op::func(Shape(vec![]), Shape::single(&v), 0, f, move |_| Tensor::basis(Index::from_slice(&[0]), f.one()));
    let comps = BTreeMap::from([(0, f0), (1, Op::id_power(&v, 1, f))]);
    assert!(matches!(lift_morphism(&c, &c, &comps), Err(Error::UnitViolation)));
}

#[test]
fn perturbation_identities() {
    for alg in algebras() {
        let p = perturbation(&alg);
        let name = &alg.name;
        let id_a = WeightGradedMap::identity(&p.source);
        let id_h = WeightGradedMap::identity(&p.target);
        ok(check_equal(&format!("{name}: P_t I_t = id"), &p.p_t.compose(&p.i_t).unwrap(), &id_h, W));
        let lhs = id_a.sub(&p.i_t.compose(&p.p_t).unwrap()).unwrap();
        let rhs = p.d.compose(&p.h_t).unwrap().add(&p.h_t.compose(&p.d).unwrap()).unwrap();
        ok(check_equal(&format!("{name}: id - I_t P_t = D H_t + H_t D"), &lhs, &rhs, W));
        let dd = p.d_infinity.compose(&p.d_infinity).unwrap();
        ok(check_equal(&format!("{name}: d_∞² = 0"), &dd, &zero_map(&dd, -2), W));
        ok(check_coderivation(&p.d_infinity, W));
        let hdh = p.h_t.compose(&p.d).unwrap().compose(&p.h).unwrap();
        ok(check_equal(&format!("{name}: H_t D H = H"), &hdh, &p.h, W));
        let d_t = p.d_t().unwrap();
        ok(check_equal(&format!("{name}: 𝒟_t² = 𝒟_t"), &d_t.compose(&d_t).unwrap(), &d_t, W));
        for (label, m) in [
            ("P H_t", p.p.compose(&p.h_t).unwrap()),
            ("H_t I", p.h_t.compose(&p.i).unwrap()),
            ("H_t²", p.h_t.compose(&p.h_t).unwrap()),
        ] {
            ok(check_equal(&format!("{name}: {label} = 0"), &m, &zero_map(&m, m.degree), W));
        }
        ok(check_coalgebra_map(&p.p_t, W));
        ok(check_coalgebra_map(&p.i_t, W));
        ok(check_equal(&format!("{name}: D I_t = I_t d_∞"), &p.d.compose(&p.i_t).unwrap(), &p.i_t.compose(&p.d_infinity).unwrap(), W));
        ok(check_equal(&format!("{name}: d_∞ P_t = P_t D"), &p.d_infinity.compose(&p.p_t).unwrap(), &p.p_t.compose(&p.d).unwrap(), W));
    }
}

#[test]
fn oracle_first_components_are_the_retract_maps() {
    for alg in algebras() {
        let r = build_retract(&alg.space, &alg.differential()).unwrap();
        let o = oracle_transfer(&alg, &r, W).unwrap();
        assert_eq!(o.inclusion[0], graded_map_to_multilinear(&r.i).unwrap());
        assert_eq!(o.projection[0], graded_map_to_multilinear(&r.p).unwrap());
        assert!(o.minimal.m(1).is_zero());
        assert_eq!(o.inclusion.len(), W);
    }
}

#[test]
fn perturbation_rejects_foreign_retracts() {
    let alg = fixtures::exterior_massey(Field::Rational, 3).unwrap();
    let other = fixtures::truncated_polynomial(Field::Rational, -2, 3, 3).unwrap();
    let r = build_retract(&other.space, &other.differential()).unwrap();
    assert!(matches!(perturb(&alg, &r, 3), Err(Error::RetractMismatch(_))));
}
