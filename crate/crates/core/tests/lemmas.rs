use std::sync::Arc;

use ainfty::lemmas::{m_jn_relation, nu_d, nu_nu, run_all};
use ainfty::retract::build_retract;
use ainfty::transfer::OperatorFamily;
use ainfty::{fixtures, AInftyAlgebra, Field};

#[test]
fn all_identities_hold_on_several_seeds() {
    for seed in [1, 2, 3] {
        let reports = run_all(seed, 4).unwrap();
        assert!(reports.len() > 100, "seed {seed}: {} reports", reports.len());
        for r in &reports {
            assert!(r.passed(), "seed {seed}: {}", r.summary());
        }
        let checked: usize = reports.iter().map(|r| r.tuples_checked).sum();
        assert!(checked > 1000, "seed {seed}: only {checked} tuples");
    }
}

#[test]
fn runs_are_reproducible() {
    let a: Vec<_> = run_all(42, 3).unwrap().iter().map(|r| (r.identity.clone(), r.tuples_checked)).collect();
    let b: Vec<_> = run_all(42, 3).unwrap().iter().map(|r| (r.identity.clone(), r.tuples_checked)).collect();
    assert_eq!(a, b);
}

/// Exterior algebra on `x, y, z` with `dz = xy`, with the product `1·z` doubled.
fn broken_leibniz() -> Arc<AInftyAlgebra> {
    let good = fixtures::exterior_massey(Field::Rational, 4).unwrap();
    let one = good.space.index_of("1").unwrap();
    let z = good.space.index_of("z").unwrap();
    let mut m2 = good.m(2);
    m2.add_entry(&[one, z], z, Field::Rational.one()).unwrap();
    Arc::new(AInftyAlgebra::new("broken", good.space.clone(), good.field, 4, vec![good.m(1), m2]).unwrap())
}

#[test]
fn identities_detect_a_broken_product() {
    let alg = broken_leibniz();
    let r = Arc::new(build_retract(&alg.space, &alg.differential()).unwrap());
    let family = OperatorFamily::new(alg.clone(), r).unwrap();
    assert!(!nu_d(&family, 2).unwrap().passed());
    assert!(!nu_nu(&family, 2).unwrap().passed());
    assert!(!m_jn_relation(&alg, 2, 2).unwrap().passed());
}
