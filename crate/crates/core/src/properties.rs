//! Seeded property runs over random A∞-algebras and morphisms.

use crate::ainfty::{check_all_morphism, check_vanishing, compose, invert, AInftyMorphism, CheckReport};
use crate::error::{Error, Result};
use crate::random;
use crate::scalar::Field;

/// Componentwise equality of two morphisms with the same source and target.
pub fn check_same_morphism(name: &str, f: &AInftyMorphism, g: &AInftyMorphism) -> Result<Vec<CheckReport>> {
    if *f.source.space != *g.source.space || *f.target.space != *g.target.space {
        return Err(Error::SpaceMismatch("morphisms between different spaces".into()));
    }
    let cap = f.cap.min(g.cap);
    (1..=cap)
        .map(|n| Ok(check_vanishing(format!("{name} at arity {n}"), &f.f_op(n).minus(&g.f_op(n))?, n)))
        .collect()
}

/// Random chains `A_0 → A_1 → ... → A_len` of morphisms out of a random algebra.
pub fn random_chain(seed: u64, len: usize, cap: usize) -> Result<Vec<AInftyMorphism>> {
    let mut rng = random::rng(seed);
    let mut alg = random::ainfty_algebra(&mut rng, Field::Rational, cap)?;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let f = random::morphism_from(&mut rng, &alg)?;
        alg = f.target.clone();
        out.push(f);
    }
    Ok(out)
}

/// `g ∘ f` passes the morphism relation for `count` random composable pairs.
pub fn composition_pairs(seed: u64, count: usize, cap: usize) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for k in 0..count as u64 {
        let chain = random_chain(seed.wrapping_add(k), 2, cap)?;
        let gf = compose(&chain[0], &chain[1])?;
        reports.extend(check_all_morphism(&gf)?);
    }
    Ok(reports)
}

/// `h ∘ (g ∘ f) = (h ∘ g) ∘ f` for `count` random composable triples.
pub fn composition_associativity(seed: u64, count: usize, cap: usize) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for k in 0..count as u64 {
        let c = random_chain(seed.wrapping_add(k), 3, cap)?;
        let left = compose(&compose(&c[0], &c[1])?, &c[2])?;
        let right = compose(&c[0], &compose(&c[1], &c[2])?)?;
        reports.extend(check_same_morphism("associativity of composition", &left, &right)?);
    }
    Ok(reports)
}

/// For `count` random morphisms `f`, `f^{-1}` is a morphism and both composites are identities.
pub fn inverses(seed: u64, count: usize, cap: usize) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for k in 0..count as u64 {
        let f = random_chain(seed.wrapping_add(k), 1, cap)?.remove(0);
        let g = invert(&f)?;
        reports.extend(check_all_morphism(&g)?);
        let id_source = AInftyMorphism::identity(&f.source);
        let id_target = AInftyMorphism::identity(&f.target);
        reports.extend(check_same_morphism("f^{-1} ∘ f = id", &compose(&f, &g)?, &id_source)?);
        reports.extend(check_same_morphism("f ∘ f^{-1} = id", &compose(&g, &f)?, &id_target)?);
    }
    Ok(reports)
}
