//! Seeded generators of random test data.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::ainfty::{pushforward, AInftyAlgebra, AInftyMorphism};
use crate::error::Result;
use crate::graded::{single, GradedMap, GradedSpace, Shape, Tensor};
use crate::multilinear::MultilinearMap;
use crate::scalar::{Field, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random scalar in `-2..=2`, zero with probability `1 - density`.
pub fn scalar(rng: &mut ChaCha8Rng, field: Field, density: f64) -> Scalar {
    if !rng.gen_bool(density.clamp(0.0, 1.0)) {
        return field.zero();
    }
    field.from_i64(rng.gen_range(-2..=2))
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let s = field.from_i64(rng.gen_range(-3..=3));
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random graded space with degrees drawn from `lo..=hi`.
pub fn space(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Arc<GradedSpace> {
    Arc::new(
        GradedSpace::from_pairs((0..dim).map(|k| (format!("e{k}"), rng.gen_range(lo..=hi))))
            .expect("generated names are distinct"),
    )
}

/// Random homogeneous map `source^{⊗arity} → target`.
pub fn multilinear(
    rng: &mut ChaCha8Rng,
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    arity: usize,
    degree: i64,
    field: Field,
    density: f64,
) -> MultilinearMap {
    let mut m = MultilinearMap::zero(source, target, arity, degree, field);
    let shape = Shape::power(source, arity);
    for idx in shape.tuples() {
        let d = shape.degree(&idx) + degree;
        for t in target.indices_of_degree(d) {
            let c = scalar(rng, field, density);
            m.add_entry(&idx, t, c).expect("degree is respected");
        }
    }
    m
}

pub fn graded_map(
    rng: &mut ChaCha8Rng,
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    degree: i64,
    field: Field,
    density: f64,
) -> GradedMap {
    let m = multilinear(rng, source, target, 1, degree, field, density);
    crate::ainfty::multilinear_to_graded_map(&m)
}

/// Random degree-zero automorphism: unitriangular blocks with random diagonal.
pub fn automorphism(rng: &mut ChaCha8Rng, space: &Arc<GradedSpace>, field: Field) -> GradedMap {
    let mut m = GradedMap::zero(space, space, 0, field);
    for d in space.degrees() {
        let idx = space.indices_of_degree(d);
        for (a, &s) in idx.iter().enumerate() {
            let mut col = Tensor::basis(single(s), nonzero_scalar(rng, field));
            for &t in &idx[..a] {
                col.add_term(single(t), scalar(rng, field, 0.5));
            }
            m.set_column(s, col);
        }
    }
    m
}

/// Three-dimensional dg-algebras used as seeds for random A∞-structures.
pub fn base_algebras(field: Field, cap: usize) -> Result<Vec<AInftyAlgebra>> {
    let mut out = Vec::new();
    // 1, x, y with |x| = -1, |y| = -2, x·x = y and dx = y
    {
        let space = Arc::new(GradedSpace::from_pairs([("1", 0), ("x", -1), ("y", -2)])?);
        let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
        for (a, b, c) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)] {
            nu.add_entry(&[a, b], c, field.one())?;
        }
        let d = GradedMap::from_entries(&space, &space, -1, field, [(1, 2, field.one())])?;
        out.push(AInftyAlgebra::dga("square-zero", space, field, cap, &d, nu)?);
    }
    // k[x]/(x^3) with |x| = -1 (associative, not graded commutative)
    {
        let space = Arc::new(GradedSpace::from_pairs([("1", 0), ("x", -1), ("x^2", -2)])?);
        let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
        for a in 0..3u32 {
            for b in 0..3 - a {
                nu.add_entry(&[a, b], a + b, field.one())?;
            }
        }
        let d = GradedMap::zero(&space, &space, -1, field);
        out.push(AInftyAlgebra::dga("odd-truncated", space, field, cap, &d, nu)?);
    }
    // 2x2 upper triangular matrices
    out.push(crate::fixtures::upper_triangular(field, cap)?);
    Ok(out)
}

/// Random components `f_1` (automorphism) and `f_n` of degree `n - 1`.
/// `target` must carry the same basis as `source`.
pub fn morphism_components(
    rng: &mut ChaCha8Rng,
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    cap: usize,
    field: Field,
    density: f64,
) -> Vec<MultilinearMap> {
    let auto = automorphism(rng, source, field);
    let mut f1 = MultilinearMap::zero(source, target, 1, 0, field);
    for k in 0..source.dim() as u32 {
        f1.set_value(&[k], auto.column(k).clone()).expect("same dimension");
    }
    let mut comps = vec![f1];
    for n in 2..=cap {
        comps.push(multilinear(rng, source, target, n, n as i64 - 1, field, density));
    }
    comps
}

/// A random A∞-algebra: a base algebra with its structure transported along a random morphism.
pub fn ainfty_algebra(rng: &mut ChaCha8Rng, field: Field, cap: usize) -> Result<Arc<AInftyAlgebra>> {
    let bases = base_algebras(field, cap)?;
    let base = Arc::new(bases[rng.gen_range(0..bases.len())].clone());
    let comps = morphism_components(rng, &base.space, &base.space, cap, field, 0.4);
    let (alg, _) = pushforward(&base, &base.space, comps, format!("random-{}", base.name))?;
    Ok(alg)
}

/// A random A∞-morphism out of `alg` whose target is the transported structure.
pub fn morphism_from(rng: &mut ChaCha8Rng, alg: &Arc<AInftyAlgebra>) -> Result<AInftyMorphism> {
    let comps = morphism_components(rng, &alg.space, &alg.space, alg.cap, alg.field, 0.4);
    let (_, f) = pushforward(alg, &alg.space, comps, format!("{}'", alg.name))?;
    Ok(f)
}

/// A random dg-algebra isomorphic to `alg` by a strict change of basis.
pub fn conjugate_dga(rng: &mut ChaCha8Rng, alg: &Arc<AInftyAlgebra>) -> Result<Arc<AInftyAlgebra>> {
    let phi = crate::ainfty::graded_map_to_multilinear(&automorphism(rng, &alg.space, alg.field))?;
    let (out, _) = pushforward(alg, &alg.space, vec![phi], format!("{}~", alg.name))?;
    Ok(out)
}
