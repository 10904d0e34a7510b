//! Built-in example algebras.

use std::sync::Arc;

use crate::ainfty::{pushforward, AInftyAlgebra};
use crate::error::{Error, Result};
use crate::graded::{single, GradedMap, GradedSpace, Tensor};
use crate::io::{AlgebraSpecFile, Flags};
use crate::multilinear::MultilinearMap;
use crate::scalar::{Field, Scalar};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "trivial",
    "truncated-poly",
    "truncated-poly-f3",
    "exterior-massey",
    "exterior-massey-f5",
    "upper-triangular",
    "exterior-pair",
    "twisted-ainfty",
];

/// Fixtures whose product is graded commutative.
const COMMUTATIVE: &[&str] = &[
    "trivial",
    "truncated-poly",
    "truncated-poly-f3",
    "exterior-massey",
    "exterior-massey-f5",
    "exterior-pair",
];

/// Operations of every fixture vanish beyond this arity.
const TOP_ARITY: usize = 4;

/// File form of a fixture. No cap is recorded: operations absent from the
/// file are zero.
pub fn spec_file(name: &str) -> Result<AlgebraSpecFile> {
    let alg = by_name(name, TOP_ARITY)?;
    let flags = Flags {
        is_dga: alg.is_dga_shaped(),
        is_commutative_expected: COMMUTATIVE.contains(&name),
    };
    let mut file = AlgebraSpecFile::from_algebra(&alg, flags);
    file.name = name.to_string();
    file.cap = None;
    Ok(file)
}

pub fn by_name(name: &str, cap: usize) -> Result<AInftyAlgebra> {
    match name {
        "trivial" => ground_field(Field::Rational, cap),
        "truncated-poly" => truncated_polynomial(Field::Rational, -2, 3, cap),
        "truncated-poly-f3" => truncated_polynomial(Field::Prime(3), -2, 3, cap),
        "exterior-massey" => exterior_massey(Field::Rational, cap),
        "exterior-massey-f5" => exterior_massey(Field::Prime(5), cap),
        "upper-triangular" => upper_triangular(Field::Rational, cap),
        "exterior-pair" => exterior_algebra(Field::Rational, "exterior-pair", &[("a", -1), ("b", -1)], &[], cap),
        "twisted-ainfty" => twisted_ainfty(Field::Rational, cap),
        _ => Err(Error::SemanticError(format!(
            "unknown fixture {name:?}; known fixtures: {}",
            NAMES.join(", ")
        ))),
    }
}

/// The ground field concentrated in degree zero.
pub fn ground_field(field: Field, cap: usize) -> Result<AInftyAlgebra> {
    let space = Arc::new(GradedSpace::from_pairs([("1", 0)])?);
    let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
    nu.add_entry(&[0, 0], 0, field.one())?;
    let d = GradedMap::zero(&space, &space, -1, field);
    AInftyAlgebra::dga("trivial", space, field, cap, &d, nu)
}

/// `k[x]/(x^top)` with `x` of the given even degree and zero differential.
pub fn truncated_polynomial(field: Field, degree: i64, top: usize, cap: usize) -> Result<AInftyAlgebra> {
    if degree % 2 != 0 {
        return Err(Error::SemanticError("the generator must have even degree".into()));
    }
    let names: Vec<(String, i64)> = (0..top)
        .map(|k| {
            let name = match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            (name, degree * k as i64)
        })
        .collect();
    let space = Arc::new(GradedSpace::from_pairs(names)?);
    let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
    for a in 0..top {
        for b in 0..top - a {
            nu.add_entry(&[a as u32, b as u32], (a + b) as u32, field.one())?;
        }
    }
    let d = GradedMap::zero(&space, &space, -1, field);
    let name = if field == Field::Rational { "truncated-poly".to_string() } else { format!("truncated-poly-f{}", field.characteristic()) };
    AInftyAlgebra::dga(name, space, field, cap, &d, nu)
}

/// Monomials of an exterior algebra as sorted generator lists.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&k| mask >> k & 1 == 1).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Product of two monomials in generators of odd degree: sign of sorting, or zero.
fn wedge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut swaps = 0i64;
    for &x in a {
        if b.contains(&x) {
            return None;
        }
        swaps += b.iter().filter(|&&y| y < x).count() as i64;
    }
    let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    Some((m, swaps))
}

/// Exterior algebra on odd generators; `differential` lists `d(gen)` as
/// linear combinations of monomials given by generator names.
pub fn exterior_algebra(
    field: Field,
    name: &str,
    gens: &[(&str, i64)],
    differential: &[(&str, Vec<(i64, Vec<&str>)>)],
    cap: usize,
) -> Result<AInftyAlgebra> {
    if gens.iter().any(|(_, d)| d % 2 == 0) {
        return Err(Error::SemanticError("exterior generators must have odd degree".into()));
    }
    let monos = subsets(gens.len());
    let mono_name = |m: &Vec<usize>| -> String {
        if m.is_empty() {
            "1".to_string()
        } else {
            m.iter().map(|&k| gens[k].0).collect()
        }
    };
    let space = Arc::new(GradedSpace::from_pairs(
        monos.iter().map(|m| (mono_name(m), m.iter().map(|&k| gens[k].1).sum::<i64>())),
    )?);
    let index = |m: &Vec<usize>| monos.iter().position(|x| x == m).unwrap() as u32;
    let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
    for a in &monos {
        for b in &monos {
            if let Some((m, e)) = wedge(a, b) {
                nu.add_entry(&[index(a), index(b)], index(&m), field.sign(e))?;
            }
        }
    }
    let gen_index = |g: &str| -> Result<usize> {
        gens.iter()
            .position(|(n, _)| *n == g)
            .ok_or_else(|| Error::SemanticError(format!("unknown generator {g:?}")))
    };
    // d on generators
    let mut dgen: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); gens.len()];
    for (g, terms) in differential {
        let k = gen_index(g)?;
        for (c, mono) in terms {
            let mut m: Vec<usize> = mono.iter().map(|x| gen_index(x)).collect::<Result<_>>()?;
            let sorted = {
                let mut s = m.clone();
                s.sort_unstable();
                s
            };
            let sign = crate::graded::inversions(&m);
            m = sorted;
            dgen[k].push((m, field.from_i64(*c).signed(sign)));
        }
    }
    // extend as a derivation: d(g_1...g_k) = Σ (-1)^{j} g_1...d(g_j)...g_k (all generators odd)
    let mut entries = Vec::new();
    for mono in &monos {
        let mut value: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for (j, &g) in mono.iter().enumerate() {
            let before: Vec<usize> = mono[..j].to_vec();
            let after: Vec<usize> = mono[j + 1..].to_vec();
            for (dm, c) in &dgen[g] {
                let Some((left, e1)) = wedge(&before, dm) else { continue };
                let Some((full, e2)) = wedge(&left, &after) else { continue };
                value.push((full, c.clone().signed(e1 + e2 + j as i64)));
            }
        }
        for (m, c) in value {
            entries.push((index(mono), index(&m), c));
        }
    }
    let d = GradedMap::from_entries(&space, &space, -1, field, entries)?;
    AInftyAlgebra::dga(name, space, field, cap, &d, nu)
}

/// `Λ(x, y, z)` with `|x| = |y| = |z| = -1` and `dz = xy`.
pub fn exterior_massey(field: Field, cap: usize) -> Result<AInftyAlgebra> {
    let name = if field == Field::Rational { "exterior-massey".to_string() } else { format!("exterior-massey-f{}", field.characteristic()) };
    exterior_algebra(
        field,
        &name,
        &[("x", -1), ("y", -1), ("z", -1)],
        &[("z", vec![(1, vec!["x", "y"])])],
        cap,
    )
}

/// Upper triangular `2 × 2` matrices in degree zero.
pub fn upper_triangular(field: Field, cap: usize) -> Result<AInftyAlgebra> {
    let space = Arc::new(GradedSpace::from_pairs([("e11", 0), ("e12", 0), ("e22", 0)])?);
    let mut nu = MultilinearMap::zero(&space, &space, 2, 0, field);
    for (a, b, c) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
        nu.add_entry(&[a, b], c, field.one())?;
    }
    let d = GradedMap::zero(&space, &space, -1, field);
    AInftyAlgebra::dga("upper-triangular", space, field, cap, &d, nu)
}

/// The exterior Massey algebra with its structure transported along the
/// morphism `f_1 = id`, `f_2(x ⊗ x) = y`, `f_2(x ⊗ y) = z`; an A∞-algebra
/// with nonzero `m_1` and `m_3`.
pub fn twisted_ainfty(field: Field, cap: usize) -> Result<AInftyAlgebra> {
    let base = Arc::new(exterior_massey(field, cap)?);
    let space = base.space.clone();
    let idx = |n: &str| space.index_of(n).unwrap();
    let mut f1 = MultilinearMap::zero(&space, &space, 1, 0, field);
    for k in 0..space.dim() as u32 {
        f1.set_value(&[k], Tensor::basis(single(k), field.one()))?;
    }
    let mut comps = vec![f1];
    if cap >= 2 {
        let mut f2 = MultilinearMap::zero(&space, &space, 2, 1, field);
        f2.add_entry(&[idx("x"), idx("x")], idx("y"), field.one())?;
        f2.add_entry(&[idx("x"), idx("y")], idx("z"), field.one())?;
        comps.push(f2);
    }
    let (alg, _) = pushforward(&base, &space, comps, "twisted-ainfty")?;
    Ok((*alg).clone())
}
