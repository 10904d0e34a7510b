//! Operator identities used in the correctness argument of the transfer,
//! evaluated on concrete data.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ainfty::{check_vanishing, compositions, AInftyAlgebra, AInftyMorphism, CheckReport};
use crate::error::Result;
use crate::graded::GradedSpace;
use crate::op::Op;
use crate::random;
use crate::retract::build_retract;
use crate::scalar::Field;
use crate::transfer::{transfer_ainfty, transfer_dga, OperatorFamily};

fn check_equal(name: String, lhs: &Op, rhs: &Op, arity: usize) -> Result<CheckReport> {
    Ok(check_vanishing(name, &lhs.minus(rhs)?, arity))
}

/// `ν_n d_n + d_{n-1} ν_n = 0`.
pub fn nu_d(family: &OperatorFamily, n: usize) -> Result<CheckReport> {
    let nu = family.nu_n(n)?;
    let lhs = nu.after(&family.d_n(n)?)?;
    let rhs = family.d_n(n - 1)?.after(&nu)?.neg();
    check_equal(format!("ν_{n} d_{n} + d_{} ν_{n} = 0", n - 1), &lhs, &rhs, n)
}

/// `d_n = (-1)^i id^{⊗i} ⊗ d_j + (-1)^j d_i ⊗ id^{⊗j}` with `i + j = n`.
pub fn d_split(family: &OperatorFamily, i: usize, j: usize) -> Result<CheckReport> {
    let f = family.field();
    let n = i + j;
    let rhs = Op::sum(vec![
        Op::tensor(&[family.id(i), family.d_n(j)?], f).signed(i as i64),
        Op::tensor(&[family.d_n(i)?, family.id(j)], f).signed(j as i64),
    ])?;
    check_equal(format!("d_{n} split at ({i}, {j})"), &family.d_n(n)?, &rhs, n)
}

/// `ν_n ν_{n+1} = 0`.
pub fn nu_nu(family: &OperatorFamily, n: usize) -> Result<CheckReport> {
    let op = family.nu_n(n)?.after(&family.nu_n(n + 1)?)?;
    Ok(check_vanishing(format!("ν_{n} ν_{} = 0", n + 1), &op, n + 1))
}

/// Placeholder inputs: `None` stands for `i`, `Some(f)` for `h ∘ f`.
pub fn placeholder(family: &OperatorFamily, choice: Option<&Op>) -> Result<Op> {
    match choice {
        None => Ok(family.i()),
        Some(f) => family.h().after(f),
    }
}

/// `h_n ν_{n+1} F = ((-1)^l h_k ν_{k+1} ⊗ (ip)^{⊗l} + id^{⊗k} ⊗ h_l ν_{l+1}) F`
/// for `F` a tensor product of placeholder maps and `k + l = n`.
pub fn h_nu(family: &OperatorFamily, k: usize, l: usize, inputs: &[Op]) -> Result<CheckReport> {
    let f = family.field();
    let n = k + l;
    assert_eq!(inputs.len(), n + 1, "need n + 1 placeholder maps");
    let big_f = Op::tensor(inputs, f);
    let hnu = |m: usize| -> Result<Op> { family.h_n(m)?.after(&family.nu_n(m + 1)?) };
    let lhs = hnu(n)?.after(&big_f)?;
    let inner = Op::sum(vec![
        Op::tensor(&[hnu(k)?, family.ip_n(l)?], f).signed(l as i64),
        Op::tensor(&[family.id(k), hnu(l)?], f),
    ])?;
    let rhs = inner.after(&big_f)?;
    check_equal(format!("h_{n} ν_{} splits at ({k}, {l})", n + 1), &lhs, &rhs, n + 1)
}

fn projection_tensor(p: &AInftyMorphism, parts: &[usize]) -> Op {
    p.tensor_of_components(parts)
}

/// `(p_{j_1} ⊗ ... ⊗ p_{j_r}) ν_{n+1} h_{n+1}` split into one term per block.
pub fn technical_dga(family: &OperatorFamily, p: &AInftyMorphism, parts: &[usize]) -> Result<CheckReport> {
    let f = family.field();
    let n: usize = parts.iter().sum();
    let pt = projection_tensor(p, parts);
    let nuh = |m: usize| -> Result<Op> { family.nu_n(m)?.after(&family.h_n(m)?) };
    let lhs = pt.after(&nuh(n + 1)?)?;
    let mut terms = Vec::new();
    for k in 0..parts.len() {
        let before: usize = parts[..k].iter().sum();
        let after: usize = parts[k + 1..].iter().sum();
        let op = Op::tensor(&[family.id(before), nuh(parts[k] + 1)?, family.ip_n(after)?], f);
        terms.push(op.signed(after as i64));
    }
    let rhs = pt.after(&Op::sum(terms)?)?;
    check_equal(format!("p-tensor ν_{} h_{} for {parts:?}", n + 1, n + 1), &lhs, &rhs, n + 1)
}

/// `m_j^n m_1^n + Σ_{i=1}^{j-1} m_i^{n-j+i} m_{j-i+1}^n = 0`.
pub fn m_jn_relation(alg: &AInftyAlgebra, j: usize, n: usize) -> Result<CheckReport> {
    let mut terms = vec![alg.m_jn(j, n)?.after(&alg.m_jn(1, n)?)?];
    for i in 1..j {
        terms.push(alg.m_jn(i, n - j + i)?.after(&alg.m_jn(j - i + 1, n)?)?);
    }
    Ok(check_vanishing(format!("m_j^n relation (j = {j}, n = {n})"), &Op::sum(terms)?, n))
}

/// `(p_{j_1} ⊗ ... ⊗ p_{j_r}) m_{n-j+1}^n h_n` split into one term per block.
pub fn technical_ainfty(family: &OperatorFamily, p: &AInftyMorphism, n: usize, parts: &[usize]) -> Result<CheckReport> {
    let f = family.field();
    let alg = &family.alg;
    let j: usize = parts.iter().sum();
    let s = n - j + 1;
    let pt = projection_tensor(p, parts);
    let lhs = pt.after(&alg.m_jn(s, n)?.after(&family.h_n(n)?)?)?;
    let mut terms = Vec::new();
    for k in 0..parts.len() {
        let before: usize = parts[..k].iter().sum();
        let after: usize = parts[k + 1..].iter().sum();
        let width = n - j + parts[k];
        let mid = alg.m_jn(s, width)?.after(&family.h_n(width)?)?;
        let op = Op::tensor(&[family.id(before), mid, family.ip_n(after)?], f);
        terms.push(op.signed((before * s + after) as i64));
    }
    let rhs = pt.after(&Op::sum(terms)?)?;
    check_equal(format!("p-tensor m_{s}^{n} h_{n} for {parts:?}"), &lhs, &rhs, n)
}

/// Regrouping of `Σ f_{i_1} ⊗ ... ⊗ f_{i_r}` over splittings `r = r_1 + r_2`.
pub fn regrouping(fs: &[Op], n: usize, r1: usize, r2: usize, field: Field) -> Result<CheckReport> {
    let r = r1 + r2;
    let tensor = |parts: &[usize]| Op::tensor(&parts.iter().map(|&i| fs[i - 1].clone()).collect::<Vec<_>>(), field);
    let with_len = |total: usize, len: usize| -> Vec<Vec<usize>> {
        compositions(total).into_iter().filter(|c| c.len() == len).collect()
    };
    let mut lhs = Vec::new();
    for k in r1..=n - r2 {
        for a in with_len(k, r1) {
            for b in with_len(n - k, r2) {
                let parts: Vec<usize> = a.iter().chain(&b).copied().collect();
                lhs.push(tensor(&parts));
            }
        }
    }
    let rhs: Vec<Op> = with_len(n, r).iter().map(|c| tensor(c)).collect();
    let lhs = Op::sum(lhs)?;
    let rhs = Op::sum(rhs)?;
    check_equal(format!("regrouping n = {n}, r = {r1} + {r2}"), &lhs, &rhs, n)
}

/// Random placeholder source space and map into `A`.
fn random_input(rng: &mut ChaCha8Rng, family: &OperatorFamily) -> Option<Op> {
    if rng.gen_bool(0.5) {
        return None;
    }
    let a = &family.alg.space;
    let b: Arc<GradedSpace> = random::space(rng, 2, -3, 1);
    let degree = rng.gen_range(-1..=1);
    Some(Op::graded_map(&random::graded_map(rng, &b, a, degree, family.field(), 0.7)))
}

/// Runs every identity up to `max_arity` on data drawn from `seed`.
pub fn run_all(seed: u64, max_arity: usize) -> Result<Vec<CheckReport>> {
    let mut rng = random::rng(seed);
    let mut reports = Vec::new();
    let field = Field::Rational;

    // dg-algebra identities on a random strict conjugate of each base algebra
    let mut dgas: Vec<Arc<AInftyAlgebra>> = Vec::new();
    for base in random::base_algebras(field, max_arity + 1)? {
        dgas.push(random::conjugate_dga(&mut rng, &Arc::new(base))?);
    }
    dgas.push(random::conjugate_dga(&mut rng, &Arc::new(crate::fixtures::exterior_massey(field, max_arity + 1)?))?);
    for alg in &dgas {
        let retract = Arc::new(build_retract(&alg.space, &alg.differential())?);
        let family = OperatorFamily::new(alg.clone(), retract.clone())?;
        for n in 2..=max_arity {
            reports.push(nu_d(&family, n)?);
            reports.push(nu_nu(&family, n)?);
            for i in 1..n {
                reports.push(d_split(&family, i, n - i)?);
            }
            for k in 1..n {
                let inputs: Vec<Op> = (0..=n)
                    .map(|_| {
                        let choice = random_input(&mut rng, &family);
                        placeholder(&family, choice.as_ref())
                    })
                    .collect::<Result<_>>()?;
                reports.push(h_nu(&family, k, n - k, &inputs)?);
            }
        }
        let result = transfer_dga(alg, &retract, max_arity)?;
        for n in 1..max_arity {
            for parts in compositions(n) {
                reports.push(technical_dga(&family, &result.projection, &parts)?);
            }
        }
    }

    // A∞ identities on random transported structures
    for _ in 0..3 {
        let alg = random::ainfty_algebra(&mut rng, field, max_arity)?;
        for n in 2..=max_arity {
            for j in 2..=n {
                reports.push(m_jn_relation(&alg, j, n)?);
            }
        }
        let retract = Arc::new(build_retract(&alg.space, &alg.differential())?);
        let family = OperatorFamily::new(alg.clone(), retract.clone())?;
        let result = transfer_ainfty(&alg, &retract, max_arity)?;
        for n in 1..=max_arity {
            for j in 1..=n {
                for parts in compositions(j) {
                    reports.push(technical_ainfty(&family, &result.projection, n, &parts)?);
                }
            }
        }
    }

    // regrouping of tensor products of random maps
    let v = random::space(&mut rng, 2, -1, 0);
    let w = random::space(&mut rng, 2, -1, 1);
    let fs: Vec<Op> = (1..=max_arity)
        .map(|k| Op::table(&random::multilinear(&mut rng, &v, &w, k, k as i64 - 1, field, 0.6)))
        .collect();
    for n in 2..=max_arity {
        for r in 2..=n {
            for r1 in 1..r {
                reports.push(regrouping(&fs, n, r1, r - r1, field)?);
            }
        }
    }
    Ok(reports)
}
