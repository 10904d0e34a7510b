//! Transfer of A∞-structures along a deformation retract onto homology.
//!
//! The tensor-level operator families are
//! `h_n = Σ_{r+t=n-1} id^{⊗r} ⊗ h ⊗ (ip)^{⊗t}`,
//! `d_n = (-1)^{n-1} Σ id^{⊗r} ⊗ d ⊗ id^{⊗t}` and `m_j^n` from [`AInftyAlgebra::m_jn`].
//! The transferred operations are `m'_n = p χ_n i^{⊗n}` with
//! `χ_n = m_n + Σ_{j=1}^{n-2} (-1)^{n-j} χ_{n-j} h_{n-j} m_{j+1}^n`,
//! the quasi-inverse components are `p_n = (-1)^n Σ_j p_j m_{n-j+1}^n h_n`
//! and the inclusion components are `i_n = -h χ_n i^{⊗n}`.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::ainfty::{check_vanishing, vanishes_for_degree_reasons, AInftyAlgebra, AInftyMorphism, CheckReport};
use crate::error::{Error, Result};
use crate::graded::Shape;
use crate::multilinear::MultilinearMap;
use crate::op::Op;
use crate::retract::DeformationRetract;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Family {
    H,
    D,
    Ip,
    I,
    Mjn(usize),
}

/// Lazily built, memoized operators on tensor powers of `A` attached to a retract.
pub struct OperatorFamily {
    pub alg: Arc<AInftyAlgebra>,
    pub retract: Arc<DeformationRetract>,
    field: Field,
    h: Op,
    d: Op,
    p: Op,
    i: Op,
    ip: Op,
    cache: Mutex<HashMap<(Family, usize), Op>>,
}

impl OperatorFamily {
    pub fn new(alg: Arc<AInftyAlgebra>, retract: Arc<DeformationRetract>) -> Result<Self> {
        if *alg.space != *retract.space {
            return Err(Error::RetractMismatch("retract lives on another space".into()));
        }
        if alg.differential() != retract.d {
            return Err(Error::RetractMismatch("retract differential differs from m_1".into()));
        }
        let field = alg.field;
        Ok(OperatorFamily {
            h: Op::graded_map(&retract.h),
            d: Op::graded_map(&retract.d),
            p: Op::graded_map(&retract.p),
            i: Op::graded_map(&retract.i),
            ip: Op::graded_map(&retract.ip()),
            alg,
            retract,
            field,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn h(&self) -> Op {
        self.h.clone()
    }

    pub fn p(&self) -> Op {
        self.p.clone()
    }

    pub fn i(&self) -> Op {
        self.i.clone()
    }

    pub fn d(&self) -> Op {
        self.d.clone()
    }

    pub fn id(&self, n: usize) -> Op {
        Op::id_power(&self.alg.space, n, self.field)
    }

    fn cached(&self, key: (Family, usize), build: impl FnOnce() -> Result<Op>) -> Result<Op> {
        if let Some(op) = self.cache.lock().get(&key) {
            return Ok(op.clone());
        }
        let op = build()?;
        self.cache.lock().insert(key, op.clone());
        Ok(op)
    }

    /// `h_n = Σ_{r+t=n-1} id^{⊗r} ⊗ h ⊗ (ip)^{⊗t}`.
    pub fn h_n(&self, n: usize) -> Result<Op> {
        self.cached((Family::H, n), || {
            let f = self.field;
            let terms = (0..n)
                .map(|r| {
                    let t = n - 1 - r;
                    let mut parts = vec![self.id(r), self.h.clone()];
                    parts.extend(std::iter::repeat_n(self.ip.clone(), t));
                    Op::tensor(&parts, f)
                })
                .collect();
            let shape = Shape::power(&self.alg.space, n);
            Ok(Op::linear_combination(shape.clone(), shape, 1, f, terms_with_one(f, terms))?.memoized())
        })
    }

    /// `d_n = (-1)^{n-1} Σ_{r+t=n-1} id^{⊗r} ⊗ d ⊗ id^{⊗t}`.
    pub fn d_n(&self, n: usize) -> Result<Op> {
        self.cached((Family::D, n), || {
            let f = self.field;
            let terms = (0..n)
                .map(|r| {
                    (
                        f.sign(n as i64 - 1),
                        Op::tensor(&[self.id(r), self.d.clone(), self.id(n - 1 - r)], f),
                    )
                })
                .collect();
            let shape = Shape::power(&self.alg.space, n);
            Op::linear_combination(shape.clone(), shape, -1, f, terms)
        })
    }

    /// `(ip)^{⊗n}`.
    pub fn ip_n(&self, n: usize) -> Result<Op> {
        self.cached((Family::Ip, n), || Ok(Op::tensor(&vec![self.ip.clone(); n], self.field)))
    }

    /// `i^{⊗n}: H^{⊗n} → A^{⊗n}`.
    pub fn i_n(&self, n: usize) -> Result<Op> {
        self.cached((Family::I, n), || Ok(Op::tensor(&vec![self.i.clone(); n], self.field)))
    }

    /// `m_j^n`; for a dg-algebra `m_2^n` is the tensor product `ν_n`.
    pub fn m_jn(&self, j: usize, n: usize) -> Result<Op> {
        self.cached((Family::Mjn(j), n), || self.alg.m_jn(j, n))
    }

    /// `ν_n = Σ_{r+t=n-2} (-1)^t id^{⊗r} ⊗ ν ⊗ id^{⊗t}`.
    pub fn nu_n(&self, n: usize) -> Result<Op> {
        self.m_jn(2, n)
    }
}

fn terms_with_one(f: Field, ops: Vec<Op>) -> Vec<(crate::scalar::Scalar, Op)> {
    ops.into_iter().map(|o| (f.one(), o)).collect()
}

/// The operators `χ_n: A^{⊗n} → A` for `2 ≤ n ≤ cap`, memoized.
pub struct ChiTable {
    ops: Vec<Op>,
}

impl ChiTable {
    pub fn new(family: &OperatorFamily, cap: usize) -> Result<Self> {
        let alg = &family.alg;
        let mut ops: Vec<Op> = Vec::new();
        for n in 2..=cap {
            let mut terms = vec![(family.field.one(), alg.m_op(n))];
            for j in 1..=n.saturating_sub(2) {
                let prev = &ops[n - j - 2];
                let term = Op::compose(&[prev.clone(), family.h_n(n - j)?, family.m_jn(j + 1, n)?])?;
                terms.push((family.field.sign((n - j) as i64), term));
            }
            let op = Op::linear_combination(
                Shape::power(&alg.space, n),
                Shape::single(&alg.space),
                n as i64 - 2,
                family.field,
                terms,
            )?;
            ops.push(op.memoized());
        }
        Ok(ChiTable { ops })
    }

    /// `χ_n`, defined for `n ≥ 2`.
    pub fn chi(&self, n: usize) -> Result<Op> {
        if n < 2 || n - 2 >= self.ops.len() {
            return Err(Error::ArityMismatch {
                expected: self.ops.len() + 1,
                found: n,
            });
        }
        Ok(self.ops[n - 2].clone())
    }
}

/// The operators `λ_n` of a dg-algebra: `λ_2 = ν` and
/// `λ_n = Σ_{k+l=n} (-1)^{k(l+1)} ν(hλ_k ⊗ hλ_l)` with the convention `hλ_1 = -id`.
pub struct LambdaTable {
    field: Field,
    space_id: Op,
    lambda: Vec<Op>,
    h_lambda: Vec<Op>,
}

impl LambdaTable {
    pub fn new(family: &OperatorFamily, cap: usize) -> Result<Self> {
        let alg = &family.alg;
        if !alg.is_dga_shaped() {
            return Err(Error::NotADgAlgebra("λ operators need m_n = 0 for n ≥ 3".into()));
        }
        let f = family.field;
        let nu = alg.m_op(2);
        let minus_id = family.id(1).neg();
        let mut lambda: Vec<Op> = Vec::new();
        let mut h_lambda: Vec<Op> = vec![minus_id];
        for n in 2..=cap {
            let op = if n == 2 {
                nu.clone()
            } else {
                let mut terms = Vec::new();
                for k in 1..n {
                    let l = n - k;
                    let inner = Op::tensor(&[h_lambda[k - 1].clone(), h_lambda[l - 1].clone()], f);
                    terms.push((f.sign((k * (l + 1)) as i64), nu.after(&inner)?));
                }
                Op::linear_combination(
                    Shape::power(&alg.space, n),
                    Shape::single(&alg.space),
                    n as i64 - 2,
                    f,
                    terms,
                )?
                .memoized()
            };
            h_lambda.push(family.h().after(&op)?.memoized());
            lambda.push(op);
        }
        Ok(LambdaTable {
            field: f,
            space_id: family.id(1),
            lambda,
            h_lambda,
        })
    }

    /// `λ_n` for `n ≥ 2`; `λ_1` is only a formal symbol.
    pub fn lambda(&self, n: usize) -> Result<Op> {
        match n {
            0 => Err(Error::ArityMismatch { expected: 2, found: 0 }),
            1 => Err(Error::FormalSymbolApplied),
            _ => self.lambda.get(n - 2).cloned().ok_or(Error::ArityMismatch {
                expected: self.lambda.len() + 1,
                found: n,
            }),
        }
    }

    /// `h∘λ_n`, with `h∘λ_1 = -id`.
    pub fn h_lambda(&self, n: usize) -> Result<Op> {
        if n == 0 || n > self.h_lambda.len() {
            return Err(Error::ArityMismatch {
                expected: self.h_lambda.len(),
                found: n,
            });
        }
        Ok(self.h_lambda[n - 1].clone())
    }

    pub fn cap(&self) -> usize {
        self.lambda.len() + 1
    }

    /// `Φ_n = Σ_{j+l+k=n, 2≤l≤n-1} (-1)^{jl+k} λ_{j+k+1}(id^{⊗j} ⊗ λ_l ⊗ id^{⊗k})`.
    pub fn phi(&self, n: usize) -> Result<Op> {
        let f = self.field;
        let space = self.space_id.source().0[0].clone();
        let mut terms = Vec::new();
        for l in 2..n {
            for j in 0..=n - l {
                let k = n - l - j;
                let inner = Op::tensor(
                    &[
                        Op::id_power(&space, j, f),
                        self.lambda(l)?,
                        Op::id_power(&space, k, f),
                    ],
                    f,
                );
                terms.push((f.sign((j * l + k) as i64), self.lambda(j + k + 1)?.after(&inner)?));
            }
        }
        Op::linear_combination(
            Shape::power(&space, n),
            Shape::single(&space),
            n as i64 - 3,
            f,
            terms,
        )
    }
}

/// Evaluates `Φ_n` on every basis tuple of `A^{⊗n}`.
pub fn phi_residual(table: &LambdaTable, n: usize) -> Result<CheckReport> {
    Ok(check_vanishing("Φ_n = 0", &table.phi(n)?, n))
}

/// Minimal model, inclusion and projection produced by a transfer.
#[derive(Clone, Debug)]
pub struct TransferResult {
    pub minimal: Arc<AInftyAlgebra>,
    pub inclusion: AInftyMorphism,
    pub projection: AInftyMorphism,
    pub retract: Arc<DeformationRetract>,
    /// Arities at which `m'_n` vanishes for degree reasons alone.
    pub degree_vanishing: Vec<usize>,
    pub method: &'static str,
}

fn materialize(op: &Op, source: &Arc<crate::graded::GradedSpace>, target: &Arc<crate::graded::GradedSpace>) -> Result<MultilinearMap> {
    MultilinearMap::from_op(op, source, target)
}

fn projection_components(family: &OperatorFamily, cap: usize, dga: bool) -> Result<Vec<MultilinearMap>> {
    let a = &family.alg.space;
    let hspace = &family.retract.homology;
    let f = family.field;
    let mut comps: Vec<MultilinearMap> = vec![crate::ainfty::graded_map_to_multilinear(&family.retract.p)?];
    for n in 2..=cap {
        if vanishes_for_degree_reasons(a, hspace, n, n as i64 - 1) {
            comps.push(MultilinearMap::zero(a, hspace, n, n as i64 - 1, f));
            continue;
        }
        let hn = family.h_n(n)?;
        let js: Vec<usize> = if dga { vec![n - 1] } else { (1..n).collect() };
        let mut terms = Vec::new();
        for j in js {
            let pj = comps[j - 1].to_op();
            terms.push((f.sign(n as i64), Op::compose(&[pj, family.m_jn(n - j + 1, n)?, hn.clone()])?));
        }
        let op = Op::linear_combination(
            Shape::power(a, n),
            Shape::single(hspace),
            n as i64 - 1,
            f,
            terms,
        )?;
        comps.push(materialize(&op, a, hspace)?);
    }
    Ok(comps)
}

fn assemble(
    family: &OperatorFamily,
    cap: usize,
    name: String,
    top: impl Fn(usize) -> Result<Op>,
    dga: bool,
    method: &'static str,
) -> Result<TransferResult> {
    let f = family.field;
    let hspace = family.retract.homology.clone();
    let a = family.alg.space.clone();
    let mut m_ops = vec![MultilinearMap::zero(&hspace, &hspace, 1, -1, f)];
    let mut i_ops = vec![crate::ainfty::graded_map_to_multilinear(&family.retract.i)?];
    let mut vanishing = Vec::new();
    for n in 2..=cap {
        if vanishes_for_degree_reasons(&hspace, &hspace, n, n as i64 - 2) {
            vanishing.push(n);
            m_ops.push(MultilinearMap::zero(&hspace, &hspace, n, n as i64 - 2, f));
        } else {
            let op = Op::compose(&[family.p(), top(n)?, family.i_n(n)?])?;
            m_ops.push(materialize(&op, &hspace, &hspace)?);
        }
        if vanishes_for_degree_reasons(&hspace, &a, n, n as i64 - 1) {
            i_ops.push(MultilinearMap::zero(&hspace, &a, n, n as i64 - 1, f));
        } else {
            let op = Op::compose(&[family.h(), top(n)?, family.i_n(n)?])?.neg();
            i_ops.push(materialize(&op, &hspace, &a)?);
        }
    }
    let minimal = Arc::new(AInftyAlgebra::new(name, hspace.clone(), f, cap, m_ops)?);
    let alg_cap = family.alg.with_cap(cap)?;
    let alg = Arc::new(alg_cap);
    let inclusion = AInftyMorphism::new(minimal.clone(), alg.clone(), cap, i_ops)?;
    let projection = AInftyMorphism::new(alg, minimal.clone(), cap, projection_components(family, cap, dga)?)?;
    Ok(TransferResult {
        minimal,
        inclusion,
        projection,
        retract: family.retract.clone(),
        degree_vanishing: vanishing,
        method,
    })
}

fn minimal_name(alg: &AInftyAlgebra) -> String {
    format!("H({})", alg.name)
}

/// Transfer from a dg-algebra through the `λ` recursion.
pub fn transfer_dga(alg: &Arc<AInftyAlgebra>, retract: &Arc<DeformationRetract>, cap: usize) -> Result<TransferResult> {
    if !alg.is_dga_shaped() {
        return Err(Error::NotADgAlgebra("m_n ≠ 0 for some n ≥ 3".into()));
    }
    if cap > alg.cap {
        return Err(Error::ArityMismatch {
            expected: alg.cap,
            found: cap,
        });
    }
    let family = OperatorFamily::new(alg.clone(), retract.clone())?;
    let table = LambdaTable::new(&family, cap)?;
    assemble(&family, cap, minimal_name(alg), |n| table.lambda(n), true, "lambda recursion")
}

/// Transfer from an A∞-algebra through the `χ` recursion.
pub fn transfer_ainfty(alg: &Arc<AInftyAlgebra>, retract: &Arc<DeformationRetract>, cap: usize) -> Result<TransferResult> {
    if cap > alg.cap {
        return Err(Error::ArityMismatch {
            expected: alg.cap,
            found: cap,
        });
    }
    let family = OperatorFamily::new(alg.clone(), retract.clone())?;
    let table = ChiTable::new(&family, cap)?;
    assemble(&family, cap, minimal_name(alg), |n| table.chi(n), false, "chi recursion")
}

/// Transfer choosing the recursion by the shape of the input.
pub fn transfer(alg: &Arc<AInftyAlgebra>, retract: &Arc<DeformationRetract>, cap: usize) -> Result<TransferResult> {
    if alg.is_dga_shaped() {
        transfer_dga(alg, retract, cap)
    } else {
        transfer_ainfty(alg, retract, cap)
    }
}

/// Checks `id^{⊗n} - (ip)^{⊗n} = (-1)^{n-1}(h_n d_n + d_n h_n)`.
pub fn check_tensor_homotopy(family: &OperatorFamily, n: usize) -> Result<CheckReport> {
    let lhs = family.id(n).minus(&family.ip_n(n)?)?;
    let hd = family.h_n(n)?.after(&family.d_n(n)?)?;
    let dh = family.d_n(n)?.after(&family.h_n(n)?)?;
    let rhs = Op::sum(vec![hd, dh])?.signed(n as i64 - 1);
    Ok(check_vanishing("id - (ip)^n = ±(h_n d_n + d_n h_n)", &lhs.minus(&rhs)?, n))
}

/// The comparison morphism `p_a ∘ i_b: H_b → H_a` between two minimal models of one algebra.
pub fn comparison(a: &TransferResult, b: &TransferResult) -> Result<AInftyMorphism> {
    crate::ainfty::compose(&b.inclusion, &a.projection)
}

/// Whether `f_1: H_b → H_a` sends every class to itself, i.e. `i_a f_1 - i_b`
/// takes values in the boundaries of `A`.
pub fn preserves_classes(a: &TransferResult, b: &TransferResult, f: &AInftyMorphism) -> Result<bool> {
    let d = &a.retract.d;
    let space = &a.retract.space;
    let diff = a.retract.i.compose(&f.first())?.sub(&b.retract.i)?;
    for x in 0..b.retract.homology.dim() as u32 {
        let deg = b.retract.homology.degree(x);
        let v = diff.column(x);
        let rows = space.indices_of_degree(deg);
        let rhs: Vec<_> = rows.iter().map(|&r| v.coeff(&[r]).cloned().unwrap_or_else(|| d.field.zero())).collect();
        if rhs.iter().all(|c| c.is_zero()) {
            continue;
        }
        if d.block(deg + 1).solve(&rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the formality test on a minimal model.
#[derive(Clone, Debug)]
pub struct Formality {
    /// Arities `3 ≤ n ≤ cap` with `m'_n ≠ 0`.
    pub nonzero_arities: Vec<usize>,
    /// First nonzero entry of the lowest such arity, as `(n, input names, value)`.
    pub witness: Option<(usize, Vec<String>, String)>,
    pub balanced: Vec<CheckReport>,
}

impl Formality {
    pub fn higher_vanish(&self) -> bool {
        self.nonzero_arities.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        self.balanced.iter().all(CheckReport::passed)
    }

    pub fn is_formal(&self) -> bool {
        self.higher_vanish() && self.is_balanced()
    }
}

pub fn formality(result: &TransferResult) -> Result<Formality> {
    let h = &result.minimal;
    let mut nonzero_arities = Vec::new();
    let mut witness = None;
    for n in 3..=h.cap {
        let m = h.m_ref(n);
        if m.is_zero() {
            continue;
        }
        nonzero_arities.push(n);
        if witness.is_none() {
            let (idx, value) = m.entries().next().expect("nonzero map has an entry");
            let shape = Shape::power(&h.space, n);
            witness = Some((n, shape.names(idx), value.format(|_| Shape::single(&h.space))));
        }
    }
    Ok(Formality {
        nonzero_arities,
        witness,
        balanced: crate::ainfty::check_balanced(h)?,
    })
}
