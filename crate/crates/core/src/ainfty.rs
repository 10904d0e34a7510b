//! A∞-algebras, A∞-morphisms, their relations, composition and inversion.
//!
//! Conventions: `m_n` has degree `n - 2`, `f_n` has degree `n - 1`, and the
//! structure relation at arity `n` is
//! `Σ (-1)^{rs+t} m_{r+t+1}(id^{⊗r} ⊗ m_s ⊗ id^{⊗t}) = 0`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graded::{
    inversions, koszul_permutation_exponent, GradedMap, GradedSpace, Index, Shape, Tensor,
};
use crate::multilinear::MultilinearMap;
use crate::op::Op;
use crate::scalar::Field;

/// Maximum number of offending tuples kept in a report.
pub const MAX_VIOLATIONS: usize = 10;

#[derive(Clone, Debug)]
pub struct AInftyAlgebra {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub field: Field,
    pub cap: usize,
    ops: Vec<MultilinearMap>,
    op_cache: Vec<OnceLock<Op>>,
}

impl PartialEq for AInftyAlgebra {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.field == other.field && self.cap == other.cap && self.ops == other.ops
    }
}

impl AInftyAlgebra {
    /// Builds an algebra from `m_1, ..., m_k` (`k ≤ cap`); missing operations are zero.
    pub fn new(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        field: Field,
        cap: usize,
        ops: Vec<MultilinearMap>,
    ) -> Result<Self> {
        if cap == 0 {
            return Err(Error::SemanticError("cap must be at least 1".into()));
        }
        if ops.len() > cap {
            return Err(Error::ArityMismatch {
                expected: cap,
                found: ops.len(),
            });
        }
        let mut all = Vec::with_capacity(cap);
        for n in 1..=cap {
            let m = match ops.get(n - 1) {
                Some(m) => m.clone(),
                None => MultilinearMap::zero(&space, &space, n, n as i64 - 2, field),
            };
            if m.arity != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: m.arity,
                });
            }
            if *m.source != *space || *m.target != *space {
                return Err(Error::SpaceMismatch(format!("m_{n} does not act on the algebra")));
            }
            if m.degree != n as i64 - 2 {
                return Err(Error::DegreeMismatch(format!("m_{n} has degree {}", m.degree)));
            }
            if m.field != field {
                return Err(Error::SemanticError(format!("m_{n} is over another field")));
            }
            all.push(m);
        }
        Ok(AInftyAlgebra {
            name: name.into(),
            space,
            field,
            cap,
            op_cache: (0..cap).map(|_| OnceLock::new()).collect(),
            ops: all,
        })
    }

    /// A dg-algebra `(A, d, ν)` seen as an A∞-algebra with `m_1 = d`, `m_2 = ν`.
    pub fn dga(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        field: Field,
        cap: usize,
        d: &GradedMap,
        product: MultilinearMap,
    ) -> Result<Self> {
        let m1 = graded_map_to_multilinear(d)?;
        let ops = if cap >= 2 { vec![m1, product] } else { vec![m1] };
        AInftyAlgebra::new(name, space, field, cap.max(1), ops)
    }

    /// The operation `m_n`; zero beyond the cap.
    pub fn m(&self, n: usize) -> MultilinearMap {
        if n >= 1 && n <= self.cap {
            self.ops[n - 1].clone()
        } else {
            MultilinearMap::zero(&self.space, &self.space, n, n as i64 - 2, self.field)
        }
    }

    pub fn m_ref(&self, n: usize) -> &MultilinearMap {
        &self.ops[n - 1]
    }

    pub fn m_op(&self, n: usize) -> Op {
        if n == 0 || n > self.cap {
            return Op::zero(
                Shape::power(&self.space, n),
                Shape::single(&self.space),
                n as i64 - 2,
                self.field,
            );
        }
        self.op_cache[n - 1].get_or_init(|| Op::table(&self.ops[n - 1])).clone()
    }

    pub fn differential(&self) -> GradedMap {
        multilinear_to_graded_map(&self.ops[0])
    }

    /// True when `m_n = 0` for every `n ≥ 3`.
    pub fn is_dga_shaped(&self) -> bool {
        self.ops.iter().skip(2).all(MultilinearMap::is_zero)
    }

    /// Same structure with a different cap (truncating or padding with zero).
    pub fn with_cap(&self, cap: usize) -> Result<Self> {
        let ops = self.ops.iter().take(cap).cloned().collect();
        AInftyAlgebra::new(self.name.clone(), self.space.clone(), self.field, cap, ops)
    }

    pub fn ops(&self) -> &[MultilinearMap] {
        &self.ops
    }

    /// Operator `id^{⊗r} ⊗ m_s ⊗ id^{⊗t}`.
    pub fn insertion(&self, r: usize, s: usize, t: usize) -> Op {
        let f = self.field;
        Op::tensor(
            &[
                Op::id_power(&self.space, r, f),
                self.m_op(s),
                Op::id_power(&self.space, t, f),
            ],
            f,
        )
    }

    /// `m_j^n = Σ_{r+j+t=n} (-1)^{rj+t} id^{⊗r} ⊗ m_j ⊗ id^{⊗t}`, a map `A^{⊗n} → A^{⊗(n-j+1)}`.
    pub fn m_jn(&self, j: usize, n: usize) -> Result<Op> {
        let terms = (0..=n - j)
            .map(|r| {
                let t = n - j - r;
                (self.field.sign((r * j + t) as i64), self.insertion(r, j, t))
            })
            .collect();
        Op::linear_combination(
            Shape::power(&self.space, n),
            Shape::power(&self.space, n - j + 1),
            j as i64 - 2,
            self.field,
            terms,
        )
    }

    /// Left side of the structure relation at arity `n`.
    pub fn stasheff_op(&self, n: usize) -> Result<Op> {
        let mut terms = Vec::new();
        for s in 1..=n {
            for r in 0..=n - s {
                let t = n - s - r;
                let outer = self.m_op(r + t + 1);
                terms.push((
                    self.field.sign((r * s + t) as i64),
                    outer.after(&self.insertion(r, s, t))?,
                ));
            }
        }
        Op::linear_combination(
            Shape::power(&self.space, n),
            Shape::single(&self.space),
            n as i64 - 3,
            self.field,
            terms,
        )
    }
}

pub fn graded_map_to_multilinear(d: &GradedMap) -> Result<MultilinearMap> {
    let mut m = MultilinearMap::zero(&d.source, &d.target, 1, d.degree, d.field);
    for k in 0..d.source.dim() as u32 {
        m.set_value(&[k], d.column(k).clone())?;
    }
    Ok(m)
}

pub fn multilinear_to_graded_map(m: &MultilinearMap) -> GradedMap {
    assert_eq!(m.arity, 1);
    let mut g = GradedMap::zero(&m.source, &m.target, m.degree, m.field);
    for (idx, v) in m.entries() {
        g.set_column(idx[0], v.clone());
    }
    g
}

/// Outcome of checking an operator identity on all basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub arity: usize,
    pub tuples_checked: usize,
    pub total_violations: usize,
    pub violations: Vec<Violation>,
    pub vanishes_for_degree_reasons: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub input: Vec<String>,
    pub residual: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }

    pub fn summary(&self) -> String {
        let status = if self.passed() { "ok" } else { "FAILED" };
        let mut s = format!(
            "{} at arity {}: {status} ({} tuples",
            self.identity, self.arity, self.tuples_checked
        );
        if self.vanishes_for_degree_reasons {
            s.push_str(", vanishes for degree reasons");
        }
        if !self.passed() {
            s.push_str(&format!(", {} violations", self.total_violations));
        }
        s.push(')');
        s
    }
}

/// Evaluates `op` on every basis tuple and records the nonzero residuals.
pub fn check_vanishing(identity: impl Into<String>, op: &Op, arity: usize) -> CheckReport {
    let source = op.source().clone();
    let target = op.target().clone();
    let target_degrees = target.reachable_degrees();
    let vanishes = !source
        .reachable_degrees()
        .iter()
        .any(|d| target_degrees.binary_search(&(d + op.degree())).is_ok());
    let mut report = CheckReport {
        identity: identity.into(),
        arity,
        tuples_checked: 0,
        total_violations: 0,
        violations: Vec::new(),
        vanishes_for_degree_reasons: vanishes,
    };
    if vanishes {
        return report;
    }
    for idx in source.tuples() {
        if target_degrees.binary_search(&(source.degree(&idx) + op.degree())).is_err() {
            continue;
        }
        report.tuples_checked += 1;
        let r = op.apply_basis(&idx);
        if !r.is_zero() {
            report.total_violations += 1;
            if report.violations.len() < MAX_VIOLATIONS {
                report.violations.push(Violation {
                    input: source.names(&idx),
                    residual: r.format(|n| if n == target.len() { target.clone() } else { Shape(vec![]) }),
                });
            }
        }
    }
    report
}

/// Higher associativity at arity `n`.
pub fn check_higher_associativity(alg: &AInftyAlgebra, n: usize) -> Result<CheckReport> {
    if n == 0 || n > alg.cap {
        return Err(Error::ArityMismatch {
            expected: alg.cap,
            found: n,
        });
    }
    Ok(check_vanishing("higher associativity", &alg.stasheff_op(n)?, n))
}

/// Runs the structure relation for every arity up to the cap.
pub fn check_all_higher_associativity(alg: &AInftyAlgebra) -> Result<Vec<CheckReport>> {
    (1..=alg.cap).map(|n| check_higher_associativity(alg, n)).collect()
}

/// Exponent `l(i_1, ..., i_r) = Σ_{j<k} (i_k - 1) i_j`.
pub fn sign_l(parts: &[usize]) -> i64 {
    let mut e = 0i64;
    let mut before = 0i64;
    for &i in parts {
        e += (i as i64 - 1) * before;
        before += i as i64;
    }
    e
}

/// Ordered compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            go(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct AInftyMorphism {
    pub source: Arc<AInftyAlgebra>,
    pub target: Arc<AInftyAlgebra>,
    pub cap: usize,
    components: Vec<MultilinearMap>,
    op_cache: Vec<OnceLock<Op>>,
}

impl AInftyMorphism {
    /// Builds `f` from `f_1, ..., f_k` (`k ≤ cap`); missing components are zero.
    pub fn new(
        source: Arc<AInftyAlgebra>,
        target: Arc<AInftyAlgebra>,
        cap: usize,
        components: Vec<MultilinearMap>,
    ) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::SemanticError("morphism between algebras over different fields".into()));
        }
        if components.len() > cap {
            return Err(Error::ArityMismatch {
                expected: cap,
                found: components.len(),
            });
        }
        let field = source.field;
        let mut all = Vec::with_capacity(cap);
        for n in 1..=cap {
            let f = match components.get(n - 1) {
                Some(f) => f.clone(),
                None => MultilinearMap::zero(&source.space, &target.space, n, n as i64 - 1, field),
            };
            if f.arity != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: f.arity,
                });
            }
            if *f.source != *source.space || *f.target != *target.space {
                return Err(Error::SpaceMismatch(format!("f_{n} has the wrong source or target")));
            }
            if f.degree != n as i64 - 1 {
                return Err(Error::DegreeMismatch(format!("f_{n} has degree {}", f.degree)));
            }
            all.push(f);
        }
        Ok(AInftyMorphism {
            source,
            target,
            cap,
            op_cache: (0..cap).map(|_| OnceLock::new()).collect(),
            components: all,
        })
    }

    pub fn identity(alg: &Arc<AInftyAlgebra>) -> Self {
        let id = graded_map_to_multilinear(&GradedMap::identity(&alg.space, alg.field)).expect("identity is homogeneous");
        AInftyMorphism::new(alg.clone(), alg.clone(), alg.cap, vec![id]).expect("identity is a morphism")
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn component(&self, n: usize) -> &MultilinearMap {
        &self.components[n - 1]
    }

    pub fn components(&self) -> &[MultilinearMap] {
        &self.components
    }

    pub fn f_op(&self, n: usize) -> Op {
        if n == 0 || n > self.cap {
            return Op::zero(
                Shape::power(&self.source.space, n),
                Shape::single(&self.target.space),
                n as i64 - 1,
                self.field(),
            );
        }
        self.op_cache[n - 1].get_or_init(|| Op::table(&self.components[n - 1])).clone()
    }

    pub fn first(&self) -> GradedMap {
        multilinear_to_graded_map(&self.components[0])
    }

    /// `Σ (-1)^{rs+t} f_{r+t+1}(id^{⊗r} ⊗ m_s ⊗ id^{⊗t})` at arity `n`.
    pub fn lhs_op(&self, n: usize) -> Result<Op> {
        let f = self.field();
        let mut terms = Vec::new();
        for s in 1..=n {
            for r in 0..=n - s {
                let t = n - s - r;
                terms.push((
                    f.sign((r * s + t) as i64),
                    self.f_op(r + t + 1).after(&self.source.insertion(r, s, t))?,
                ));
            }
        }
        Op::linear_combination(
            Shape::power(&self.source.space, n),
            Shape::single(&self.target.space),
            n as i64 - 2,
            f,
            terms,
        )
    }

    /// `Σ_{i_1+...+i_r = n} (-1)^l m'_r(f_{i_1} ⊗ ... ⊗ f_{i_r})` at arity `n`.
    pub fn rhs_op(&self, n: usize) -> Result<Op> {
        let f = self.field();
        let mut terms = Vec::new();
        for parts in compositions(n) {
            let tensor = self.tensor_of_components(&parts);
            terms.push((f.sign(sign_l(&parts)), self.target.m_op(parts.len()).after(&tensor)?));
        }
        Op::linear_combination(
            Shape::power(&self.source.space, n),
            Shape::single(&self.target.space),
            n as i64 - 2,
            f,
            terms,
        )
    }

    /// `f_{i_1} ⊗ ... ⊗ f_{i_r}`.
    pub fn tensor_of_components(&self, parts: &[usize]) -> Op {
        let ops: Vec<Op> = parts.iter().map(|&i| self.f_op(i)).collect();
        Op::tensor(&ops, self.field())
    }
}

/// The morphism relation at arity `n`.
pub fn check_morphism(f: &AInftyMorphism, n: usize) -> Result<CheckReport> {
    if n == 0 || n > f.cap || n > f.source.cap || n > f.target.cap {
        return Err(Error::ArityMismatch {
            expected: f.cap,
            found: n,
        });
    }
    let op = f.lhs_op(n)?.minus(&f.rhs_op(n)?)?;
    Ok(check_vanishing("morphism relation", &op, n))
}

pub fn check_all_morphism(f: &AInftyMorphism) -> Result<Vec<CheckReport>> {
    let cap = f.cap.min(f.source.cap).min(f.target.cap);
    (1..=cap).map(|n| check_morphism(f, n)).collect()
}

/// `(g ∘ f)_n` as an operator.
fn composite_component(f: &AInftyMorphism, g: &AInftyMorphism, n: usize) -> Result<Op> {
    let field = f.field();
    let mut terms = Vec::new();
    for parts in compositions(n) {
        if parts.len() > g.cap {
            continue;
        }
        terms.push((
            field.sign(sign_l(&parts)),
            g.f_op(parts.len()).after(&f.tensor_of_components(&parts))?,
        ));
    }
    Op::linear_combination(
        Shape::power(&f.source.space, n),
        Shape::single(&g.target.space),
        n as i64 - 1,
        field,
        terms,
    )
}

/// The composite `g ∘ f` of `f: A → A'` and `g: A' → A''`.
pub fn compose(f: &AInftyMorphism, g: &AInftyMorphism) -> Result<AInftyMorphism> {
    if *f.target.space != *g.source.space {
        return Err(Error::SpaceMismatch("target of f differs from source of g".into()));
    }
    let cap = f.cap.min(g.cap);
    if f.target.field != g.source.field || (1..=cap).any(|n| f.target.m(n) != g.source.m(n)) {
        return Err(Error::SemanticError("target of f carries another structure than the source of g".into()));
    }
    let mut comps = Vec::with_capacity(cap);
    for n in 1..=cap {
        let op = composite_component(f, g, n)?;
        comps.push(MultilinearMap::from_op(&op, &f.source.space, &g.target.space)?);
    }
    AInftyMorphism::new(f.source.clone(), g.target.clone(), cap, comps)
}

/// Two-sided inverse of a morphism whose first component is invertible.
///
/// `g_1 = f_1^{-1}` and `g_n = -f_1^{-1} Σ_{r>1} (-1)^l f_r(g_{i_1} ⊗ ... ⊗ g_{i_r})`,
/// so that the arity-`n` component of `f ∘ g` vanishes.
pub fn invert(f: &AInftyMorphism) -> Result<AInftyMorphism> {
    let field = f.field();
    let inv1 = f.first().inverse()?;
    let inv1_op = Op::graded_map(&inv1);
    let mut g = AInftyMorphism::new(
        f.target.clone(),
        f.source.clone(),
        f.cap,
        vec![graded_map_to_multilinear(&inv1)?],
    )?;
    for n in 2..=f.cap {
        let mut terms = Vec::new();
        for parts in compositions(n).into_iter().filter(|p| p.len() > 1) {
            terms.push((
                field.sign(sign_l(&parts)),
                f.f_op(parts.len()).after(&g.tensor_of_components(&parts))?,
            ));
        }
        let inner = Op::linear_combination(
            Shape::power(&f.target.space, n),
            Shape::single(&f.target.space),
            n as i64 - 1,
            field,
            terms,
        )?;
        let gn = inv1_op.after(&inner)?.neg();
        let mut comps = g.components[..n - 1].to_vec();
        comps.push(MultilinearMap::from_op(&gn, &f.target.space, &f.source.space)?);
        g = AInftyMorphism::new(f.target.clone(), f.source.clone(), f.cap, comps)?;
    }
    Ok(g)
}

/// Transports the structure of `alg` along maps `f_1` (invertible, degree 0)
/// and `f_n` (`n ≥ 2`, degree `n - 1`) into `A' = target of f_1`, returning
/// the new algebra and the morphism `f: alg → A'`.
pub fn pushforward(
    alg: &Arc<AInftyAlgebra>,
    target_space: &Arc<GradedSpace>,
    components: Vec<MultilinearMap>,
    name: impl Into<String>,
) -> Result<(Arc<AInftyAlgebra>, AInftyMorphism)> {
    let cap = alg.cap;
    let field = alg.field;
    let f1 = components
        .first()
        .ok_or_else(|| Error::SemanticError("pushforward needs a first component".into()))?;
    let inv1 = Op::graded_map(&multilinear_to_graded_map(f1).inverse()?);
    let name = name.into();
    let mut ops: Vec<MultilinearMap> = Vec::new();
    for n in 1..=cap {
        let partial = Arc::new(AInftyAlgebra::new(name.clone(), target_space.clone(), field, cap, ops.clone())?);
        let f = AInftyMorphism::new(alg.clone(), partial.clone(), cap, components.clone())?;
        let mut terms = vec![(field.one(), f.lhs_op(n)?)];
        for parts in compositions(n).into_iter().filter(|p| p.len() < n) {
            terms.push((
                -field.sign(sign_l(&parts)),
                partial.m_op(parts.len()).after(&f.tensor_of_components(&parts))?,
            ));
        }
        let residual = Op::linear_combination(
            Shape::power(&alg.space, n),
            Shape::single(target_space),
            n as i64 - 2,
            field,
            terms,
        )?;
        let inv_n = Op::tensor(&vec![inv1.clone(); n], field);
        let mn = residual.after(&inv_n)?;
        ops.push(MultilinearMap::from_op(&mn, target_space, target_space)?);
    }
    let out = Arc::new(AInftyAlgebra::new(name, target_space.clone(), field, cap, ops)?);
    let f = AInftyMorphism::new(alg.clone(), out.clone(), cap, components)?;
    Ok((out, f))
}

/// `(p, q)`-shuffles in one-line form: entry `k` is the position receiving input `k`.
pub fn shuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let first: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let second: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 0).collect();
        out.push(first.into_iter().chain(second).collect());
    }
    out.sort();
    out
}

/// The signed shuffle operator `μ_{p,q}` on `V^{⊗(p+q)}`.
pub fn shuffle_op(space: &Arc<GradedSpace>, field: Field, p: usize, q: usize) -> Op {
    let n = p + q;
    let shape = Shape::power(space, n);
    let sp = space.clone();
    let perms = shuffles(p, q);
    Op::func(shape.clone(), shape, 0, field, move |idx: &[u32]| {
        let degrees: Vec<i64> = idx.iter().map(|&k| sp.degree(k)).collect();
        let mut out = Tensor::zero();
        for sigma in &perms {
            let mut placed = vec![0usize; n];
            for (k, &pos) in sigma.iter().enumerate() {
                placed[pos] = k;
            }
            let e = inversions(sigma) + koszul_permutation_exponent(&degrees, &placed);
            let target: Index = placed.iter().map(|&k| idx[k]).collect();
            out.add_term(target, field.sign(e));
        }
        out
    })
}

/// Checks `op ∘ μ_{p,q} = 0` for all `p + q = n`, `p, q ≥ 1`.
pub fn check_balanced_op(op: &Op, space: &Arc<GradedSpace>, n: usize, what: &str) -> Result<CheckReport> {
    let field = op.field();
    let mut combined = CheckReport {
        identity: format!("{what} vanishes on shuffles"),
        arity: n,
        tuples_checked: 0,
        total_violations: 0,
        violations: Vec::new(),
        vanishes_for_degree_reasons: true,
    };
    for p in 1..n {
        let r = check_vanishing(String::new(), &op.after(&shuffle_op(space, field, p, n - p))?, n);
        combined.tuples_checked += r.tuples_checked;
        combined.total_violations += r.total_violations;
        combined.vanishes_for_degree_reasons &= r.vanishes_for_degree_reasons;
        for mut v in r.violations {
            if combined.violations.len() < MAX_VIOLATIONS {
                v.input.insert(0, format!("μ_{{{p},{}}}", n - p));
                combined.violations.push(v);
            }
        }
    }
    Ok(combined)
}

/// Balancedness of the operations `m_n`, `2 ≤ n ≤ cap`.
pub fn check_balanced(alg: &AInftyAlgebra) -> Result<Vec<CheckReport>> {
    (2..=alg.cap)
        .map(|n| check_balanced_op(&alg.m_op(n), &alg.space, n, &format!("m_{n}")))
        .collect()
}

/// Balancedness of the components `f_n`, `2 ≤ n ≤ cap`.
pub fn check_balanced_morphism(f: &AInftyMorphism) -> Result<Vec<CheckReport>> {
    (2..=f.cap)
        .map(|n| check_balanced_op(&f.f_op(n), &f.source.space, n, &format!("f_{n}")))
        .collect()
}

/// True when no basis tuple of `source^{⊗n}` has an image degree present in `target`.
pub fn vanishes_for_degree_reasons(source: &Arc<GradedSpace>, target: &Arc<GradedSpace>, n: usize, degree: i64) -> bool {
    !Shape::power(source, n)
        .reachable_degrees()
        .iter()
        .any(|d| target.has_degree(d + degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_l_examples() {
        assert_eq!(sign_l(&[1, 2]).rem_euclid(2), 1);
        assert_eq!(sign_l(&[2, 1]).rem_euclid(2), 0);
        assert_eq!(sign_l(&[1, 1, 2]).rem_euclid(2), 0);
        assert_eq!(sign_l(&[1, 1, 1]), 0);
    }

    #[test]
    fn composition_counts() {
        for n in 1..8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(1, 3).len(), 4);
        assert_eq!(shuffles(1, 1), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn odd_shuffle_coefficient() {
        let f = Field::Rational;
        let v = Arc::new(GradedSpace::from_pairs([("x", 1), ("y", 1)]).unwrap());
        let mu = shuffle_op(&v, f, 1, 1);
        let out = mu.apply_basis(&[0, 1]);
        // sgn = -1 and the Koszul sign of swapping two odd elements is -1.
        assert_eq!(out.coeff(&[1, 0]), Some(&f.one()));
        assert_eq!(out.coeff(&[0, 1]), Some(&f.one()));
    }
}
