//! Truncated tensor coalgebra `T^c(sA)` and the perturbation-lemma transfer.
//!
//! Everything here works with suspended operations `b_n = s m_n (s^{-1})^{⊗n}`
//! and `F_n = s f_n (s^{-1})^{⊗n}`, lifted to coderivations and coalgebra
//! maps. It shares no recursion with [`crate::transfer`] and serves as an
//! independent check of it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ainfty::{compositions, AInftyAlgebra, AInftyMorphism, CheckReport};
use crate::error::{Error, Result};
use crate::graded::{single, GradedSpace, Index, Shape, Tensor};
use crate::multilinear::MultilinearMap;
use crate::op::Op;
use crate::retract::DeformationRetract;
use crate::scalar::{Field, Scalar};

/// Exponent `n(n-1)/2` of `α_n`, the sign with `s^{⊗n} (s^{-1})^{⊗n} = α_n id`.
pub fn alpha(n: usize) -> i64 {
    ((n * n.saturating_sub(1)) / 2) as i64
}

/// `s: A → sA`, degree `+1`.
pub fn suspension(space: &Arc<GradedSpace>, suspended: &Arc<GradedSpace>, field: Field) -> Op {
    Op::func(Shape::single(space), Shape::single(suspended), 1, field, move |idx| {
        Tensor::basis(single(idx[0]), field.one())
    })
}

/// `s^{-1}: sA → A`, degree `-1`.
pub fn desuspension(space: &Arc<GradedSpace>, suspended: &Arc<GradedSpace>, field: Field) -> Op {
    Op::func(Shape::single(suspended), Shape::single(space), -1, field, move |idx| {
        Tensor::basis(single(idx[0]), field.one())
    })
}

/// A space together with its suspension.
#[derive(Clone, Debug)]
pub struct Suspended {
    pub space: Arc<GradedSpace>,
    pub shifted: Arc<GradedSpace>,
    pub field: Field,
}

impl Suspended {
    pub fn new(space: &Arc<GradedSpace>, field: Field) -> Self {
        Suspended {
            space: space.clone(),
            shifted: Arc::new(space.suspend()),
            field,
        }
    }

    pub fn s(&self) -> Op {
        suspension(&self.space, &self.shifted, self.field)
    }

    pub fn s_inv(&self) -> Op {
        desuspension(&self.space, &self.shifted, self.field)
    }

    pub fn s_pow(&self, n: usize) -> Op {
        Op::tensor(&vec![self.s(); n], self.field)
    }

    pub fn s_inv_pow(&self, n: usize) -> Op {
        Op::tensor(&vec![self.s_inv(); n], self.field)
    }
}

/// `s φ (s^{-1})^{⊗n}` for `φ: A^{⊗n} → B`.
pub fn suspend_map(phi: &Op, a: &Suspended, b: &Suspended) -> Result<Op> {
    let n = phi.source().len();
    Op::compose(&[b.s(), phi.clone(), a.s_inv_pow(n)])
}

/// `α_n s^{-1} Φ s^{⊗n}` for `Φ: (sA)^{⊗n} → sB`; inverse of [`suspend_map`].
pub fn desuspend_map(phi: &Op, a: &Suspended, b: &Suspended) -> Result<Op> {
    let n = phi.source().len();
    Ok(Op::compose(&[b.s_inv(), phi.clone(), a.s_pow(n)])?.signed(alpha(n)))
}

/// `T^c(V)` truncated at weight `cap`.
#[derive(Clone, Debug)]
pub struct TensorCoalgebra {
    pub base: Arc<GradedSpace>,
    pub cap: usize,
    pub field: Field,
}

impl TensorCoalgebra {
    pub fn new(base: &Arc<GradedSpace>, cap: usize, field: Field) -> Self {
        TensorCoalgebra {
            base: base.clone(),
            cap,
            field,
        }
    }

    pub fn shape(&self, w: usize) -> Shape {
        Shape::power(&self.base, w)
    }

    /// All basis words of weight `0..=cap`.
    pub fn words(&self, max_weight: usize) -> impl Iterator<Item = Index> + '_ {
        (0..=max_weight.min(self.cap)).flat_map(move |w| self.shape(w).tuples())
    }

    pub fn degree(&self, word: &[u32]) -> i64 {
        word.iter().map(|&k| self.base.degree(k)).sum()
    }

    pub fn unit(&self) -> Tensor {
        Tensor::basis(Index::new(), self.field.one())
    }
}

/// Deconcatenation `Δ(v_1...v_n) = Σ_k (v_1...v_k) ⊗ (v_{k+1}...v_n)`.
pub fn coproduct(x: &Tensor) -> BiTensor {
    let mut out = BiTensor::default();
    for (w, c) in x.iter() {
        for k in 0..=w.len() {
            out.add(Index::from_slice(&w[..k]), Index::from_slice(&w[k..]), c.clone());
        }
    }
    out
}

/// Counit: the weight-zero coefficient.
pub fn counit(x: &Tensor, field: Field) -> Scalar {
    x.coeff(&[]).cloned().unwrap_or_else(|| field.zero())
}

/// Elements of `T^c(V) ⊗ T^c(V)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiTensor {
    terms: BTreeMap<(Index, Index), Scalar>,
}

impl BiTensor {
    pub fn add(&mut self, a: Index, b: Index, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert_with(|| {
            let f = c.field();
            f.zero()
        });
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_all(&mut self, other: &BiTensor, c: &Scalar) {
        for ((a, b), x) in &other.terms {
            self.add(a.clone(), b.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Index, Index), &Scalar)> {
        self.terms.iter()
    }
}

/// A map of tensor coalgebras given by blocks `weight a → weight b`.
#[derive(Clone, Debug)]
pub struct WeightGradedMap {
    pub source: TensorCoalgebra,
    pub target: TensorCoalgebra,
    pub degree: i64,
    blocks: BTreeMap<(usize, usize), Op>,
}

impl WeightGradedMap {
    pub fn new(source: &TensorCoalgebra, target: &TensorCoalgebra, degree: i64) -> Self {
        WeightGradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(c: &TensorCoalgebra) -> Self {
        let mut m = WeightGradedMap::new(c, c, 0);
        for w in 0..=c.cap {
            m.blocks.insert((w, w), Op::identity(c.shape(w), c.field));
        }
        m
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    /// Adds an operator to the block `a → b`.
    pub fn add_block(&mut self, a: usize, b: usize, op: Op) -> Result<()> {
        if a > self.source.cap || b > self.target.cap || op.is_zero_op() {
            return Ok(());
        }
        if op.source().len() != a || op.target().len() != b {
            return Err(Error::ArityMismatch {
                expected: a,
                found: op.source().len(),
            });
        }
        let new = match self.blocks.remove(&(a, b)) {
            Some(old) => Op::sum(vec![old, op])?,
            None => op,
        };
        if !new.is_zero_op() {
            self.blocks.insert((a, b), new);
        }
        Ok(())
    }

    pub fn block(&self, a: usize, b: usize) -> Option<&Op> {
        self.blocks.get(&(a, b))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Op)> {
        self.blocks.iter()
    }

    pub fn apply(&self, x: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in x.iter() {
            for ((a, _), op) in self.blocks.range((w.len(), 0)..=(w.len(), usize::MAX)) {
                debug_assert_eq!(*a, w.len());
                out.add_scaled(&op.apply_basis(w), c);
            }
        }
        out
    }

    /// `self ∘ other`, blockwise; the resulting blocks are memoized.
    pub fn compose(&self, other: &WeightGradedMap) -> Result<WeightGradedMap> {
        let mut out = WeightGradedMap::new(&other.source, &self.target, self.degree + other.degree);
        let mut acc: BTreeMap<(usize, usize), Vec<Op>> = BTreeMap::new();
        for (&(a, b), g) in &other.blocks {
            for ((_, c), f) in self.blocks.range((b, 0)..=(b, usize::MAX)) {
                acc.entry((a, *c)).or_default().push(f.after(g)?);
            }
        }
        for ((a, c), ops) in acc {
            out.add_block(a, c, Op::sum(ops)?.memoized())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &Scalar) -> WeightGradedMap {
        let mut out = self.clone();
        for op in out.blocks.values_mut() {
            *op = op.scaled(s.clone());
        }
        out
    }

    pub fn add(&self, other: &WeightGradedMap) -> Result<WeightGradedMap> {
        let mut out = self.clone();
        for (&(a, b), op) in &other.blocks {
            out.add_block(a, b, op.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeightGradedMap) -> Result<WeightGradedMap> {
        self.add(&other.scaled(&self.field().from_i64(-1)))
    }

    /// True when every block strictly lowers weight.
    pub fn is_weight_decreasing(&self) -> bool {
        self.blocks.keys().all(|(a, b)| b < a)
    }

    /// Projection onto weight one: the blocks `n → 1`.
    pub fn corestriction(&self, n: usize) -> Option<&Op> {
        self.block(n, 1)
    }
}

/// Coderivation with components `b_j: V^{⊗j} → V` (index `j`, `b_0` allowed):
/// block `n → n-j+1` is `Σ_{r+j+t=n} id^{⊗r} ⊗ b_j ⊗ id^{⊗t}`.
pub fn lift_coderivation(coalg: &TensorCoalgebra, components: &BTreeMap<usize, Op>, degree: i64) -> Result<WeightGradedMap> {
    let f = coalg.field;
    let mut out = WeightGradedMap::new(coalg, coalg, degree);
    for (&j, b) in components {
        if b.degree() != degree {
            return Err(Error::DegreeMismatch(format!("component b_{j} has degree {}", b.degree())));
        }
        for n in j..=coalg.cap {
            let target_weight = n + 1 - j;
            if target_weight > coalg.cap {
                continue;
            }
            let terms: Vec<Op> = (0..=n - j)
                .map(|r| {
                    let t = n - j - r;
                    Op::tensor(
                        &[
                            Op::id_power(&coalg.base, r, f),
                            b.clone(),
                            Op::id_power(&coalg.base, t, f),
                        ],
                        f,
                    )
                })
                .collect();
            out.add_block(n, target_weight, Op::sum(terms)?)?;
        }
    }
    Ok(out)
}

/// Coalgebra map with components `F_n: V^{⊗n} → W` (`n ≥ 1`): block `n → r` is
/// `Σ_{i_1+...+i_r=n} F_{i_1} ⊗ ... ⊗ F_{i_r}`, and the unit goes to the unit.
pub fn lift_morphism(
    source: &TensorCoalgebra,
    target: &TensorCoalgebra,
    components: &BTreeMap<usize, Op>,
) -> Result<WeightGradedMap> {
    let f = source.field;
    if let Some(op) = components.get(&0) {
        if !op.is_zero_op() && !op.vanishes() {
            return Err(Error::UnitViolation);
        }
    }
    let degree = components.values().next().map_or(0, Op::degree);
    let mut out = WeightGradedMap::new(source, target, degree);
    out.add_block(0, 0, Op::identity(Shape(vec![]), f))?;
    for n in 1..=source.cap {
        let mut by_length: BTreeMap<usize, Vec<Op>> = BTreeMap::new();
        for parts in compositions(n) {
            if parts.len() > target.cap {
                continue;
            }
            let ops: Option<Vec<Op>> = parts.iter().map(|i| components.get(i).cloned()).collect();
            if let Some(ops) = ops {
                by_length.entry(parts.len()).or_default().push(Op::tensor(&ops, f));
            }
        }
        for (r, ops) in by_length {
            out.add_block(n, r, Op::sum(ops)?)?;
        }
    }
    Ok(out)
}

/// `(F ⊗ G)(a ⊗ b) = (-1)^{|G||a|} F(a) ⊗ G(b)` on bitensors.
fn apply_pair(f: &WeightGradedMap, g: &WeightGradedMap, x: &BiTensor) -> BiTensor {
    let mut out = BiTensor::default();
    for ((a, b), c) in x.iter() {
        let fa = f.apply(&Tensor::basis(a.clone(), c.clone()));
        if fa.is_zero() {
            continue;
        }
        let gb = g.apply(&Tensor::basis(b.clone(), f.field().one()));
        let e = g.degree * f.source.degree(a);
        for (u, x) in fa.iter() {
            for (v, y) in gb.iter() {
                out.add(u.clone(), v.clone(), (x * y).signed(e));
            }
        }
    }
    out
}

fn bi_diff(a: &BiTensor, b: &BiTensor) -> BiTensor {
    let mut out = a.clone();
    let minus = b.terms.values().next().map(|x| x.field().from_i64(-1));
    if let Some(m) = minus {
        out.add_all(b, &m);
    }
    out
}

/// Drops bitensor terms whose total weight exceeds `cap`.
fn truncate(x: BiTensor, cap: usize) -> BiTensor {
    BiTensor {
        terms: x.terms.into_iter().filter(|((a, b), _)| a.len() + b.len() <= cap).collect(),
    }
}

/// Checks `Δ D = (D ⊗ id + id ⊗ D) Δ` on words of weight at most `max_weight`.
pub fn check_coderivation(d: &WeightGradedMap, max_weight: usize) -> CheckReport {
    let id = WeightGradedMap::identity(&d.source);
    let cap = d.target.cap;
    let mut report = empty_report("coderivation rule", max_weight);
    for w in d.source.words(max_weight) {
        let x = Tensor::basis(w.clone(), d.field().one());
        let lhs = coproduct(&d.apply(&x));
        let dx = coproduct(&x);
        let mut rhs = apply_pair(d, &id, &dx);
        rhs.add_all(&apply_pair(&id, d, &dx), &d.field().one());
        record(&mut report, &d.source, &w, bi_diff(&lhs, &truncate(rhs, cap)));
    }
    report
}

/// Checks `Δ F = (F ⊗ F) Δ` and `ε F = ε` on words of weight at most `max_weight`.
pub fn check_coalgebra_map(f: &WeightGradedMap, max_weight: usize) -> CheckReport {
    let cap = f.target.cap;
    let mut report = empty_report("coalgebra map rule", max_weight);
    for w in f.source.words(max_weight) {
        let x = Tensor::basis(w.clone(), f.field().one());
        let fx = f.apply(&x);
        let lhs = coproduct(&fx);
        let rhs = truncate(apply_pair(f, f, &coproduct(&x)), cap);
        let mut diff = bi_diff(&lhs, &rhs);
        let eps = &counit(&fx, f.field()) - &counit(&x, f.field());
        diff.add(Index::new(), Index::from_slice(&[u32::MAX]), eps);
        record(&mut report, &f.source, &w, diff);
    }
    report
}

/// Checks that `lhs - rhs` vanishes on words of weight at most `max_weight`.
pub fn check_equal(name: &str, lhs: &WeightGradedMap, rhs: &WeightGradedMap, max_weight: usize) -> CheckReport {
    let mut report = empty_report(name, max_weight);
    for w in lhs.source.words(max_weight) {
        let x = Tensor::basis(w.clone(), lhs.field().one());
        let mut r = lhs.apply(&x);
        r.sub_assign(&rhs.apply(&x));
        let mut bi = BiTensor::default();
        for (idx, c) in r.iter() {
            bi.add(idx.clone(), Index::new(), c.clone());
        }
        record(&mut report, &lhs.source, &w, bi);
    }
    report
}

fn empty_report(name: &str, arity: usize) -> CheckReport {
    CheckReport {
        identity: name.to_string(),
        arity,
        tuples_checked: 0,
        total_violations: 0,
        violations: Vec::new(),
        vanishes_for_degree_reasons: false,
    }
}

fn record(report: &mut CheckReport, c: &TensorCoalgebra, w: &[u32], residual: BiTensor) {
    report.tuples_checked += 1;
    if residual.is_zero() {
        return;
    }
    report.total_violations += 1;
    if report.violations.len() < crate::ainfty::MAX_VIOLATIONS {
        report.violations.push(crate::ainfty::Violation {
            input: c.shape(w.len()).names(w),
            residual: format!("{} terms", residual.terms.len()),
        });
    }
}

/// Suspended operations `b_n = s m_n (s^{-1})^{⊗n}` of an A∞-algebra.
pub fn suspended_operations(alg: &AInftyAlgebra, susp: &Suspended) -> Result<BTreeMap<usize, Op>> {
    let mut out = BTreeMap::new();
    for n in 1..=alg.cap {
        let m = alg.m_op(n);
        if !m.is_zero_op() {
            out.insert(n, suspend_map(&m, susp, susp)?);
        }
    }
    Ok(out)
}

/// The coderivation `D` of `T^c(sA)` built from the operations of `alg`.
pub fn bar_differential(alg: &AInftyAlgebra, cap: usize) -> Result<(Suspended, TensorCoalgebra, WeightGradedMap)> {
    let susp = Suspended::new(&alg.space, alg.field);
    let coalg = TensorCoalgebra::new(&susp.shifted, cap, alg.field);
    let ops = suspended_operations(alg, &susp)?;
    let d = lift_coderivation(&coalg, &ops, -1)?;
    Ok((susp, coalg, d))
}

/// The coalgebra map lifted from an A∞-morphism.
pub fn bar_morphism(f: &AInftyMorphism, cap: usize) -> Result<WeightGradedMap> {
    let a = Suspended::new(&f.source.space, f.field());
    let b = Suspended::new(&f.target.space, f.field());
    let src = TensorCoalgebra::new(&a.shifted, cap, f.field());
    let tgt = TensorCoalgebra::new(&b.shifted, cap, f.field());
    let mut comps = BTreeMap::new();
    for n in 1..=f.cap.min(cap) {
        comps.insert(n, suspend_map(&f.f_op(n), &a, &b)?);
    }
    lift_morphism(&src, &tgt, &comps)
}

/// Sum `Σ_{k=0}^{cap} X^k` of a weight-decreasing degree-zero map, in nested form.
fn neumann_series(x: &WeightGradedMap) -> Result<WeightGradedMap> {
    if !x.is_weight_decreasing() {
        return Err(Error::NotWeightDecreasing("perturbation series would not terminate".into()));
    }
    let id = WeightGradedMap::identity(&x.source);
    let mut acc = id.clone();
    for _ in 0..x.source.cap {
        acc = id.add(&x.compose(&acc)?)?;
    }
    Ok(acc)
}

/// Lift of a retract to the tensor coalgebras together with the perturbed data.
#[derive(Clone)]
pub struct Perturbation {
    pub source: TensorCoalgebra,
    pub target: TensorCoalgebra,
    /// Full coderivation `D` of `T^c(sA)`.
    pub d: WeightGradedMap,
    /// Linear part `d̃`, lifted from `m_1` alone.
    pub d_tilde: WeightGradedMap,
    /// Perturbation `t = D - d̃`, lifted from `m_{≥2}`.
    pub t: WeightGradedMap,
    pub p: WeightGradedMap,
    pub i: WeightGradedMap,
    pub h: WeightGradedMap,
    pub h_t: WeightGradedMap,
    pub i_t: WeightGradedMap,
    pub p_t: WeightGradedMap,
    pub d_infinity: WeightGradedMap,
}

impl Perturbation {
    /// `𝒟_t = id - D H_t - H_t D`.
    pub fn d_t(&self) -> Result<WeightGradedMap> {
        let id = WeightGradedMap::identity(&self.source);
        id.sub(&self.d.compose(&self.h_t)?)?.sub(&self.h_t.compose(&self.d)?)
    }
}

/// Lifts `(p, i, h)` to `(P, I, H)` on the tensor coalgebras and perturbs by
/// `t = D - d̃`: `H_t = Σ (-Ht)^k H`, `I_t = (id - H_t D) I`,
/// `P_t = P(id - D H_t)` and `d_∞ = Σ P(-tH)^k t I`.
pub fn perturb(alg: &AInftyAlgebra, retract: &DeformationRetract, cap: usize) -> Result<Perturbation> {
    if *alg.space != *retract.space || alg.differential() != retract.d {
        return Err(Error::RetractMismatch("retract does not belong to the algebra".into()));
    }
    let field = alg.field;
    let a = Suspended::new(&alg.space, field);
    let h = Suspended::new(&retract.homology, field);
    let ta = TensorCoalgebra::new(&a.shifted, cap, field);
    let th = TensorCoalgebra::new(&h.shifted, cap, field);
    let all = suspended_operations(alg, &a)?;
    let d_full = lift_coderivation(&ta, &all, -1)?;
    let linear: BTreeMap<usize, Op> = all.iter().filter(|(n, _)| **n == 1).map(|(n, o)| (*n, o.clone())).collect();
    let higher: BTreeMap<usize, Op> = all.iter().filter(|(n, _)| **n != 1).map(|(n, o)| (*n, o.clone())).collect();
    let d_tilde = lift_coderivation(&ta, &linear, -1)?;
    let t = lift_coderivation(&ta, &higher, -1)?;
    if !t.is_weight_decreasing() {
        return Err(Error::NotWeightDecreasing("perturbation must lower weight".into()));
    }
    let sp = Op::compose(&[h.s(), Op::graded_map(&retract.p), a.s_inv()])?;
    let si = Op::compose(&[a.s(), Op::graded_map(&retract.i), h.s_inv()])?;
    let sh = Op::compose(&[a.s(), Op::graded_map(&retract.h), a.s_inv()])?;
    let sip = Op::compose(&[a.s(), Op::graded_map(&retract.ip()), a.s_inv()])?;
    let mut big_p = WeightGradedMap::new(&ta, &th, 0);
    let mut big_i = WeightGradedMap::new(&th, &ta, 0);
    let mut big_h = WeightGradedMap::new(&ta, &ta, 1);
    for n in 0..=cap {
        big_p.add_block(n, n, Op::tensor(&vec![sp.clone(); n], field))?;
        big_i.add_block(n, n, Op::tensor(&vec![si.clone(); n], field))?;
        if n >= 1 {
            let terms: Vec<Op> = (0..n)
                .map(|r| {
                    let mut parts = vec![Op::id_power(&a.shifted, r, field), sh.clone()];
                    parts.extend(std::iter::repeat_n(sip.clone(), n - 1 - r));
                    Op::tensor(&parts, field)
                })
                .collect();
            big_h.add_block(n, n, Op::sum(terms)?.memoized())?;
        }
    }
    let minus = field.from_i64(-1);
    let ht = big_h.compose(&t)?.scaled(&minus);
    let th_ = t.compose(&big_h)?.scaled(&minus);
    let h_inf = neumann_series(&ht)?.compose(&big_h)?;
    let id_a = WeightGradedMap::identity(&ta);
    let i_inf = id_a.sub(&h_inf.compose(&d_full)?)?.compose(&big_i)?;
    let p_inf = big_p.compose(&id_a.sub(&d_full.compose(&h_inf)?)?)?;
    let d_inf = big_p.compose(&neumann_series(&th_)?)?.compose(&t)?.compose(&big_i)?;
    Ok(Perturbation {
        source: ta,
        target: th,
        d: d_full,
        d_tilde,
        t,
        p: big_p,
        i: big_i,
        h: big_h,
        h_t: h_inf,
        i_t: i_inf,
        p_t: p_inf,
        d_infinity: d_inf,
    })
}

/// Outcome of the perturbation-lemma transfer.
pub struct OracleResult {
    pub minimal: Arc<AInftyAlgebra>,
    pub inclusion: Vec<MultilinearMap>,
    pub projection: Vec<MultilinearMap>,
    pub perturbation: Perturbation,
}

/// Homotopy transfer through the tensor coalgebra; `m'_n`, `i_n` and `p_n`
/// are the desuspended weight-one components of `d_∞`, `I_t` and `P_t`.
pub fn oracle_transfer(alg: &Arc<AInftyAlgebra>, retract: &DeformationRetract, cap: usize) -> Result<OracleResult> {
    let pert = perturb(alg, retract, cap)?;
    let field = alg.field;
    let a = Suspended::new(&alg.space, field);
    let h = Suspended::new(&retract.homology, field);
    let d_inf = &pert.d_infinity;
    let i_inf = &pert.i_t;
    let p_inf = &pert.p_t;
    let hspace = retract.homology.clone();
    let mut m_ops = Vec::new();
    let mut i_ops = Vec::new();
    let mut p_ops = Vec::new();
    for n in 1..=cap {
        let m = match d_inf.corestriction(n) {
            Some(op) => MultilinearMap::from_op(&desuspend_map(op, &h, &h)?, &hspace, &hspace)?,
            None => MultilinearMap::zero(&hspace, &hspace, n, n as i64 - 2, field),
        };
        m_ops.push(m);
        let i = match i_inf.corestriction(n) {
            Some(op) => MultilinearMap::from_op(&desuspend_map(op, &h, &a)?, &hspace, &alg.space)?,
            None => MultilinearMap::zero(&hspace, &alg.space, n, n as i64 - 1, field),
        };
        i_ops.push(i);
        let p = match p_inf.corestriction(n) {
            Some(op) => MultilinearMap::from_op(&desuspend_map(op, &a, &h)?, &alg.space, &hspace)?,
            None => MultilinearMap::zero(&alg.space, &hspace, n, n as i64 - 1, field),
        };
        p_ops.push(p);
    }
    let minimal = Arc::new(AInftyAlgebra::new(format!("H({})", alg.name), hspace, field, cap, m_ops)?);
    Ok(OracleResult {
        minimal,
        inclusion: i_ops,
        projection: p_ops,
        perturbation: pert,
    })
}

/// Weight-one part of `D∘D` on words up to `max_weight`; zero exactly when the
/// operations satisfy the structure relations up to that arity.
pub fn check_square_zero(d: &WeightGradedMap, max_weight: usize) -> Result<CheckReport> {
    let dd = d.compose(d)?;
    let zero = WeightGradedMap::new(&d.source, &d.target, dd.degree);
    Ok(check_equal("D∘D = 0", &dd, &zero, max_weight))
}

/// Readback convention used by [`oracle_transfer`].
pub const BRIDGE: &str = "m'_n = α_n s^{-1} (d_∞)_{n→1} s^{⊗n}, i_n and p_n likewise from I_t and P_t, α_n = (-1)^{n(n-1)/2}";

/// Number of differing table entries between the two transfer paths at one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityDiff {
    pub arity: usize,
    pub m: usize,
    pub i: usize,
    pub p: usize,
    /// Differences in `m'_n` if the readback dropped `α_n`.
    pub m_without_bridge: usize,
}

#[derive(Clone, Debug)]
pub struct OracleDiff {
    pub arities: Vec<ArityDiff>,
}

impl OracleDiff {
    pub fn is_zero(&self) -> bool {
        self.arities.iter().all(|a| a.m == 0 && a.i == 0 && a.p == 0)
    }

    /// Which readback convention reproduces the recursive transfer.
    pub fn convention(&self) -> &'static str {
        if self.is_zero() {
            "alpha bridge"
        } else if self.arities.iter().all(|a| a.m_without_bridge == 0) {
            "no bridge"
        } else {
            "neither"
        }
    }
}

/// Compares the recursive transfer with the perturbation-lemma transfer arity by arity.
pub fn oracle_diff(transfer: &crate::transfer::TransferResult, oracle: &OracleResult) -> Result<OracleDiff> {
    let cap = transfer.minimal.cap.min(oracle.minimal.cap);
    let mut arities = Vec::new();
    for n in 1..=cap {
        let m_rec = transfer.minimal.m(n);
        let m_orc = oracle.minimal.m(n);
        let flipped = m_orc.scaled(&m_orc.field.sign(alpha(n)));
        arities.push(ArityDiff {
            arity: n,
            m: m_rec.difference(&m_orc)?.support_size(),
            i: transfer.inclusion.component(n).difference(&oracle.inclusion[n - 1])?.support_size(),
            p: transfer.projection.component(n).difference(&oracle.projection[n - 1])?.support_size(),
            m_without_bridge: m_rec.difference(&flipped)?.support_size(),
        });
    }
    Ok(OracleDiff { arities })
}
