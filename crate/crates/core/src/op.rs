//! Symbolic operators between tensor powers, evaluated on basis tuples.
//!
//! An [`Op`] is a DAG built from tables, identities, compositions, tensor
//! products and linear combinations. Tensor products of maps act with the
//! Koszul rule `(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)`; composition
//! carries no sign. Nodes marked with [`Op::memoized`] cache their values on
//! basis tuples, which keeps recursive constructions polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::graded::{koszul_apply_exponent, single, GradedMap, GradedSpace, Index, Shape, Tensor};
use crate::multilinear::MultilinearMap;
use crate::scalar::{Field, Scalar};

type Func = dyn Fn(&[u32]) -> Tensor + Send + Sync;

enum Kind {
    Identity,
    Zero,
    Table(Arc<HashMap<Index, Tensor>>),
    Func(Arc<Func>),
    /// Outermost first.
    Compose(Vec<Op>),
    Tensor(Vec<Op>),
    Sum(Vec<(Scalar, Op)>),
}

struct Node {
    source: Shape,
    target: Shape,
    degree: i64,
    field: Field,
    target_degrees: Vec<i64>,
    kind: Kind,
    memo: Option<Mutex<HashMap<Index, Tensor>>>,
}

#[derive(Clone)]
pub struct Op(Arc<Node>);

impl fmt::Debug for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.kind {
            Kind::Identity => "id",
            Kind::Zero => "0",
            Kind::Table(_) => "table",
            Kind::Func(_) => "fn",
            Kind::Compose(_) => "compose",
            Kind::Tensor(_) => "tensor",
            Kind::Sum(_) => "sum",
        };
        write!(
            f,
            "Op({kind}: arity {} -> {}, degree {})",
            self.0.source.len(),
            self.0.target.len(),
            self.0.degree
        )
    }
}

fn same_shape(a: &Shape, b: &Shape) -> bool {
    a.0.len() == b.0.len() && a.0.iter().zip(&b.0).all(|(x, y)| Arc::ptr_eq(x, y) || **x == **y)
}

impl Op {
    fn build(source: Shape, target: Shape, degree: i64, field: Field, kind: Kind) -> Op {
        let target_degrees = target.reachable_degrees();
        Op(Arc::new(Node {
            source,
            target,
            degree,
            field,
            target_degrees,
            kind,
            memo: None,
        }))
    }

    pub fn identity(shape: Shape, field: Field) -> Op {
        Op::build(shape.clone(), shape, 0, field, Kind::Identity)
    }

    /// `id^{⊗n}` on `space`.
    pub fn id_power(space: &Arc<GradedSpace>, n: usize, field: Field) -> Op {
        Op::identity(Shape::power(space, n), field)
    }

    pub fn zero(source: Shape, target: Shape, degree: i64, field: Field) -> Op {
        Op::build(source, target, degree, field, Kind::Zero)
    }

    pub fn table(map: &MultilinearMap) -> Op {
        if map.is_zero() {
            return Op::zero(map.source_shape(), Shape::single(&map.target), map.degree, map.field);
        }
        let t: HashMap<Index, Tensor> = map.entries().map(|(k, v)| (k.clone(), v.clone())).collect();
        Op::build(
            map.source_shape(),
            Shape::single(&map.target),
            map.degree,
            map.field,
            Kind::Table(Arc::new(t)),
        )
    }

    pub fn graded_map(map: &GradedMap) -> Op {
        let mut t = HashMap::new();
        for k in 0..map.source.dim() as u32 {
            let col = map.column(k);
            if !col.is_zero() {
                t.insert(single(k), col.clone());
            }
        }
        if t.is_empty() {
            return Op::zero(Shape::single(&map.source), Shape::single(&map.target), map.degree, map.field);
        }
        Op::build(
            Shape::single(&map.source),
            Shape::single(&map.target),
            map.degree,
            map.field,
            Kind::Table(Arc::new(t)),
        )
    }

    /// An operator given by a closure on basis tuples.
    pub fn func(
        source: Shape,
        target: Shape,
        degree: i64,
        field: Field,
        f: impl Fn(&[u32]) -> Tensor + Send + Sync + 'static,
    ) -> Op {
        Op::build(source, target, degree, field, Kind::Func(Arc::new(f)))
    }

    pub fn source(&self) -> &Shape {
        &self.0.source
    }

    pub fn target(&self) -> &Shape {
        &self.0.target
    }

    pub fn degree(&self) -> i64 {
        self.0.degree
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn is_zero_op(&self) -> bool {
        matches!(self.0.kind, Kind::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.0.kind, Kind::Identity)
    }

    /// Same operator with a cache of its values on basis tuples.
    pub fn memoized(&self) -> Op {
        if self.0.memo.is_some() || matches!(self.0.kind, Kind::Identity | Kind::Zero | Kind::Table(_)) {
            return self.clone();
        }
        let kind = match &self.0.kind {
            Kind::Func(f) => Kind::Func(f.clone()),
            Kind::Compose(v) => Kind::Compose(v.clone()),
            Kind::Tensor(v) => Kind::Tensor(v.clone()),
            Kind::Sum(v) => Kind::Sum(v.clone()),
            Kind::Identity | Kind::Zero | Kind::Table(_) => unreachable!(),
        };
        Op(Arc::new(Node {
            source: self.0.source.clone(),
            target: self.0.target.clone(),
            degree: self.0.degree,
            field: self.0.field,
            target_degrees: self.0.target_degrees.clone(),
            kind,
            memo: Some(Mutex::new(HashMap::new())),
        }))
    }

    /// Composition `ops[0] ∘ ops[1] ∘ ...`.
    pub fn compose(ops: &[Op]) -> Result<Op> {
        let first = ops.first().ok_or_else(|| Error::SemanticError("empty composition".into()))?;
        for w in ops.windows(2) {
            if !same_shape(w[0].source(), w[1].target()) {
                return Err(Error::SpaceMismatch(format!(
                    "cannot compose {:?} after {:?}",
                    w[0], w[1]
                )));
            }
        }
        let last = ops.last().unwrap();
        let degree = ops.iter().map(Op::degree).sum();
        let (source, target, field) = (last.source().clone(), first.target().clone(), first.field());
        if ops.iter().any(Op::is_zero_op) {
            return Ok(Op::zero(source, target, degree, field));
        }
        let mut parts = Vec::new();
        for op in ops {
            match &op.0.kind {
                Kind::Identity => {}
                Kind::Compose(inner) if op.0.memo.is_none() => parts.extend(inner.iter().cloned()),
                _ => parts.push(op.clone()),
            }
        }
        match parts.len() {
            0 => Ok(Op::identity(source, field)),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Op::build(source, target, degree, field, Kind::Compose(parts))),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Op) -> Result<Op> {
        Op::compose(&[self.clone(), inner.clone()])
    }

    /// Tensor product `ops[0] ⊗ ops[1] ⊗ ...`; factors of arity zero are allowed.
    pub fn tensor(ops: &[Op], field: Field) -> Op {
        let source = Shape(ops.iter().flat_map(|o| o.source().0.iter().cloned()).collect());
        let target = Shape(ops.iter().flat_map(|o| o.target().0.iter().cloned()).collect());
        let degree = ops.iter().map(Op::degree).sum();
        if ops.iter().any(Op::is_zero_op) {
            return Op::zero(source, target, degree, field);
        }
        if ops.iter().all(Op::is_identity) {
            return Op::identity(source, field);
        }
        let mut parts: Vec<Op> = Vec::new();
        for op in ops {
            if op.source().is_empty() && op.target().is_empty() {
                continue;
            }
            match &op.0.kind {
                Kind::Tensor(inner) if op.0.memo.is_none() => parts.extend(inner.iter().cloned()),
                _ => parts.push(op.clone()),
            }
        }
        if parts.len() == 1 {
            return parts.pop().unwrap();
        }
        Op::build(source, target, degree, field, Kind::Tensor(parts))
    }

    /// `Σ c_k op_k`; every term must have the given source, target and degree.
    pub fn linear_combination(
        source: Shape,
        target: Shape,
        degree: i64,
        field: Field,
        terms: Vec<(Scalar, Op)>,
    ) -> Result<Op> {
        let mut kept = Vec::new();
        for (c, op) in terms {
            if !same_shape(op.source(), &source) || !same_shape(op.target(), &target) {
                return Err(Error::SpaceMismatch(format!("summand {op:?} has the wrong shape")));
            }
            if c.is_zero() || op.is_zero_op() {
                continue;
            }
            if op.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "summand of degree {} in a sum of degree {degree}",
                    op.degree()
                )));
            }
            match &op.0.kind {
                Kind::Sum(inner) if op.0.memo.is_none() => {
                    kept.extend(inner.iter().map(|(d, o)| (&c * d, o.clone())))
                }
                _ => kept.push((c, op)),
            }
        }
        if kept.is_empty() {
            return Ok(Op::zero(source, target, degree, field));
        }
        if kept.len() == 1 && kept[0].0.is_one() {
            return Ok(kept.pop().unwrap().1);
        }
        Ok(Op::build(source, target, degree, field, Kind::Sum(kept)))
    }

    /// Sum of operators that share source, target and degree.
    pub fn sum(ops: Vec<Op>) -> Result<Op> {
        let first = ops.first().ok_or_else(|| Error::SemanticError("empty sum".into()))?.clone();
        let one = first.field().one();
        Op::linear_combination(
            first.source().clone(),
            first.target().clone(),
            first.degree(),
            first.field(),
            ops.into_iter().map(|o| (one.clone(), o)).collect(),
        )
    }

    pub fn scaled(&self, c: Scalar) -> Op {
        Op::linear_combination(
            self.source().clone(),
            self.target().clone(),
            self.degree(),
            self.field(),
            vec![(c, self.clone())],
        )
        .expect("a single summand has a consistent shape")
    }

    /// `(-1)^e · self`.
    pub fn signed(&self, e: i64) -> Op {
        if e.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scaled(self.field().from_i64(-1))
        }
    }

    pub fn neg(&self) -> Op {
        self.signed(1)
    }

    pub fn minus(&self, other: &Op) -> Result<Op> {
        let f = self.field();
        Op::linear_combination(
            self.source().clone(),
            self.target().clone(),
            self.degree(),
            f,
            vec![(f.one(), self.clone()), (f.from_i64(-1), other.clone())],
        )
    }

    /// Value on one basis tuple of the source.
    pub fn apply_basis(&self, idx: &[u32]) -> Tensor {
        debug_assert_eq!(idx.len(), self.0.source.len(), "arity mismatch in apply");
        let node = &*self.0;
        match &node.kind {
            Kind::Zero => return Tensor::zero(),
            Kind::Identity => return Tensor::basis(Index::from_slice(idx), node.field.one()),
            Kind::Table(t) => return t.get(idx).cloned().unwrap_or_default(),
            _ => {}
        }
        let out_degree = node.source.degree(idx) + node.degree;
        if node.target_degrees.binary_search(&out_degree).is_err() {
            return Tensor::zero();
        }
        if let Some(memo) = &node.memo {
            if let Some(v) = memo.lock().get(idx) {
                return v.clone();
            }
        }
        let value = match &node.kind {
            Kind::Func(f) => f(idx),
            Kind::Compose(parts) => {
                let mut cur = parts.last().unwrap().apply_basis(idx);
                for op in parts.iter().rev().skip(1) {
                    if cur.is_zero() {
                        break;
                    }
                    cur = op.apply(&cur);
                }
                cur
            }
            Kind::Tensor(parts) => self.apply_tensor(parts, idx),
            Kind::Sum(terms) => {
                let mut acc = Tensor::zero();
                for (c, op) in terms {
                    acc.add_scaled(&op.apply_basis(idx), c);
                }
                acc
            }
            Kind::Identity | Kind::Zero | Kind::Table(_) => unreachable!(),
        };
        if let Some(memo) = &node.memo {
            memo.lock().insert(Index::from_slice(idx), value.clone());
        }
        value
    }

    fn apply_tensor(&self, parts: &[Op], idx: &[u32]) -> Tensor {
        let field = self.0.field;
        let mut acc: Vec<(Index, Scalar)> = vec![(Index::new(), field.one())];
        let mut pos = 0usize;
        let mut map_degrees = Vec::with_capacity(parts.len());
        let mut block_degrees = Vec::with_capacity(parts.len());
        for op in parts {
            let a = op.source().len();
            let block = &idx[pos..pos + a];
            block_degrees.push(self.0.source.slice(pos, pos + a).degree(block));
            map_degrees.push(op.degree());
            pos += a;
            let value = if op.is_identity() {
                Tensor::basis(Index::from_slice(block), field.one())
            } else {
                op.apply_basis(block)
            };
            if value.is_zero() {
                return Tensor::zero();
            }
            let mut next = Vec::with_capacity(acc.len() * value.len());
            for (prefix, c) in &acc {
                for (tail, d) in value.iter() {
                    let mut i = prefix.clone();
                    i.extend_from_slice(tail);
                    next.push((i, c * d));
                }
            }
            acc = next;
        }
        let e = koszul_apply_exponent(&map_degrees, &block_degrees);
        let mut out = Tensor::zero();
        for (i, c) in acc {
            out.add_term(i, c.signed(e));
        }
        out
    }

    /// Value on an arbitrary element of the source.
    pub fn apply(&self, v: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (idx, c) in v.iter() {
            let w = self.apply_basis(idx);
            out.add_scaled(&w, c);
        }
        out
    }

    /// Checks whether two operators agree on every basis tuple of the source.
    /// Returns up to `limit` offending tuples with their residuals.
    pub fn disagreements(&self, other: &Op, limit: usize) -> Result<Vec<(Index, Tensor)>> {
        if !same_shape(self.source(), other.source()) || !same_shape(self.target(), other.target()) {
            return Err(Error::SpaceMismatch("comparison of operators of different shapes".into()));
        }
        let mut bad = Vec::new();
        for idx in self.source().tuples() {
            let mut r = self.apply_basis(&idx);
            r.sub_assign(&other.apply_basis(&idx));
            if !r.is_zero() {
                bad.push((idx, r));
                if bad.len() >= limit {
                    break;
                }
            }
        }
        Ok(bad)
    }

    /// True when the operator vanishes on every basis tuple.
    pub fn vanishes(&self) -> bool {
        self.source().tuples().all(|idx| self.apply_basis(&idx).is_zero())
    }

    pub fn cache_size(&self) -> usize {
        self.0.memo.as_ref().map_or(0, |m| m.lock().len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;

    fn space() -> Arc<GradedSpace> {
        Arc::new(GradedSpace::from_pairs([("a", 0), ("x", 1), ("y", -1)]).unwrap())
    }

    fn odd_map(v: &Arc<GradedSpace>, f: Field) -> Op {
        // degree +1: y -> a, a -> x
        Op::graded_map(&GradedMap::from_entries(v, v, 1, f, [(2, 0, f.one()), (0, 1, f.one())]).unwrap())
    }

    #[test]
    fn koszul_sign_on_elements() {
        let f = Field::Rational;
        let v = space();
        let g = odd_map(&v, f);
        let id = Op::id_power(&v, 1, f);
        // (id ⊗ g)(x ⊗ y) = (-1)^{|x||g|} x ⊗ g(y) = -x ⊗ a
        let t = Op::tensor(&[id.clone(), g.clone()], f);
        let out = t.apply_basis(&[1, 2]);
        assert_eq!(out, Tensor::basis(Index::from_slice(&[1, 0]), f.from_i64(-1)));
        // (g ⊗ id)(y ⊗ x) = g(y) ⊗ x with no sign
        let t = Op::tensor(&[g, id], f);
        assert_eq!(t.apply_basis(&[2, 1]), Tensor::basis(Index::from_slice(&[0, 1]), f.one()));
    }

    #[test]
    fn interchange_law_sign() {
        // (id ⊗ g) ∘ (g ⊗ id) = -(g ⊗ g), while (g ⊗ id) ∘ (id ⊗ g) = g ⊗ g.
        let f = Field::Rational;
        let v = space();
        let g = odd_map(&v, f);
        let id = Op::id_power(&v, 1, f);
        let gg = Op::tensor(&[g.clone(), g.clone()], f);
        let a = Op::tensor(&[id.clone(), g.clone()], f)
            .after(&Op::tensor(&[g.clone(), id.clone()], f))
            .unwrap();
        let b = Op::tensor(&[g.clone(), id.clone()], f)
            .after(&Op::tensor(&[id, g], f))
            .unwrap();
        assert!(a.disagreements(&gg.neg(), 5).unwrap().is_empty());
        assert!(b.disagreements(&gg, 5).unwrap().is_empty());
    }

    #[test]
    fn memoized_matches_plain() {
        let f = Field::Prime(5);
        let v = space();
        let g = odd_map(&v, f);
        let id = Op::id_power(&v, 1, f);
        let plain = Op::sum(vec![
            Op::tensor(&[g.clone(), id.clone()], f),
            Op::tensor(&[id, g], f),
        ])
        .unwrap();
        let memo = plain.memoized();
        assert!(plain.disagreements(&memo, 1).unwrap().is_empty());
        assert!(memo.cache_size() > 0);
    }

    #[test]
    fn compose_shape_checked() {
        let f = Field::Rational;
        let v = space();
        let two = Op::id_power(&v, 2, f);
        let g = odd_map(&v, f);
        assert!(matches!(g.after(&two), Err(Error::SpaceMismatch(_))));
    }
}
