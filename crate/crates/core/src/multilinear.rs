//! Multilinear maps `V^{⊗n} → W` given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{single, GradedSpace, Index, Shape, Tensor};
use crate::op::Op;
use crate::scalar::{Field, Scalar};

/// A homogeneous map `source^{⊗arity} → target` of a fixed degree.
///
/// Values on basis tuples are stored sparsely; missing tuples map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    pub source: Arc<GradedSpace>,
    pub target: Arc<GradedSpace>,
    pub arity: usize,
    pub degree: i64,
    pub field: Field,
    table: BTreeMap<Index, Tensor>,
}

impl MultilinearMap {
    pub fn zero(source: &Arc<GradedSpace>, target: &Arc<GradedSpace>, arity: usize, degree: i64, field: Field) -> Self {
        MultilinearMap {
            source: source.clone(),
            target: target.clone(),
            arity,
            degree,
            field,
            table: BTreeMap::new(),
        }
    }

    pub fn source_shape(&self) -> Shape {
        Shape::power(&self.source, self.arity)
    }

    /// Adds `coeff · target[out]` to the value on `input`, checking ranges and degree.
    pub fn add_entry(&mut self, input: &[u32], out: u32, coeff: Scalar) -> Result<()> {
        if input.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: input.len(),
            });
        }
        if input.iter().any(|&k| k as usize >= self.source.dim()) || out as usize >= self.target.dim() {
            return Err(Error::SpaceMismatch("basis index out of range".into()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let d = self.source_shape().degree(input) + self.degree;
        if d != self.target.degree(out) {
            return Err(Error::DegreeMismatch(format!(
                "{} ↦ {} does not have degree {}",
                self.source_shape().format_index(input),
                self.target.name(out),
                self.degree
            )));
        }
        let entry = self.table.entry(Index::from_slice(input)).or_default();
        entry.add_term(single(out), coeff);
        if entry.is_zero() {
            self.table.remove(input);
        }
        Ok(())
    }

    /// Replaces the value on `input`; the value must be homogeneous of the right degree.
    pub fn set_value(&mut self, input: &[u32], value: Tensor) -> Result<()> {
        self.table.remove(input);
        for (idx, c) in value.iter() {
            if idx.len() != 1 {
                return Err(Error::ArityMismatch {
                    expected: 1,
                    found: idx.len(),
                });
            }
            self.add_entry(input, idx[0], c.clone())?;
        }
        Ok(())
    }

    pub fn value(&self, input: &[u32]) -> Option<&Tensor> {
        self.table.get(input)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Index, &Tensor)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.table.len()
    }

    pub fn scaled(&self, c: &Scalar) -> MultilinearMap {
        let mut out = self.clone();
        out.table = self
            .table
            .iter()
            .map(|(k, v)| (k.clone(), v.scaled(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `self - other`, for maps with the same source, target and arity.
    pub fn difference(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::SpaceMismatch("difference of maps between different spaces".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.table {
            let e = out.table.entry(k.clone()).or_default();
            e.sub_assign(v);
            if e.is_zero() {
                out.table.remove(k);
            }
        }
        Ok(out)
    }

    /// Evaluates an operator on every basis tuple whose image degree exists in the target.
    pub fn from_op(op: &Op, source: &Arc<GradedSpace>, target: &Arc<GradedSpace>) -> Result<MultilinearMap> {
        let arity = op.source().len();
        if op.target().len() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: op.target().len(),
            });
        }
        let mut out = MultilinearMap::zero(source, target, arity, op.degree(), op.field());
        let shape = Shape::power(source, arity);
        for idx in shape.tuples() {
            if !target.has_degree(shape.degree(&idx) + op.degree()) {
                continue;
            }
            let v = op.apply_basis(&idx);
            if !v.is_zero() {
                out.set_value(&idx, v)?;
            }
        }
        Ok(out)
    }

    pub fn to_op(&self) -> Op {
        Op::table(self)
    }

    /// Human-readable listing of the nonzero values.
    pub fn describe(&self) -> Vec<String> {
        let shape = self.source_shape();
        let tgt = Shape::single(&self.target);
        self.table
            .iter()
            .map(|(k, v)| format!("{} ↦ {}", shape.format_index(k), v.format(|_| tgt.clone())))
            .collect()
    }
}
