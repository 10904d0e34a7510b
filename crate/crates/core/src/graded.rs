//! Graded vector spaces, tensors of basis elements and Koszul signs.
//!
//! Degrees are homological: differentials lower degree by one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A tuple of basis indices naming a pure tensor `e_{a_1} ⊗ ... ⊗ e_{a_n}`.
pub type Index = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional graded vector space with a named, ordered basis.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut by_name = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            if by_name.insert(b.name.clone(), k).is_some() {
                return Err(Error::SemanticError(format!("duplicate basis name {:?}", b.name)));
            }
        }
        Ok(GradedSpace { basis, by_name })
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        GradedSpace::new(
            pairs
                .into_iter()
                .map(|(name, degree)| BasisElement { name: name.into(), degree })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, k: u32) -> i64 {
        self.basis[k as usize].degree
    }

    pub fn name(&self, k: u32) -> &str {
        &self.basis[k as usize].name
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).map(|&k| k as u32)
    }

    /// Basis indices of the given degree, in basis order.
    pub fn indices_of_degree(&self, d: i64) -> Vec<u32> {
        (0..self.dim() as u32).filter(|&k| self.degree(k) == d).collect()
    }

    /// Distinct degrees, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.iter().map(|b| b.degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn has_degree(&self, d: i64) -> bool {
        self.basis.iter().any(|b| b.degree == d)
    }

    /// The suspension `sV`: same basis, degrees raised by one.
    pub fn suspend(&self) -> GradedSpace {
        GradedSpace::new(
            self.basis
                .iter()
                .map(|b| BasisElement {
                    name: format!("s{}", b.name),
                    degree: b.degree + 1,
                })
                .collect(),
        )
        .expect("suspension keeps names distinct")
    }

    /// The same space with its basis reordered: position `k` holds old element `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<GradedSpace> {
        GradedSpace::new(order.iter().map(|&k| self.basis[k].clone()).collect())
    }
}

/// The tensor product `V_1 ⊗ ... ⊗ V_n` of a list of spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape(pub Vec<Arc<GradedSpace>>);

impl Shape {
    pub fn power(space: &Arc<GradedSpace>, n: usize) -> Shape {
        Shape(vec![space.clone(); n])
    }

    pub fn single(space: &Arc<GradedSpace>) -> Shape {
        Shape(vec![space.clone()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(shapes: &[&Shape]) -> Shape {
        Shape(shapes.iter().flat_map(|s| s.0.iter().cloned()).collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Shape {
        Shape(self.0[start..end].to_vec())
    }

    pub fn degree(&self, idx: &[u32]) -> i64 {
        debug_assert_eq!(idx.len(), self.len());
        self.0.iter().zip(idx).map(|(s, &k)| s.degree(k)).sum()
    }

    pub fn factor_degrees(&self, idx: &[u32]) -> Vec<i64> {
        self.0.iter().zip(idx).map(|(s, &k)| s.degree(k)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|s| s.dim()).product()
    }

    /// All basis tuples in lexicographic order.
    pub fn tuples(&self) -> TupleIter {
        TupleIter::new(self.0.iter().map(|s| s.dim() as u32).collect())
    }

    /// Set of total degrees reachable by basis tuples.
    pub fn reachable_degrees(&self) -> Vec<i64> {
        let mut acc = vec![0i64];
        for s in &self.0 {
            let ds = s.degrees();
            let mut next: Vec<i64> = acc.iter().flat_map(|a| ds.iter().map(move |d| a + d)).collect();
            next.sort_unstable();
            next.dedup();
            acc = next;
        }
        acc
    }

    pub fn format_index(&self, idx: &[u32]) -> String {
        if idx.is_empty() {
            return "1".to_string();
        }
        idx.iter()
            .zip(&self.0)
            .map(|(&k, s)| s.name(k).to_string())
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn names(&self, idx: &[u32]) -> Vec<String> {
        idx.iter().zip(&self.0).map(|(&k, s)| s.name(k).to_string()).collect()
    }
}

/// Lexicographic enumeration of index tuples with given per-slot bounds.
pub struct TupleIter {
    dims: Vec<u32>,
    next: Option<Index>,
}

impl TupleIter {
    pub fn new(dims: Vec<u32>) -> Self {
        let next = if dims.contains(&0) {
            None
        } else {
            Some(dims.iter().map(|_| 0).collect())
        };
        TupleIter { dims, next }
    }
}

impl Iterator for TupleIter {
    type Item = Index;
    fn next(&mut self) -> Option<Index> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                self.next = None;
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.dims[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(cur)
    }
}

/// A finite linear combination of pure tensors, possibly of mixed lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Index, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn basis(idx: Index, coeff: Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term(idx, coeff);
        t
    }

    pub fn add_term(&mut self, idx: Index, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (idx, x) in &other.terms {
            self.add_term(idx.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        for (idx, x) in &other.terms {
            self.add_term(idx.clone(), x.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Tensor) {
        for (idx, x) in &other.terms {
            self.add_term(idx.clone(), -x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Tensor {
        let mut t = Tensor::zero();
        t.add_scaled(self, c);
        t
    }

    pub fn negated(&self) -> Tensor {
        Tensor {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u32]) -> Option<&Scalar> {
        self.terms.get(idx)
    }

    /// Outer product `self ⊗ other` of pure tensors; no sign arises.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, x * y);
            }
        }
        out
    }

    pub fn format(&self, shape_of: impl Fn(usize) -> Shape) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(idx, c)| format!("{}·{}", c, shape_of(idx.len()).format_index(idx)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl FromIterator<(Index, Scalar)> for Tensor {
    fn from_iter<T: IntoIterator<Item = (Index, Scalar)>>(iter: T) -> Self {
        let mut t = Tensor::zero();
        for (idx, c) in iter {
            t.add_term(idx, c);
        }
        t
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| format!("{c}*{idx:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn single(k: u32) -> Index {
    let mut i = Index::new();
    i.push(k);
    i
}

/// Exponent of the Koszul sign for applying `f_1 ⊗ ... ⊗ f_k` to a tensor
/// whose consecutive blocks feed the factors: each map passes every input
/// element to its left.
pub fn koszul_apply_exponent(map_degrees: &[i64], block_degrees: &[i64]) -> i64 {
    let mut before = 0i64;
    let mut e = 0i64;
    for (m, b) in map_degrees.iter().zip(block_degrees) {
        e += m * before;
        before += b;
    }
    e
}

/// Exponent of the sign in
/// `(f_1⊗...⊗f_k)∘(g_1⊗...⊗g_k) = ± (f_1 g_1)⊗...⊗(f_k g_k)`:
/// each `f_b` passes every `g_a` with `a < b`.
pub fn koszul_compose_exponent(outer: &[i64], inner: &[i64]) -> i64 {
    let mut e = 0i64;
    let mut before = 0i64;
    for (f, g) in outer.iter().zip(inner) {
        e += f * before;
        before += g;
    }
    e
}

/// Koszul exponent for moving graded elements into a new order:
/// position `k` of the result holds element `perm[k]`. Each inversion of a
/// pair contributes the product of their degrees.
pub fn koszul_permutation_exponent(degrees: &[i64], perm: &[usize]) -> i64 {
    let mut e = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                e += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    e
}

/// Number of inversions of a permutation given in one-line form.
pub fn inversions(perm: &[usize]) -> i64 {
    let mut n = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                n += 1;
            }
        }
    }
    n
}

/// A homogeneous linear map `V → W`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Arc<GradedSpace>,
    pub target: Arc<GradedSpace>,
    pub degree: i64,
    pub field: Field,
    columns: Vec<Tensor>,
}

impl GradedMap {
    pub fn zero(source: &Arc<GradedSpace>, target: &Arc<GradedSpace>, degree: i64, field: Field) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            field,
            columns: vec![Tensor::zero(); source.dim()],
        }
    }

    pub fn identity(space: &Arc<GradedSpace>, field: Field) -> Self {
        let mut m = GradedMap::zero(space, space, 0, field);
        for k in 0..space.dim() as u32 {
            m.columns[k as usize] = Tensor::basis(single(k), field.one());
        }
        m
    }

    /// Builds a map from `(source index, target index, coefficient)` triples.
    pub fn from_entries(
        source: &Arc<GradedSpace>,
        target: &Arc<GradedSpace>,
        degree: i64,
        field: Field,
        entries: impl IntoIterator<Item = (u32, u32, Scalar)>,
    ) -> Result<Self> {
        let mut m = GradedMap::zero(source, target, degree, field);
        for (s, t, c) in entries {
            if s as usize >= source.dim() || t as usize >= target.dim() {
                return Err(Error::SpaceMismatch("entry index out of range".into()));
            }
            if !c.is_zero() && source.degree(s) + degree != target.degree(t) {
                return Err(Error::DegreeMismatch(format!(
                    "{} ↦ {} is not of degree {degree}",
                    source.name(s),
                    target.name(t)
                )));
            }
            m.columns[s as usize].add_term(single(t), c);
        }
        Ok(m)
    }

    pub fn column(&self, k: u32) -> &Tensor {
        &self.columns[k as usize]
    }

    pub fn set_column(&mut self, k: u32, v: Tensor) {
        self.columns[k as usize] = v;
    }

    pub fn apply(&self, v: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (idx, c) in v.iter() {
            out.add_scaled(&self.columns[idx[0] as usize], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if *other.target != *self.source {
            return Err(Error::SpaceMismatch("composition of incompatible maps".into()));
        }
        let mut out = GradedMap::zero(&other.source, &self.target, self.degree + other.degree, self.field);
        for k in 0..other.source.dim() {
            out.columns[k] = self.apply(&other.columns[k]);
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (a, b) in out.columns.iter_mut().zip(&other.columns) {
            a.add_assign(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.scaled(&self.field.from_i64(-1)))
    }

    pub fn scaled(&self, c: &Scalar) -> GradedMap {
        let mut out = self.clone();
        for col in &mut out.columns {
            *col = col.scaled(c);
        }
        out
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<()> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::SpaceMismatch("sum of maps between different spaces".into()));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch("sum of maps of different degrees".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Tensor::is_zero)
    }

    /// Matrix of the block `V_d → W_{d + degree}` in basis order.
    pub fn block(&self, d: i64) -> crate::matrix::Matrix {
        let src = self.source.indices_of_degree(d);
        let tgt = self.target.indices_of_degree(d + self.degree);
        let mut m = crate::matrix::Matrix::zero(self.field, tgt.len(), src.len());
        for (j, &s) in src.iter().enumerate() {
            for (i, &t) in tgt.iter().enumerate() {
                if let Some(c) = self.columns[s as usize].coeff(&[t]) {
                    m.set(i, j, c.clone());
                }
            }
        }
        m
    }

    /// Inverse of a degree-zero isomorphism, computed degree by degree.
    pub fn inverse(&self) -> Result<GradedMap> {
        if self.degree != 0 {
            return Err(Error::NotInvertible);
        }
        let mut inv = GradedMap::zero(&self.target, &self.source, 0, self.field);
        let mut degrees = self.source.degrees();
        degrees.extend(self.target.degrees());
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let src = self.source.indices_of_degree(d);
            let tgt = self.target.indices_of_degree(d);
            if src.len() != tgt.len() {
                return Err(Error::NotInvertible);
            }
            let b = self.block(d).inverse()?;
            for (j, &t) in tgt.iter().enumerate() {
                let col: Tensor = src
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| (single(s), b.get(i, j).clone()))
                    .collect();
                inv.columns[t as usize] = col;
            }
        }
        Ok(inv)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for k in 0..self.source.dim() as u32 {
            let col = &self.columns[k as usize];
            if !col.is_zero() {
                parts.push(format!(
                    "{} ↦ {}",
                    self.source.name(k),
                    col.format(|_| Shape::single(&self.target))
                ));
            }
        }
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_iteration_is_lexicographic() {
        let all: Vec<Index> = TupleIter::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].as_slice(), &[0, 0]);
        assert_eq!(all[1].as_slice(), &[0, 1]);
        assert_eq!(all[5].as_slice(), &[1, 2]);
        assert_eq!(TupleIter::new(vec![]).count(), 1);
        assert_eq!(TupleIter::new(vec![3, 0]).count(), 0);
    }

    #[test]
    fn compose_sign_with_odd_maps() {
        // (f ⊗ g)(f' ⊗ g') with |g| = |f'| = -1 picks up a minus sign.
        assert_eq!(koszul_compose_exponent(&[0, -1], &[-1, 0]).rem_euclid(2), 1);
        assert_eq!(koszul_compose_exponent(&[-1, 0], &[0, -1]).rem_euclid(2), 0);
    }

    #[test]
    fn permutation_sign_of_swap() {
        assert_eq!(koszul_permutation_exponent(&[1, 1], &[1, 0]).rem_euclid(2), 1);
        assert_eq!(koszul_permutation_exponent(&[1, 2], &[1, 0]).rem_euclid(2), 0);
        assert_eq!(inversions(&[2, 0, 1]), 2);
    }

    #[test]
    fn reachable_degrees_of_square() {
        let v = Arc::new(GradedSpace::from_pairs([("a", 0), ("b", -1)]).unwrap());
        assert_eq!(Shape::power(&v, 2).reachable_degrees(), vec![-2, -1, 0]);
    }

    #[test]
    fn graded_map_inverse() {
        let f = Field::Rational;
        let v = Arc::new(GradedSpace::from_pairs([("a", 0), ("b", 0), ("c", 1)]).unwrap());
        let m = GradedMap::from_entries(
            &v,
            &v,
            0,
            f,
            [(0, 0, f.from_i64(1)), (0, 1, f.from_i64(1)), (1, 1, f.from_i64(1)), (2, 2, f.from_i64(3))],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), GradedMap::identity(&v, f));
    }

    #[test]
    fn rejects_inhomogeneous_entry() {
        let f = Field::Rational;
        let v = Arc::new(GradedSpace::from_pairs([("a", 0), ("b", 1)]).unwrap());
        let err = GradedMap::from_entries(&v, &v, 0, f, [(0, 1, f.one())]);
        assert!(matches!(err, Err(Error::DegreeMismatch(_))));
    }
}
