//! Deformation retracts `(p, i, h)` of a chain complex onto its homology.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{single, BasisElement, GradedMap, GradedSpace, Tensor};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// `p: A → H`, `i: H → A`, `h: A → A` of degree `+1`, with `pi = id` and
/// `id - ip = dh + hd`. `H` carries the zero differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationRetract {
    pub space: Arc<GradedSpace>,
    pub homology: Arc<GradedSpace>,
    pub field: Field,
    pub d: GradedMap,
    pub p: GradedMap,
    pub i: GradedMap,
    pub h: GradedMap,
}

/// Which identities a retract satisfies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RetractReport {
    pub d_squared_zero: bool,
    pub pi_identity: bool,
    pub homotopy: bool,
    pub di_zero: bool,
    pub pd_zero: bool,
    pub h_squared_zero: bool,
    pub ph_zero: bool,
    pub hi_zero: bool,
}

impl RetractReport {
    pub fn is_retract(&self) -> bool {
        self.d_squared_zero && self.pi_identity && self.homotopy && self.di_zero && self.pd_zero
    }

    pub fn side_conditions(&self) -> bool {
        self.h_squared_zero && self.ph_zero && self.hi_zero
    }

    pub fn all(&self) -> bool {
        self.is_retract() && self.side_conditions()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.d_squared_zero, "d∘d = 0"),
            (self.pi_identity, "p∘i = id"),
            (self.homotopy, "id - i∘p = d∘h + h∘d"),
            (self.di_zero, "d∘i = 0"),
            (self.pd_zero, "p∘d = 0"),
            (self.h_squared_zero, "h∘h = 0"),
            (self.ph_zero, "p∘h = 0"),
            (self.hi_zero, "h∘i = 0"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|(_, s)| *s).collect()
    }
}

fn to_tensor(indices: &[u32], v: &[Scalar]) -> Tensor {
    indices
        .iter()
        .zip(v)
        .map(|(&k, c)| (single(k), c.clone()))
        .collect()
}

/// Greedily extends `base` (independent vectors) by `candidates`, returning the added ones.
fn extend_basis(field: Field, dim: usize, base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut current: Vec<Vec<Scalar>> = base.to_vec();
    let mut added = Vec::new();
    for c in candidates {
        let mut trial = current.clone();
        trial.push(c.clone());
        if Matrix::from_columns(field, dim, &trial).rank() == trial.len() {
            current = trial;
            added.push(c.clone());
        }
    }
    added
}

/// Reduces `v` modulo the span of `rows` in reduced echelon form with the given pivots.
fn reduce_against(v: &[Scalar], rref: &Matrix, pivots: &[usize]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (r, &pc) in pivots.iter().enumerate() {
        let c = out[pc].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..out.len() {
            let x = rref.get(r, j);
            if !x.is_zero() {
                out[j] = &out[j] - &(&c * x);
            }
        }
    }
    out
}

fn unit(field: Field, dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[k] = field.one();
    v
}

/// Builds a retract onto homology with the side conditions built in.
pub fn build_retract(space: &Arc<GradedSpace>, d: &GradedMap) -> Result<DeformationRetract> {
    let order: Vec<usize> = (0..space.dim()).collect();
    build_retract_with_order(space, d, &order)
}

/// Same as [`build_retract`], scanning basis elements in the given order when
/// choosing complements and homology representatives.
pub fn build_retract_with_order(space: &Arc<GradedSpace>, d: &GradedMap, order: &[usize]) -> Result<DeformationRetract> {
    let field = d.field;
    if d.degree != -1 || *d.source != **space || *d.target != **space {
        return Err(Error::NotADifferential("differential must be a degree -1 endomorphism".into()));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..space.dim()).collect::<Vec<_>>() {
        return Err(Error::SemanticError("order must be a permutation of the basis".into()));
    }
    if !d.compose(d)?.is_zero() {
        return Err(Error::NotADifferential("d∘d ≠ 0".into()));
    }
    let degrees = space.degrees();
    // per degree: indices (in scan order), complement W of cycles, chosen cycles C
    struct Slice {
        degree: i64,
        idx: Vec<u32>,
        w: Vec<Vec<Scalar>>,
        b: Vec<Vec<Scalar>>,
        c: Vec<Vec<Scalar>>,
    }
    let position = |k: u32| order.iter().position(|&o| o == k as usize).unwrap();
    let mut slices: Vec<Slice> = Vec::new();
    for &deg in &degrees {
        let mut idx = space.indices_of_degree(deg);
        idx.sort_by_key(|&k| position(k));
        let n = idx.len();
        let tgt = space.indices_of_degree(deg - 1);
        // matrix of d restricted to this degree, columns in scan order
        let mut m = Matrix::zero(field, tgt.len(), n);
        for (j, &s) in idx.iter().enumerate() {
            for (i, &t) in tgt.iter().enumerate() {
                if let Some(c) = d.column(s).coeff(&[t]) {
                    m.set(i, j, c.clone());
                }
            }
        }
        let z = m.kernel_basis();
        let units: Vec<Vec<Scalar>> = (0..n).map(|k| unit(field, n, k)).collect();
        let w = extend_basis(field, n, &z, &units);
        slices.push(Slice {
            degree: deg,
            idx,
            w,
            b: Vec::new(),
            c: z,
        });
    }
    // boundaries in degree n are d(W_{n+1}); then pick cycles complementary to them
    let vec_in = |slice: &Slice, t: &Tensor| -> Vec<Scalar> {
        slice
            .idx
            .iter()
            .map(|&k| t.coeff(&[k]).cloned().unwrap_or_else(|| field.zero()))
            .collect()
    };
    for k in 0..slices.len() {
        let deg = slices[k].degree;
        let b: Vec<Vec<Scalar>> = match slices.iter().position(|s| s.degree == deg + 1) {
            Some(up) => slices[up]
                .w
                .iter()
                .map(|wv| {
                    let image = d.apply(&to_tensor(&slices[up].idx, wv));
                    vec_in(&slices[k], &image)
                })
                .collect(),
            None => Vec::new(),
        };
        let n = slices[k].idx.len();
        let cycles = std::mem::take(&mut slices[k].c);
        let reduced: Vec<Vec<Scalar>> = if b.is_empty() {
            cycles
        } else {
            let bm = Matrix::from_columns(field, n, &b).transpose().rref();
            cycles.iter().map(|z| reduce_against(z, &bm.matrix, &bm.pivots)).collect()
        };
        let nonzero: Vec<Vec<Scalar>> = reduced.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        slices[k].c = extend_basis(field, n, &b, &nonzero);
        slices[k].b = b;
    }
    // homology basis
    let mut hbasis = Vec::new();
    let mut reps: Vec<Tensor> = Vec::new();
    for s in &slices {
        for (j, c) in s.c.iter().enumerate() {
            let t = to_tensor(&s.idx, c);
            let name = match t.iter().next() {
                Some((i, x)) if t.len() == 1 && x.is_one() => format!("[{}]", space.name(i[0])),
                _ => format!("[h{}_{}]", s.degree, j),
            };
            hbasis.push(BasisElement { name, degree: s.degree });
            reps.push(t);
        }
    }
    let homology = Arc::new(GradedSpace::new(hbasis)?);
    let mut i = GradedMap::zero(&homology, space, 0, field);
    for (k, t) in reps.iter().enumerate() {
        i.set_column(k as u32, t.clone());
    }
    let mut p = GradedMap::zero(space, &homology, 0, field);
    let mut h = GradedMap::zero(space, space, 1, field);
    let mut hpos = 0u32;
    for (k, s) in slices.iter().enumerate() {
        let n = s.idx.len();
        // columns: B | C | W
        let mut cols = s.b.clone();
        cols.extend(s.c.iter().cloned());
        cols.extend(s.w.iter().cloned());
        let basis_change = Matrix::from_columns(field, n, &cols);
        let coords = basis_change.inverse().map_err(|_| {
            Error::SemanticError(format!("degree {}: failed to split the complex", s.degree))
        })?;
        let (nb, nc) = (s.b.len(), s.c.len());
        let up = slices.iter().position(|t| t.degree == s.degree + 1);
        for (j, &e) in s.idx.iter().enumerate() {
            let coeffs = coords.column(j);
            let mut pv = Tensor::zero();
            for q in 0..nc {
                pv.add_term(single(hpos + q as u32), coeffs[nb + q].clone());
            }
            p.set_column(e, pv);
            let mut hv = Tensor::zero();
            if let Some(up) = up {
                for q in 0..nb {
                    let w = to_tensor(&slices[up].idx, &slices[up].w[q]);
                    hv.add_scaled(&w, &coeffs[q]);
                }
            }
            h.set_column(e, hv);
        }
        hpos += nc as u32;
        let _ = k;
    }
    let r = DeformationRetract {
        space: space.clone(),
        homology,
        field,
        d: d.clone(),
        p,
        i,
        h,
    };
    let report = r.verify()?;
    if !report.all() {
        return Err(Error::NotARetract(report.failures().join(", ")));
    }
    Ok(r)
}

impl DeformationRetract {
    /// Assembles a retract from given maps, checking the defining identities.
    pub fn from_maps(d: GradedMap, p: GradedMap, i: GradedMap, h: GradedMap) -> Result<Self> {
        let r = DeformationRetract {
            space: d.source.clone(),
            homology: p.target.clone(),
            field: d.field,
            d,
            p,
            i,
            h,
        };
        if r.p.degree != 0 || r.i.degree != 0 || r.h.degree != 1 || r.d.degree != -1 {
            return Err(Error::DegreeMismatch("retract maps have the wrong degrees".into()));
        }
        let report = r.verify()?;
        if !report.is_retract() {
            return Err(Error::NotARetract(report.failures().join(", ")));
        }
        Ok(r)
    }

    pub fn verify(&self) -> Result<RetractReport> {
        let id_a = GradedMap::identity(&self.space, self.field);
        let id_h = GradedMap::identity(&self.homology, self.field);
        let ip = self.i.compose(&self.p)?;
        let dh = self.d.compose(&self.h)?;
        let hd = self.h.compose(&self.d)?;
        Ok(RetractReport {
            d_squared_zero: self.d.compose(&self.d)?.is_zero(),
            pi_identity: self.p.compose(&self.i)? == id_h,
            homotopy: id_a.sub(&ip)?.sub(&dh)?.sub(&hd)?.is_zero(),
            di_zero: self.d.compose(&self.i)?.is_zero(),
            pd_zero: self.p.compose(&self.d)?.is_zero(),
            h_squared_zero: self.h.compose(&self.h)?.is_zero(),
            ph_zero: self.p.compose(&self.h)?.is_zero(),
            hi_zero: self.h.compose(&self.i)?.is_zero(),
        })
    }

    /// Rank of homology in each degree, as `(degree, rank)`.
    pub fn betti(&self) -> Vec<(i64, usize)> {
        self.homology
            .degrees()
            .into_iter()
            .map(|d| (d, self.homology.indices_of_degree(d).len()))
            .collect()
    }

    pub fn ip(&self) -> GradedMap {
        self.i.compose(&self.p).expect("i∘p is defined")
    }
}

/// Replaces `h` so that `h∘h = 0`, `p∘h = 0` and `h∘i = 0` hold, keeping `p` and `i`.
///
/// First `h ↦ (id - ip) h (id - ip)`, then `h ↦ h d h`.
pub fn normalize_side_conditions(r: &DeformationRetract) -> Result<DeformationRetract> {
    let report = r.verify()?;
    if !report.is_retract() {
        return Err(Error::NotARetract(report.failures().join(", ")));
    }
    let id = GradedMap::identity(&r.space, r.field);
    let pi_perp = id.sub(&r.ip())?;
    let h1 = pi_perp.compose(&r.h)?.compose(&pi_perp)?;
    let h2 = h1.compose(&r.d)?.compose(&h1)?;
    let out = DeformationRetract { h: h2, ..r.clone() };
    let check = out.verify()?;
    if !check.all() {
        return Err(Error::NotARetract(check.failures().join(", ")));
    }
    Ok(out)
}
