use crate::algebra::PresentedAlgebra;
use crate::cohomology::CohomologyAlgebraView;
use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::linalg::{ExactMatrix, Vector};

/// A connected graded algebra given by degreewise dimensions and structure
/// constants through degree `max_degree`.
#[derive(Clone, Debug)]
pub struct GradedAlgebraData {
    field: NumberField,
    dims: Vec<usize>,
    // mult[p][q][i * dims[q] + j] = e_i · e_j, for p + q ≤ max_degree
    mult: Vec<Vec<Vec<Vector>>>,
}

impl GradedAlgebraData {
    pub fn new(field: &NumberField, dims: Vec<usize>, mult: Vec<Vec<Vec<Vector>>>) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::Internal("graded algebra is not connected".into()));
        }
        let max = dims.len() - 1;
        for p in 0..=max {
            for q in 0..=max - p {
                let t = mult.get(p).and_then(|m| m.get(q)).map(|t| t.len());
                if t != Some(dims[p] * dims[q]) {
                    return Err(Error::ShapeMismatch(format!("structure constants for degrees {p}, {q}")));
                }
            }
        }
        Ok(GradedAlgebraData { field: field.clone(), dims, mult })
    }

    pub fn from_presented(a: &PresentedAlgebra, max: usize) -> Self {
        a.warm_up(max);
        let dims: Vec<usize> = (0..=max).map(|d| a.dim(d)).collect();
        let mut mult = Vec::with_capacity(max + 1);
        for p in 0..=max {
            let mut row = Vec::with_capacity(max + 1 - p);
            let basis_p: Vec<Vector> = (0..dims[p]).map(|i| unit(&a.field().one(), dims[p], i)).collect();
            for q in 0..=max - p {
                let words = a.degree_basis(q);
                let mut t = Vec::with_capacity(dims[p] * dims[q]);
                for e in &basis_p {
                    for w in &words {
                        t.push(a.right_mul_word(e, p, w));
                    }
                }
                row.push(t);
            }
            mult.push(row);
        }
        GradedAlgebraData { field: a.field().clone(), dims, mult }
    }

    /// `H(A)` with its cohomology basis, through `view.valid_through()`.
    pub fn from_cohomology(view: &CohomologyAlgebraView) -> Result<Self> {
        let max = view.valid_through();
        let dims = view.dims().to_vec();
        let mut mult = Vec::with_capacity(max + 1);
        for p in 0..=max {
            let mut row = Vec::with_capacity(max + 1 - p);
            for q in 0..=max - p {
                let mut t = Vec::with_capacity(dims[p] * dims[q]);
                for i in 0..dims[p] {
                    for j in 0..dims[q] {
                        t.push(view.product(p, i, q, j)?);
                    }
                }
                row.push(t);
            }
            mult.push(row);
        }
        Ok(GradedAlgebraData { field: view.field().clone(), dims, mult })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `e_i · e_j` for basis elements of degrees `p` and `q`.
    pub fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> &Vector {
        &self.mult[p][q][i * self.dims[q] + j]
    }

    /// `a · b` for `a` of degree `p` and `b` of degree `q`, added into `out`.
    pub fn multiply_into(&self, out: &mut [Scalar], a: &[Scalar], p: usize, b: &[Scalar], q: usize) {
        let k = &self.field;
        let dq = self.dims[q];
        let t = &self.mult[p][q];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = k.mul(x, y);
                for (o, z) in out.iter_mut().zip(&t[i * dq + j]) {
                    if !z.is_zero() {
                        k.mul_add_assign(o, &xy, z);
                    }
                }
            }
        }
    }

    pub fn multiply(&self, a: &[Scalar], p: usize, b: &[Scalar], q: usize) -> Vector {
        let mut out = vec![Scalar::zero(); self.dims[p + q]];
        self.multiply_into(&mut out, a, p, b, q);
        out
    }

    /// Exhaustive associativity check on basis triples with total degree ≤ `max`.
    pub fn is_associative_through(&self, max: usize) -> bool {
        let max = max.min(self.max_degree());
        let k = &self.field;
        for p in 0..=max {
            for q in 0..=max - p {
                for r in 0..=max - p - q {
                    for i in 0..self.dims[p] {
                        for j in 0..self.dims[q] {
                            for l in 0..self.dims[r] {
                                let ab = self.basis_product(p, i, q, j);
                                let bc = self.basis_product(q, j, r, l);
                                let ei = unit(&k.one(), self.dims[p], i);
                                let el = unit(&k.one(), self.dims[r], l);
                                if self.multiply(ab, p + q, &el, r) != self.multiply(&ei, p, bc, q + r) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn unit(one: &Scalar, n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = one.clone();
    v
}

/// A degree-preserving linear map of a graded algebra, one matrix per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub matrices: Vec<ExactMatrix>,
}

impl GradedMap {
    pub fn identity(b: &GradedAlgebraData) -> Self {
        GradedMap { matrices: b.dims().iter().map(|&n| ExactMatrix::identity(b.field(), n)).collect() }
    }

    pub fn apply(&self, v: &[Scalar], n: usize) -> Vector {
        self.matrices[n].mul_vec(v)
    }

    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        GradedMap { matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn inverse(&self) -> Result<GradedMap> {
        Ok(GradedMap { matrices: self.matrices.iter().map(ExactMatrix::inverse).collect::<Result<_>>()? })
    }

    /// `τ(a·b) = τ(a)·τ(b)` on all basis pairs, and every matrix invertible.
    pub fn is_automorphism_of(&self, b: &GradedAlgebraData) -> bool {
        let max = b.max_degree();
        if self.matrices.len() <= max || !self.matrices.iter().all(ExactMatrix::is_invertible) {
            return false;
        }
        let one = b.field().one();
        for p in 0..=max {
            for q in 0..=max - p {
                for i in 0..b.dim(p) {
                    let ti = self.apply(&unit(&one, b.dim(p), i), p);
                    for j in 0..b.dim(q) {
                        let tj = self.apply(&unit(&one, b.dim(q), j), q);
                        let lhs = self.apply(b.basis_product(p, i, q, j), p + q);
                        if lhs != b.multiply(&ti, p, &tj, q) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
