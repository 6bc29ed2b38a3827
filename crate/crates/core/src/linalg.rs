//! Dense exact linear algebra over a [`NumberField`].
//!
//! Matrices are row-major. Elimination skips zero entries, so the block structure
//! of the sparse matrices produced by graded computations is preserved for free.

use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: NumberField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`solve_in_span`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanSolution {
    InSpan(Vec<Scalar>),
    NotInSpan,
}

impl ExactMatrix {
    pub fn zeros(field: &NumberField, rows: usize, cols: usize) -> Self {
        ExactMatrix { field: field.clone(), rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(field: &NumberField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &NumberField, cols: usize, rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        ExactMatrix { field: field.clone(), rows: r, cols, data }
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(field: &NumberField, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        f.mul_add_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for &k in &nz {
                    f.mul_add_assign(&mut acc, self.get(r, k), &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| self.field.mul(a, s)).collect(),
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, piv) = rref(&aug);
        if n > 0 && (piv.len() < n || piv[n - 1] != n - 1) {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns
/// (strictly increasing). Pivot rows are chosen to prefer `±1` entries, then the
/// smallest coefficients.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let f = m.field.clone();
    let cols = m.cols;
    let mut rows: Vec<Vector> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (r, row) in rows.iter().enumerate().skip(next) {
            let x = &row[c];
            if x.is_zero() {
                continue;
            }
            let w = if x.is_one() || x.is_minus_one() { 0 } else { x.weight() };
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((r, w));
                if w == 0 {
                    break;
                }
            }
        }
        let Some((p, _)) = best else { continue };
        rows.swap(next, p);
        let inv = f.inv(&rows[next][c]).expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let prow = std::mem::take(&mut rows[next]);
        let nz: Vec<usize> = (c..cols).filter(|&j| !prow[j].is_zero()).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let factor = row[c].neg();
            for &j in &nz {
                f.mul_add_assign(&mut row[j], &factor, &prow[j]);
            }
        }
        rows[next] = prow;
        pivots.push(c);
        next += 1;
    }
    let out = ExactMatrix::from_rows(&f, cols, rows);
    (out, pivots)
}

/// A basis of the null space `{v : M v = 0}`, one vector per free column.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vector> {
    let (red, piv) = rref(m);
    kernel_from_rref(&red, &piv)
}

pub(crate) fn kernel_from_rref(red: &ExactMatrix, piv: &[usize]) -> Vec<Vector> {
    let cols = red.cols();
    let mut is_pivot = vec![false; cols];
    for &p in piv {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = red.field().one();
        for (r, &p) in piv.iter().enumerate() {
            let x = red.get(r, free);
            if !x.is_zero() {
                v[p] = x.neg();
            }
        }
        basis.push(v);
    }
    assert_eq!(piv.len() + basis.len(), cols, "rank-nullity violated");
    basis
}

/// Express `target` as a combination of `generators`.
pub fn solve_in_span(field: &NumberField, target: &[Scalar], generators: &[Vector]) -> SpanSolution {
    let n = target.len();
    for g in generators {
        assert_eq!(g.len(), n, "vectors of different length");
    }
    if target.iter().all(Scalar::is_zero) {
        return SpanSolution::InSpan(vec![Scalar::zero(); generators.len()]);
    }
    let k = generators.len();
    let mut aug = ExactMatrix::zeros(field, n, k + 1);
    for (j, g) in generators.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            if !x.is_zero() {
                aug.set(i, j, x.clone());
            }
        }
    }
    for (i, x) in target.iter().enumerate() {
        if !x.is_zero() {
            aug.set(i, k, x.clone());
        }
    }
    let (red, piv) = rref(&aug);
    if piv.last() == Some(&k) {
        return SpanSolution::NotInSpan;
    }
    let mut coeffs = vec![Scalar::zero(); k];
    for (r, &p) in piv.iter().enumerate() {
        coeffs[p] = red.get(r, k).clone();
    }
    SpanSolution::InSpan(coeffs)
}

/// Indices of a maximal linearly independent subset of the columns (greedy, in order).
pub fn independent_columns(m: &ExactMatrix) -> Vec<usize> {
    rref(m).1
}

/// Incremental echelon basis of a subspace of `F^n`, with membership, reduction and
/// coordinates relative to the inserted vectors.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    field: NumberField,
    dim: usize,
    /// Reduced rows: (pivot column, row normalized to 1 at the pivot, combination of inputs).
    rows: Vec<(usize, Vector, Vector)>,
    inserted: usize,
}

impl EchelonSpace {
    pub fn new(field: &NumberField, dim: usize) -> Self {
        EchelonSpace { field: field.clone(), dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Count of vectors offered so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the current basis. Returns the residue and the combination
    /// of inserted vectors that was subtracted.
    fn reduce_tracked(&self, v: &[Scalar]) -> (Vector, Vector) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut comb = vec![Scalar::zero(); self.inserted];
        for (p, row, c) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let factor = r[*p].clone();
            let neg = factor.neg();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    f.mul_add_assign(&mut r[j], &neg, x);
                }
            }
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    f.mul_add_assign(&mut comb[j], &factor, x);
                }
            }
        }
        (r, comb)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_tracked(v).0.iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let (r, comb) = self.reduce_tracked(v);
        if r.iter().all(Scalar::is_zero) {
            Some(comb)
        } else {
            None
        }
    }

    /// Offer a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let f = self.field.clone();
        let (mut r, comb) = self.reduce_tracked(v);
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, c) in self.rows.iter_mut() {
            c.push(Scalar::zero());
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // residue = v - sum comb_j * input_j
        let mut c: Vector = comb.iter().map(Scalar::neg).collect();
        c.push(f.one());
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = f.mul(x, &inv);
            }
        }
        for x in c.iter_mut() {
            if !x.is_zero() {
                *x = f.mul(x, &inv);
            }
        }
        // keep existing rows reduced at the new pivot
        for (_, row, rc) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let neg = row[p].neg();
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    f.mul_add_assign(&mut row[j], &neg, x);
                }
            }
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    f.mul_add_assign(&mut rc[j], &neg, x);
                }
            }
        }
        debug_assert_eq!(c.len(), idx + 1);
        self.rows.push((p, r, c));
        true
    }
}

/// A subspace of `F^n` stored by its reduced echelon basis. Coordinates of a member
/// are its entries at the pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: NumberField,
    dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(field: &NumberField, dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { field: field.clone(), dim, basis, pivots: (0..dim).collect() }
    }

    pub fn spanned_by(field: &NumberField, dim: usize, vectors: &[Vector]) -> Self {
        let m = ExactMatrix::from_rows(field, dim, vectors.to_vec());
        let (red, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Subspace { field: field.clone(), dim, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Coordinates of `v`, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.is_full() {
            return Some(c);
        }
        let back = self.embed(&c);
        (back == v).then_some(c)
    }

    /// The ambient vector with the given coordinates.
    pub fn embed(&self, c: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (x, b) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    self.field.mul_add_assign(o, x, y);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn subspace_coordinates() {
        let q = NumberField::rationals();
        let v = |xs: &[i64]| xs.iter().map(|&x| Scalar::int(x)).collect::<Vector>();
        let s = Subspace::spanned_by(&q, 3, &[v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&v(&[3, 5, 2])).unwrap();
        assert_eq!(s.embed(&c), v(&[3, 5, 2]));
        assert!(!s.contains(&v(&[0, 0, 1])));
        let f = Subspace::full(&q, 2);
        assert_eq!(f.coordinates(&v(&[4, -1])).unwrap(), v(&[4, -1]));
    }

    #[test]
    fn rref_examples() {
        let f = q();
        let id = ExactMatrix::identity(&f, 2);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);

        let k = NumberField::cyclotomic3();
        let xi = k.generator();
        let m = ExactMatrix::from_rows(&k, 2, vec![vec![k.one(), k.one()], vec![xi.clone(), xi]]);
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0]);
        assert_eq!(
            r,
            ExactMatrix::from_rows(&k, 2, vec![vec![k.one(), k.one()], vec![Scalar::zero(), Scalar::zero()]])
        );
        let ker = kernel_basis(&m);
        assert_eq!(ker, vec![vec![Scalar::int(-1), Scalar::int(1)]]);

        let z = ExactMatrix::zeros(&f, 3, 3);
        let (r, p) = rref(&z);
        assert!(r.is_zero() && p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        let f = q();
        assert!(kernel_basis(&ExactMatrix::identity(&f, 3)).is_empty());
        let m = ExactMatrix::from_rows(&f, 2, vec![ints(&[1, -1])]);
        assert_eq!(kernel_basis(&m), vec![ints(&[1, 1])]);
    }

    #[test]
    fn span_examples() {
        let f = q();
        let g = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        assert_eq!(solve_in_span(&f, &ints(&[0, 0, 0]), &g), SpanSolution::InSpan(ints(&[0, 0])));
        assert_eq!(solve_in_span(&f, &ints(&[1, 2, 3]), &g), SpanSolution::InSpan(ints(&[1, 2])));
        assert_eq!(solve_in_span(&f, &ints(&[0, 1]), &[ints(&[1, 0])]), SpanSolution::NotInSpan);
    }

    #[test]
    fn echelon_space_coordinates() {
        let f = q();
        let mut s = EchelonSpace::new(&f, 3);
        assert!(s.insert(&ints(&[1, 1, 0])));
        assert!(!s.insert(&ints(&[2, 2, 0])));
        assert!(s.insert(&ints(&[0, 1, 1])));
        let c = s.coordinates(&ints(&[1, 2, 1])).unwrap();
        // 1*(1,1,0) + 0*(2,2,0) + 1*(0,1,1)
        let mut back = vec![Scalar::zero(); 3];
        let inputs = [ints(&[1, 1, 0]), ints(&[2, 2, 0]), ints(&[0, 1, 1])];
        for (cj, v) in c.iter().zip(&inputs) {
            for i in 0..3 {
                f.mul_add_assign(&mut back[i], cj, &v[i]);
            }
        }
        assert_eq!(back, ints(&[1, 2, 1]));
        assert!(s.coordinates(&ints(&[1, 0, 0])).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = NumberField::cyclotomic3();
        let xi = f.generator();
        let m = ExactMatrix::from_rows(&f, 2, vec![vec![xi.clone(), f.one()], vec![Scalar::zero(), Scalar::int(2)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(&f, 2));
    }
}
