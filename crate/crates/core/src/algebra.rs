//! Connected graded algebras `k<generators>/(relations)` computed degree by degree.
//!
//! Degree `d` is built from lower degrees: every word of degree `d` is `w·g` for a
//! unique last letter `g`, so `A_d` is the quotient of `⊕_g A_{d-|g|} ⊗ g` by the
//! images of `u·r` with `u` normal and `r` a relation. Row reducing that image with
//! columns in decreasing word order puts the pivots on leading words; the remaining
//! (normal) words form the basis, and the reduced rows give the rewriting of every
//! non-normal word. This is a linear-algebra Gröbner computation truncated by degree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::linalg::{rref, ExactMatrix, Vector};
use crate::poly::{FreeSpec, NcPolynomial, Word};

/// Sparse vector: (index, nonzero coefficient), indices increasing.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Total order on words of equal degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Degree, then lexicographic from the left with generators in declaration order.
    #[default]
    DegLex,
    /// Degree, then lexicographic read from the right.
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        match self {
            MonomialOrder::DegLex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.0.iter().rev().cmp(b.0.iter().rev()),
        }
    }

    pub fn other(&self) -> Self {
        match self {
            MonomialOrder::DegLex => MonomialOrder::DegRevLex,
            MonomialOrder::DegRevLex => MonomialOrder::DegLex,
        }
    }
}

/// Degreewise dimensions `h(0), .., h(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn convolve(&self, other: &HilbertFunction) -> HilbertFunction {
        let n = self.0.len().min(other.0.len());
        HilbertFunction((0..n).map(|d| (0..=d).map(|i| self.0[i] * other.0[d - i]).sum()).collect())
    }

    pub fn truncate(&self, len: usize) -> HilbertFunction {
        HilbertFunction(self.0.iter().take(len).copied().collect())
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(", "))
    }
}

#[derive(Debug)]
struct DegreeData {
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `right_mult[g][i]` = normal form of `basis_{d-|g|}[i] · g`; empty when `|g| > d`.
    right_mult: Vec<Vec<SparseVec>>,
    word_count: u128,
}

/// A finitely presented connected graded algebra.
pub struct PresentedAlgebra {
    field: NumberField,
    spec: FreeSpec,
    relations: Vec<NcPolynomial>,
    relation_degrees: Vec<usize>,
    order: MonomialOrder,
    cache: RwLock<Vec<Arc<DegreeData>>>,
}

impl Clone for PresentedAlgebra {
    fn clone(&self) -> Self {
        PresentedAlgebra {
            field: self.field.clone(),
            spec: self.spec.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            order: self.order,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.display(&self.spec).to_string()).collect();
        f.debug_struct("PresentedAlgebra")
            .field("generators", &self.spec)
            .field("relations", &rels)
            .field("order", &self.order)
            .finish()
    }
}

impl PresentedAlgebra {
    pub fn new(
        field: &NumberField,
        spec: FreeSpec,
        relations: Vec<NcPolynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let mut rels = Vec::new();
        let mut degs = Vec::new();
        for r in relations {
            let shown = r.display(&spec).to_string();
            for w in r.terms().map(|(w, _)| w) {
                if w.0.iter().any(|&g| g as usize >= spec.len()) {
                    return Err(Error::UnknownGenerator(format!("index in {shown}")));
                }
            }
            match r.homogeneous_degree(&spec) {
                Err(_) => return Err(Error::InhomogeneousRelation(shown)),
                Ok(None) => continue,
                Ok(Some(0)) => {
                    return Err(Error::InhomogeneousRelation(format!(
                        "{shown} (a degree-0 relation would kill the unit)"
                    )))
                }
                Ok(Some(d)) => {
                    rels.push(r);
                    degs.push(d);
                }
            }
        }
        Ok(PresentedAlgebra {
            field: field.clone(),
            spec,
            relations: rels,
            relation_degrees: degs,
            order,
            cache: RwLock::new(Vec::new()),
        })
    }

    /// The free algebra on `spec`.
    pub fn free(field: &NumberField, spec: FreeSpec) -> Self {
        Self::new(field, spec, Vec::new(), MonomialOrder::DegLex).expect("no relations")
    }

    /// The base field viewed as the algebra with no generators.
    pub fn ground(field: &NumberField) -> Self {
        Self::free(field, FreeSpec::empty())
    }

    /// The same presentation with another word order (fresh cache).
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PresentedAlgebra {
            field: self.field.clone(),
            spec: self.spec.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            order,
            cache: RwLock::new(Vec::new()),
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn spec(&self) -> &FreeSpec {
        &self.spec
    }

    pub fn relations(&self) -> &[NcPolynomial] {
        &self.relations
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ngens(&self) -> usize {
        self.spec.len()
    }

    /// Compute and cache every degree up to `max`.
    pub fn warm_up(&self, max: usize) {
        self.data(max);
    }

    fn data(&self, d: usize) -> Arc<DegreeData> {
        {
            let c = self.cache.read().unwrap();
            if let Some(x) = c.get(d) {
                return x.clone();
            }
        }
        let mut c = self.cache.write().unwrap();
        while c.len() <= d {
            let next = self.compute_degree(&c, c.len());
            c.push(Arc::new(next));
        }
        c[d].clone()
    }

    fn compute_degree(&self, lower: &[Arc<DegreeData>], d: usize) -> DegreeData {
        let ngens = self.ngens();
        let word_count = self.spec.word_counts(d)[d];
        if d == 0 {
            let basis = vec![Word::empty()];
            let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            return DegreeData { basis, index, right_mult: vec![Vec::new(); ngens], word_count };
        }
        // candidate words n·g, in blocks by last letter g
        let mut offsets = vec![usize::MAX; ngens];
        let mut cand: Vec<Word> = Vec::new();
        for g in 0..ngens {
            let dg = self.spec.degree_of(g as u16);
            if dg > d {
                continue;
            }
            offsets[g] = cand.len();
            for n in &lower[d - dg].basis {
                let mut w = n.0.clone();
                w.push(g as u16);
                cand.push(Word(w));
            }
        }
        let m = cand.len();
        // column position: candidates sorted by decreasing word order
        let mut by_order: Vec<usize> = (0..m).collect();
        by_order.sort_by(|&a, &b| self.order.cmp_words(&cand[b], &cand[a]));
        let mut col_of = vec![0; m];
        for (c, &i) in by_order.iter().enumerate() {
            col_of[i] = c;
        }
        // u·w with u normal of degree d - |w|: start from e_u and append all but the last letter
        let place = |u_deg: usize, u_idx: usize, w: &[u16]| -> SparseVec {
            let (&g, mid) = w.split_last().expect("nonempty word");
            let nf = nf_from(lower, &self.field, &self.spec, u_deg, u_idx, mid);
            nf.into_iter().map(|(i, c)| (col_of[offsets[g as usize] + i], c)).collect()
        };
        let mut rows: Vec<Vector> = Vec::new();
        for (r, &k) in self.relations.iter().zip(&self.relation_degrees) {
            if k > d {
                continue;
            }
            for u_idx in 0..lower[d - k].basis.len() {
                let mut row = vec![Scalar::zero(); m];
                for (w, c) in r.terms() {
                    for (col, x) in place(d - k, u_idx, &w.0) {
                        self.field.mul_add_assign(&mut row[col], c, &x);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let (red, pivots) = if rows.is_empty() {
            (ExactMatrix::zeros(&self.field, 0, m), Vec::new())
        } else {
            rref(&ExactMatrix::from_rows(&self.field, m, rows))
        };
        let mut pivot_row = vec![usize::MAX; m];
        for (r, &p) in pivots.iter().enumerate() {
            pivot_row[p] = r;
        }
        // normal words ascending in the order = nonpivot columns read from the right
        let normal_cols: Vec<usize> = (0..m).rev().filter(|&c| pivot_row[c] == usize::MAX).collect();
        let basis: Vec<Word> = normal_cols.iter().map(|&c| cand[by_order[c]].clone()).collect();
        let mut basis_idx_of_col = vec![usize::MAX; m];
        for (i, &c) in normal_cols.iter().enumerate() {
            basis_idx_of_col[c] = i;
        }
        let reduce_col = |c: usize| -> SparseVec {
            if pivot_row[c] == usize::MAX {
                return vec![(basis_idx_of_col[c], self.field.one())];
            }
            let r = pivot_row[c];
            let mut v: SparseVec = Vec::new();
            for j in (c + 1)..m {
                let x = red.get(r, j);
                if !x.is_zero() && pivot_row[j] == usize::MAX {
                    v.push((basis_idx_of_col[j], x.neg()));
                }
            }
            v.sort_by_key(|e| e.0);
            v
        };
        let mut right_mult = vec![Vec::new(); ngens];
        for g in 0..ngens {
            if offsets[g] == usize::MAX {
                continue;
            }
            let dg = self.spec.degree_of(g as u16);
            right_mult[g] = (0..lower[d - dg].basis.len()).map(|i| reduce_col(col_of[offsets[g] + i])).collect();
        }
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        assert!((basis.len() as u128) <= word_count, "normal basis larger than the word space");
        DegreeData { basis, index, right_mult, word_count }
    }

    /// Normal monomials of degree `d`, ascending in the word order.
    pub fn degree_basis(&self, d: usize) -> Vec<Word> {
        self.data(d).basis.clone()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.data(d).basis.len()
    }

    /// Dimension of the degree-`d` slice of the relation ideal.
    pub fn ideal_dim(&self, d: usize) -> u128 {
        let x = self.data(d);
        x.word_count - x.basis.len() as u128
    }

    pub fn word_count(&self, d: usize) -> u128 {
        self.data(d).word_count
    }

    pub fn basis_index(&self, d: usize, w: &Word) -> Option<usize> {
        self.data(d).index.get(w).copied()
    }

    pub fn hilbert(&self, max: usize) -> HilbertFunction {
        HilbertFunction((0..=max).map(|d| self.dim(d)).collect())
    }

    /// Splits basis word `i` of degree `d` as `w'·g`; `w'` is again a normal word.
    /// Returns the index of `w'` in its degree and the letter `g`.
    pub fn split_last(&self, d: usize, i: usize) -> (usize, u16) {
        let data = self.data(d);
        let w = &data.basis[i].0;
        let g = *w.last().expect("positive degree");
        let prefix = Word(w[..w.len() - 1].to_vec());
        let pd = d - self.spec.degree_of(g);
        let idx = self.basis_index(pd, &prefix).expect("normal words are closed under prefixes");
        (idx, g)
    }

    pub fn word_degree(&self, w: &Word) -> usize {
        self.spec.word_degree(w)
    }

    /// `v · g` for `v ∈ A_deg`.
    pub fn right_mul_gen(&self, v: &[Scalar], deg: usize, g: u16) -> Vector {
        let target = deg + self.spec.degree_of(g);
        let data = self.data(target);
        let table = &data.right_mult[g as usize];
        let mut out = vec![Scalar::zero(); data.basis.len()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in &table[i] {
                self.field.mul_add_assign(&mut out[*j], c, x);
            }
        }
        out
    }

    /// `v · w` for `v ∈ A_deg` and a word `w`.
    pub fn right_mul_word(&self, v: &[Scalar], deg: usize, w: &Word) -> Vector {
        let mut cur = v.to_vec();
        let mut d = deg;
        for &g in &w.0 {
            cur = self.right_mul_gen(&cur, d, g);
            d += self.spec.degree_of(g);
        }
        cur
    }

    /// `v · p` for `v ∈ A_deg` and a homogeneous polynomial `p` of degree `pdeg`.
    pub fn right_mul_poly(&self, v: &[Scalar], deg: usize, p: &NcPolynomial, pdeg: usize) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim(deg + pdeg)];
        for (w, c) in p.terms() {
            let x = self.right_mul_word(v, deg, w);
            for (o, y) in out.iter_mut().zip(&x) {
                self.field.mul_add_assign(o, c, y);
            }
        }
        out
    }

    /// The unit vector of the empty word in degree 0.
    pub fn unit(&self) -> Vector {
        vec![self.field.one()]
    }

    /// Normal form of a single word.
    pub fn word_normal_form(&self, w: &Word) -> Vector {
        self.right_mul_word(&self.unit(), 0, w)
    }

    /// Coordinates of a homogeneous polynomial over `degree_basis(d)`.
    pub fn normal_form_at(&self, p: &NcPolynomial, d: usize) -> Result<Vector> {
        let mut out = vec![Scalar::zero(); self.dim(d)];
        for (w, c) in p.terms() {
            if self.spec.word_degree(w) != d {
                return Err(Error::InhomogeneousInput);
            }
            let x = self.word_normal_form(w);
            for (o, y) in out.iter_mut().zip(&x) {
                self.field.mul_add_assign(o, c, y);
            }
        }
        Ok(out)
    }

    /// Normal form of a nonzero homogeneous polynomial, with its degree.
    pub fn normal_form(&self, p: &NcPolynomial) -> Result<(usize, Vector)> {
        let d = p.homogeneous_degree(&self.spec)?.unwrap_or(0);
        Ok((d, self.normal_form_at(p, d)?))
    }

    /// Product of `a ∈ A_i` and `b ∈ A_j`, in `A_{i+j}`.
    pub fn multiply(&self, a: &[Scalar], i: usize, b: &[Scalar], j: usize) -> Vector {
        let basis = self.data(j).basis.clone();
        let mut out = vec![Scalar::zero(); self.dim(i + j)];
        for (c, w) in b.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let x = self.right_mul_word(a, i, w);
            for (o, y) in out.iter_mut().zip(&x) {
                self.field.mul_add_assign(o, c, y);
            }
        }
        out
    }

    /// Product of two homogeneous polynomials, as a normal form.
    pub fn multiply_polys(&self, p: &NcPolynomial, q: &NcPolynomial) -> Result<(usize, Vector)> {
        let (i, a) = self.normal_form(p)?;
        let (j, b) = self.normal_form(q)?;
        Ok((i + j, self.multiply(&a, i, &b, j)))
    }

    /// The polynomial `Σ v_i · basis_i`.
    pub fn to_polynomial(&self, v: &[Scalar], d: usize) -> NcPolynomial {
        let basis = self.data(d).basis.clone();
        let mut p = NcPolynomial::zero();
        for (c, w) in v.iter().zip(basis) {
            p.add_term(w, c);
        }
        p
    }

    /// `A ⊗ B` with the Koszul sign rule `g_B g_A = (-1)^{|g_A||g_B|} g_A g_B`.
    ///
    /// Generator names of `B` that clash with names of `A` get a `'` appended.
    pub fn tensor_product(&self, other: &PresentedAlgebra) -> Result<PresentedAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let na = self.ngens() as u16;
        let mut gens: Vec<(String, usize)> =
            self.spec.names().iter().cloned().zip(self.spec.degrees().iter().copied()).collect();
        for (n, &d) in other.spec.names().iter().zip(other.spec.degrees()) {
            let mut name = n.clone();
            while gens.iter().any(|(m, _)| *m == name) {
                name.push('\'');
            }
            gens.push((name, d));
        }
        let spec = FreeSpec::new(gens)?;
        let mut rels: Vec<NcPolynomial> = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.map_generators(|g| g + na)));
        let f = &self.field;
        for a in 0..na {
            for b in 0..other.ngens() as u16 {
                let da = self.spec.degree_of(a);
                let db = other.spec.degree_of(b);
                let sign = if (da * db).is_multiple_of(2) { Scalar::int(1) } else { Scalar::int(-1) };
                let ba = NcPolynomial::monomial(f.one(), Word(vec![b + na, a]));
                let ab = NcPolynomial::monomial(sign, Word(vec![a, b + na]));
                rels.push(ba.sub(&ab));
            }
        }
        PresentedAlgebra::new(f, spec, rels, self.order)
    }
}

/// Normal form of `basis_{start}[idx] · letters` using only already-computed degrees.
fn nf_from(
    lower: &[Arc<DegreeData>],
    field: &NumberField,
    spec: &FreeSpec,
    start: usize,
    idx: usize,
    word: &[u16],
) -> SparseVec {
    let mut cur: SparseVec = vec![(idx, field.one())];
    let mut d = start;
    for &g in word {
        d += spec.degree_of(g);
        let table = &lower[d].right_mult[g as usize];
        let mut acc: Vec<Scalar> = vec![Scalar::zero(); lower[d].basis.len()];
        for (i, c) in &cur {
            for (j, x) in &table[*i] {
                field.mul_add_assign(&mut acc[*j], c, x);
            }
        }
        cur = acc.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> FreeSpec {
        FreeSpec::new([("x", 1), ("y", 1)]).unwrap()
    }

    fn w(v: &[u16]) -> NcPolynomial {
        NcPolynomial::monomial(Scalar::int(1), Word(v.to_vec()))
    }

    fn down_up(k: &NumberField, alpha: &Scalar, beta: &Scalar, order: MonomialOrder) -> PresentedAlgebra {
        let r1 = w(&[0, 0, 1]).sub(&w(&[0, 1, 0]).scale(k, alpha)).sub(&w(&[1, 0, 0]).scale(k, beta));
        let r2 = w(&[0, 1, 1]).sub(&w(&[1, 0, 1]).scale(k, alpha)).sub(&w(&[1, 1, 0]).scale(k, beta));
        PresentedAlgebra::new(k, xy(), vec![r1, r2], order).unwrap()
    }

    fn a_xi(order: MonomialOrder) -> PresentedAlgebra {
        let k = NumberField::cyclotomic3();
        let xi = k.generator();
        down_up(&k, &xi.sub(&Scalar::int(1)), &xi, order)
    }

    #[test]
    fn free_algebra_basis() {
        let q = NumberField::rationals();
        let a = PresentedAlgebra::free(&q, xy());
        let b = a.degree_basis(2);
        assert_eq!(b.len(), 4);
        assert_eq!(a.hilbert(5).0, vec![1, 2, 4, 8, 16, 32]);
        // xy is its own normal form
        let nf = a.normal_form_at(&w(&[0, 1]), 2).unwrap();
        assert_eq!(a.to_polynomial(&nf, 2), w(&[0, 1]));
    }

    #[test]
    fn down_up_dimensions() {
        for order in [MonomialOrder::DegLex, MonomialOrder::DegRevLex] {
            let a = a_xi(order);
            assert_eq!(a.dim(3), 6);
            assert_eq!(a.ideal_dim(3), 2);
            assert_eq!(a.hilbert(6).0, vec![1, 2, 4, 6, 9, 12, 16]);
        }
        let q = NumberField::rationals();
        for (al, be) in [(1, 1), (0, 1), (2, -3), (-1, 5)] {
            let a = down_up(&q, &Scalar::int(al), &Scalar::int(be), MonomialOrder::DegLex);
            assert_eq!(a.hilbert(6).0, vec![1, 2, 4, 6, 9, 12, 16], "A({al},{be})");
        }
    }

    #[test]
    fn commutative_plane() {
        let q = NumberField::rationals();
        let a = PresentedAlgebra::new(&q, xy(), vec![w(&[0, 1]).sub(&w(&[1, 0]))], MonomialOrder::DegLex).unwrap();
        assert_eq!(a.dim(3), 4);
        assert_eq!(a.hilbert(5).0, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn down_up_normal_form_of_relation() {
        let a = a_xi(MonomialOrder::DegLex);
        let k = a.field().clone();
        let xi = k.generator();
        for r in a.relations().to_vec() {
            assert!(a.normal_form_at(&r, 3).unwrap().iter().all(Scalar::is_zero));
        }
        let lhs = a.normal_form_at(&w(&[0, 0, 1]), 3).unwrap();
        let rhs_poly = w(&[0, 1, 0]).scale(&k, &xi.sub(&Scalar::int(1))).add(&w(&[1, 0, 0]).scale(&k, &xi));
        let rhs = a.normal_form_at(&rhs_poly, 3).unwrap();
        assert_eq!(lhs, rhs);
        // y*x^2 and y^2*x lead under deglex
        assert!(a.basis_index(3, &Word(vec![1, 0, 0])).is_none());
        assert!(a.basis_index(3, &Word(vec![1, 1, 0])).is_none());
        assert!(a.basis_index(3, &Word(vec![0, 0, 1])).is_some());
    }

    #[test]
    fn exterior_like_cohomology_presentation() {
        // k<b,a>/(t*b*a - a*b, b^2), |b| = 1, |a| = 2
        let k = NumberField::cyclotomic3();
        let spec = FreeSpec::new([("b", 1), ("a", 2)]).unwrap();
        let rel1 = w(&[0, 1]).scale(&k, &k.generator()).sub(&w(&[1, 0]));
        let rel2 = w(&[0, 0]);
        let h = PresentedAlgebra::new(&k, spec, vec![rel1, rel2], MonomialOrder::DegLex).unwrap();
        assert_eq!(h.hilbert(8).0, vec![1; 9]);
        let b = h.normal_form_at(&w(&[0]), 1).unwrap();
        assert!(h.multiply(&b, 1, &b, 1).iter().all(Scalar::is_zero));
    }

    #[test]
    fn tensor_products() {
        let q = NumberField::rationals();
        let fx = PresentedAlgebra::free(&q, FreeSpec::new([("x", 1)]).unwrap());
        let fy = PresentedAlgebra::free(&q, FreeSpec::new([("y", 1)]).unwrap());
        let t = fx.tensor_product(&fy).unwrap();
        assert_eq!(t.relations(), &[w(&[1, 0]).add(&w(&[0, 1]))]);
        assert_eq!(t.hilbert(4).0, vec![1, 2, 3, 4, 5]);

        let a = a_xi(MonomialOrder::DegLex);
        let ground = PresentedAlgebra::ground(a.field());
        assert_eq!(a.tensor_product(&ground).unwrap().hilbert(6), a.hilbert(6));
        let aa = a.tensor_product(&a).unwrap();
        assert_eq!(aa.spec().names(), &["x", "y", "x'", "y'"]);
        assert_eq!(aa.hilbert(4), a.hilbert(4).convolve(&a.hilbert(4)));

        assert_eq!(fx.tensor_product(&a).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let q = NumberField::rationals();
        let r = w(&[0, 1]).add(&w(&[0]));
        assert!(matches!(
            PresentedAlgebra::new(&q, xy(), vec![r], MonomialOrder::DegLex),
            Err(Error::InhomogeneousRelation(_))
        ));
    }

    #[test]
    fn mixed_degree_generators() {
        // k[a, b] with |a| = 1, |b| = 2: h(d) = floor(d/2) + 1
        let q = NumberField::rationals();
        let spec = FreeSpec::new([("a", 1), ("b", 2)]).unwrap();
        for order in [MonomialOrder::DegLex, MonomialOrder::DegRevLex] {
            let alg = PresentedAlgebra::new(&q, spec.clone(), vec![w(&[0, 1]).sub(&w(&[1, 0]))], order).unwrap();
            assert_eq!(alg.hilbert(7).0, vec![1, 1, 2, 2, 3, 3, 4, 4]);
        }
    }
}
