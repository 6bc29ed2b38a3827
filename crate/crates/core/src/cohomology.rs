use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{HilbertFunction, MonomialOrder, PresentedAlgebra};
use crate::check::{Check, ValidationReport};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::linalg::{kernel_basis, EchelonSpace, ExactMatrix, Subspace, Vector};
use crate::poly::{FreeSpec, NcPolynomial};

/// `H(A)` of a DG algebra, or of a subcomplex closed under products, through
/// degree `valid_through`.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebraView {
    dg: DgAlgebra,
    valid_through: usize,
    subspaces: Vec<Subspace>,
    restricted: Vec<ExactMatrix>,
    dims: Vec<usize>,
    reps: Vec<Vec<Vector>>,
    boundary_ranks: Vec<usize>,
    echelon: Vec<OnceLock<EchelonSpace>>,
}

/// Cohomology of the full complex, valid through degree `max − 1`.
pub fn cohomology(a: &DgAlgebra, max: usize) -> Result<CohomologyAlgebraView> {
    if max < 2 {
        return Err(Error::TruncationTooSmall(max));
    }
    a.warm_up(max);
    let k = a.field();
    let subs = (0..=max).map(|n| Subspace::full(k, a.algebra().dim(n))).collect();
    cohomology_of_subcomplex(a, subs, max)
}

/// Cohomology of the subcomplex with degreewise bases `subspaces[0..=max]`.
pub fn cohomology_of_subcomplex(a: &DgAlgebra, subspaces: Vec<Subspace>, max: usize) -> Result<CohomologyAlgebraView> {
    if max < 2 {
        return Err(Error::TruncationTooSmall(max));
    }
    if subspaces.len() < max + 1 {
        return Err(Error::Internal("missing subcomplex degrees".into()));
    }
    let k = a.field().clone();
    let mut restricted = Vec::with_capacity(max);
    for n in 0..max {
        let src = &subspaces[n];
        let dst = &subspaces[n + 1];
        let mut cols = Vec::with_capacity(src.dim());
        for b in src.basis() {
            let img = a.apply(b, n);
            let c = dst
                .coordinates(&img)
                .ok_or_else(|| Error::Internal(format!("subcomplex not closed under d in degree {n}")))?;
            cols.push(c);
        }
        restricted.push(ExactMatrix::from_columns(&k, dst.dim(), &cols));
    }
    let mut dims = Vec::new();
    let mut reps = Vec::new();
    let mut boundary_ranks = Vec::new();
    for n in 0..max {
        let t = &restricted[n];
        let z = kernel_basis(t);
        debug_assert_eq!(z.len() + t.rank(), t.cols(), "rank–nullity in degree {n}");
        debug_assert!(n == 0 || t.mul(&restricted[n - 1]).is_zero(), "d∘d ≠ 0 in degree {n}");
        let mut space = EchelonSpace::new(&k, subspaces[n].dim());
        if n > 0 {
            let prev = &restricted[n - 1];
            for c in 0..prev.cols() {
                space.insert(&prev.column(c));
            }
        }
        let rb = space.rank();
        let mut r = Vec::new();
        for v in z.iter() {
            if space.insert(v) {
                r.push(subspaces[n].embed(v));
            }
        }
        if r.len() + rb != z.len() {
            return Err(Error::Internal(format!("cohomology dimension count failed in degree {n}")));
        }
        dims.push(r.len());
        reps.push(r);
        boundary_ranks.push(rb);
    }
    let echelon = (0..max).map(|_| OnceLock::new()).collect();
    Ok(CohomologyAlgebraView {
        dg: a.clone(),
        valid_through: max - 1,
        subspaces,
        restricted,
        dims,
        reps,
        boundary_ranks,
        echelon,
    })
}

impl CohomologyAlgebraView {
    pub fn dg(&self) -> &DgAlgebra {
        &self.dg
    }

    pub fn field(&self) -> &NumberField {
        self.dg.field()
    }

    pub fn valid_through(&self) -> usize {
        self.valid_through
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction(self.dims.clone())
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// Cocycle representatives of the basis classes in degree `n`, in ambient coordinates.
    pub fn representatives(&self, n: usize) -> &[Vector] {
        &self.reps[n]
    }

    pub fn subspace(&self, n: usize) -> &Subspace {
        &self.subspaces[n]
    }

    /// Matrix of `d` restricted to the subcomplex, from degree `n` to `n + 1`.
    pub fn restricted_differential(&self, n: usize) -> &ExactMatrix {
        &self.restricted[n]
    }

    pub fn boundary_rank(&self, n: usize) -> usize {
        self.boundary_ranks[n]
    }

    // boundaries first, then representatives
    fn echelon(&self, n: usize) -> &EchelonSpace {
        self.echelon[n].get_or_init(|| {
            let k = self.field();
            let mut space = EchelonSpace::new(k, self.subspaces[n].dim());
            if n > 0 {
                let prev = &self.restricted[n - 1];
                for c in 0..prev.cols() {
                    space.insert(&prev.column(c));
                }
            }
            for r in &self.reps[n] {
                let c = self.subspaces[n].coordinates(r).expect("representative in subspace");
                space.insert(&c);
            }
            space
        })
    }

    /// `true` iff `v ∈ A^n` is a cocycle lying in the subcomplex.
    pub fn is_cocycle(&self, v: &[Scalar], n: usize) -> bool {
        self.subspaces[n].contains(v) && self.dg.apply(v, n).iter().all(Scalar::is_zero)
    }

    /// Coordinates of the class of the cocycle `v ∈ A^n` in the basis of `H^n`.
    pub fn class_of(&self, v: &[Scalar], n: usize) -> Result<Vector> {
        if n > self.valid_through {
            return Err(Error::Internal(format!("degree {n} beyond the cohomology window")));
        }
        let c = self.subspaces[n]
            .coordinates(v)
            .ok_or_else(|| Error::Internal(format!("vector outside the subcomplex in degree {n}")))?;
        let space = self.echelon(n);
        let comb =
            space.coordinates(&c).ok_or_else(|| Error::Internal(format!("product is not a cocycle in degree {n}")))?;
        let nb = self.restricted.get(n.wrapping_sub(1)).map(|m| m.cols()).unwrap_or(0);
        let nb = if n == 0 { 0 } else { nb };
        Ok(comb[nb..].to_vec())
    }

    /// `true` iff the cocycle `v` is a coboundary.
    pub fn is_coboundary(&self, v: &[Scalar], n: usize) -> Result<bool> {
        Ok(self.class_of(v, n)?.iter().all(Scalar::is_zero))
    }

    /// Product of basis classes `i ∈ H^p` and `j ∈ H^q`.
    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Result<Vector> {
        let alg = self.dg.algebra();
        let v = alg.multiply(&self.reps[p][i], p, &self.reps[q][j], q);
        self.class_of(&v, p + q)
    }

    /// Class of a general element given in `H^n` coordinates, as an ambient cocycle.
    pub fn lift(&self, c: &[Scalar], n: usize) -> Vector {
        let k = self.field();
        let mut out = vec![Scalar::zero(); self.dg.algebra().dim(n)];
        for (x, r) in c.iter().zip(&self.reps[n]) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(r) {
                if !y.is_zero() {
                    k.mul_add_assign(o, x, y);
                }
            }
        }
        out
    }
}

/// Outcome of comparing `H(A)` with a candidate presentation.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub report: ValidationReport,
    pub cohomology_dims: Vec<usize>,
    pub candidate_dims: Vec<usize>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// A candidate generator of `H(A)`: a name and a cocycle of `A`.
#[derive(Clone, Debug)]
pub struct CandidateGenerator {
    pub name: String,
    pub cocycle: NcPolynomial,
}

/// Checks that the algebra on `candidates` modulo `relations` (written in the
/// candidate names) presents `H(A)` through `view.valid_through()`: the candidates
/// are cocycles, each relation evaluates to a coboundary, the Hilbert functions
/// agree, and the classes of the candidates generate `H(A)`.
pub fn check_presentation(
    view: &CohomologyAlgebraView,
    candidates: &[CandidateGenerator],
    relations: &[NcPolynomial],
) -> Result<PresentationReport> {
    let a = view.dg();
    let alg = a.algebra();
    let k = a.field().clone();
    let top = view.valid_through();
    let mut report = ValidationReport::new(top);
    let mut gens = Vec::new();
    let mut vecs = Vec::new();
    for c in candidates {
        let (deg, v) = alg.normal_form(&c.cocycle)?;
        if deg == 0 {
            return Err(Error::DegreeMismatch(format!("candidate {} has degree 0", c.name)));
        }
        let ok = deg <= top && view.is_cocycle(&v, deg);
        report.push(Check::new(format!("{} = [{}] is a cocycle", c.name, c.cocycle.display(alg.spec())), ok));
        gens.push((c.name.clone(), deg));
        vecs.push((deg, v));
    }
    let spec = FreeSpec::new(gens)?;
    let pres = PresentedAlgebra::new(&k, spec.clone(), relations.to_vec(), MonomialOrder::DegLex)?;
    let eval_word = |w: &crate::poly::Word| -> (usize, Vector) {
        let mut cur = alg.unit();
        let mut deg = 0;
        for &g in &w.0 {
            let (gd, gv) = &vecs[g as usize];
            cur = alg.multiply(&cur, deg, gv, *gd);
            deg += gd;
        }
        (deg, cur)
    };
    if !report.passed() {
        return Ok(PresentationReport { report, cohomology_dims: view.dims().to_vec(), candidate_dims: Vec::new() });
    }
    for r in relations {
        let deg = r.homogeneous_degree(&spec)?.unwrap_or(0);
        let name = format!("relation {} is a coboundary", r.display(&spec));
        if deg > top {
            report.push(Check::with_detail(name, false, "beyond the window"));
            continue;
        }
        let mut v = vec![Scalar::zero(); alg.dim(deg)];
        for (w, c) in r.terms() {
            let (_, x) = eval_word(w);
            for (o, y) in v.iter_mut().zip(&x) {
                k.mul_add_assign(o, c, y);
            }
        }
        report.push(Check::new(name, view.is_coboundary(&v, deg)?));
    }
    let hc = pres.hilbert(top).0;
    let hh = view.dims().to_vec();
    report.push(Check::with_detail(
        "Hilbert functions agree",
        hc == hh,
        format!("candidate {} vs H {}", HilbertFunction(hc.clone()), HilbertFunction(hh.clone())),
    ));
    let mut surj = true;
    for n in 0..=top {
        let mut space = EchelonSpace::new(&k, view.dim(n));
        for w in pres.degree_basis(n) {
            let (_, v) = eval_word(&w);
            space.insert(&view.class_of(&v, n)?);
        }
        if space.rank() != view.dim(n) {
            surj = false;
        }
    }
    report.push(Check::new("candidate classes generate H", surj));
    Ok(PresentationReport { report, cohomology_dims: hh, candidate_dims: hc })
}

/// Hilbert functions of `H(A ⊗ B)` and of the convolution `H(A) ∗ H(B)`.
#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub tensor: Vec<usize>,
    pub convolution: Vec<usize>,
    pub passed: bool,
}

/// Builds `A ⊗ B` and compares the cohomology dims through degree `max − 1`.
pub fn tensor_kunneth(a: &DgAlgebra, b: &DgAlgebra, max: usize) -> Result<(DgAlgebra, KunnethReport)> {
    let t = a.tensor(b)?;
    let ht = cohomology(&t, max)?.hilbert();
    let ha = cohomology(a, max)?.hilbert();
    let hb = cohomology(b, max)?.hilbert();
    let conv = ha.convolve(&hb);
    let passed = ht == conv;
    Ok((t, KunnethReport { tensor: ht.0, convolution: conv.0, passed }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::preset;
    use crate::poly::Word;

    fn w(v: &[u16]) -> NcPolynomial {
        NcPolynomial::monomial(Scalar::int(1), Word(v.to_vec()))
    }

    #[test]
    fn a1_dims() {
        let a = preset("A1").unwrap();
        let h = cohomology(&a, 13).unwrap();
        assert_eq!(h.dims(), &[1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1]);
        assert_eq!(cohomology(&a, 1).unwrap_err(), Error::TruncationTooSmall(1));
    }

    #[test]
    fn a3_dims() {
        let a = preset("A3").unwrap();
        let h = cohomology(&a, 8).unwrap();
        assert_eq!(h.dims(), &[1, 0, 0, 0, 0, 0, 1, 0]);
    }

    fn cand(name: &str, p: NcPolynomial) -> CandidateGenerator {
        CandidateGenerator { name: name.into(), cocycle: p }
    }

    #[test]
    fn two_generator_guess_for_a1_fails() {
        let a = preset("A1").unwrap();
        let k = a.field().clone();
        let h = cohomology(&a, 8).unwrap();
        let cands = vec![cand("b", w(&[1])), cand("a", w(&[0, 1]).add(&w(&[1, 0])))];
        let rels = vec![w(&[0, 1]).scale(&k, &k.generator()).sub(&w(&[1, 0])), w(&[0, 0])];
        let r = check_presentation(&h, &cands, &rels).unwrap();
        assert!(r.report.checks.iter().filter(|c| c.name.contains("coboundary")).all(|c| c.passed));
        assert!(!r.passed());
        assert_eq!(r.candidate_dims, vec![1; 8]);
        assert_eq!(r.cohomology_dims, vec![1, 1, 1, 1, 1, 0, 1, 1]);
        let commutative = vec![w(&[0, 1]).sub(&w(&[1, 0])), w(&[0, 0])];
        assert!(!check_presentation(&h, &cands, &commutative).unwrap().passed());
    }

    #[test]
    fn four_generator_presentation_of_a1() {
        let a = preset("A1").unwrap();
        let k = a.field().clone();
        let xi = k.generator();
        let xi2 = k.mul(&xi, &xi);
        let h = cohomology(&a, 14).unwrap();
        let two_thirds_t = Scalar::from_coeffs(vec![
            num_rational::BigRational::new(4.into(), 3.into()),
            num_rational::BigRational::new(2.into(), 3.into()),
        ]);
        let cands = vec![
            cand("b", w(&[1])),
            cand("a", w(&[0, 1]).add(&w(&[1, 0]))),
            cand("c", w(&[0, 0, 1]).scale(&k, &two_thirds_t).add(&w(&[0, 1, 0]))),
            cand("w", w(&[0; 6])),
        ];
        let (b, aa, c, ww) = (0u16, 1u16, 2u16, 3u16);
        let rels = vec![
            w(&[b, b]),
            w(&[aa, b]),
            w(&[b, aa]),
            w(&[b, c]).add(&w(&[c, b]).scale(&k, &xi)),
            w(&[aa, aa]).sub(&w(&[c, b]).scale(&k, &xi2)),
            w(&[aa, c]),
            w(&[c, aa]),
            w(&[c, c]),
            w(&[ww, b]).sub(&w(&[b, ww])),
            w(&[ww, aa]).sub(&w(&[aa, ww])),
            w(&[ww, c]).sub(&w(&[c, ww])),
        ];
        let r = check_presentation(&h, &cands, &rels).unwrap();
        assert!(r.passed(), "{:?}", r.report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn zero_differential_matches_algebra() {
        let k = NumberField::rationals();
        let a = DgAlgebra::zero(crate::families::down_up_algebra(
            &k,
            &Scalar::int(1),
            &Scalar::int(1),
            MonomialOrder::DegLex,
        ));
        let h = cohomology(&a, 7).unwrap();
        assert_eq!(h.dims(), &[1, 2, 4, 6, 9, 12, 16]);
        let p = h.product(1, 0, 2, 3).unwrap();
        assert_eq!(p.len(), 6);
    }
}
