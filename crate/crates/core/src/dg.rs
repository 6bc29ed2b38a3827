use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::PresentedAlgebra;
use crate::check::{Check, ValidationReport};
use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::linalg::{ExactMatrix, Vector};
use crate::poly::{NcPolynomial, Word};

/// A presented algebra with a degree +1 differential given on generators and
/// extended by the graded Leibniz rule.
pub struct DgAlgebra {
    algebra: PresentedAlgebra,
    d_images: Vec<NcPolynomial>,
    columns: RwLock<Vec<Arc<Vec<Vector>>>>,
}

impl Clone for DgAlgebra {
    fn clone(&self) -> Self {
        DgAlgebra {
            algebra: self.algebra.clone(),
            d_images: self.d_images.clone(),
            columns: RwLock::new(self.columns.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for DgAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.algebra.spec();
        let d: Vec<String> =
            spec.names().iter().zip(&self.d_images).map(|(n, p)| format!("d({n}) = {}", p.display(spec))).collect();
        f.debug_struct("DgAlgebra").field("algebra", &self.algebra).field("differential", &d).finish()
    }
}

impl DgAlgebra {
    pub fn new(algebra: PresentedAlgebra, d_images: Vec<NcPolynomial>) -> Result<Self> {
        let spec = algebra.spec();
        if d_images.len() != spec.len() {
            return Err(Error::DegreeMismatch(format!(
                "{} differential images for {} generators",
                d_images.len(),
                spec.len()
            )));
        }
        for (g, p) in d_images.iter().enumerate() {
            if p.terms().any(|(w, _)| w.0.iter().any(|&h| h as usize >= spec.len())) {
                return Err(Error::UnknownGenerator(format!("in d({})", spec.names()[g])));
            }
            let want = spec.degree_of(g as u16) + 1;
            match p.homogeneous_degree(spec) {
                Err(_) => return Err(Error::InhomogeneousInput),
                Ok(Some(k)) if k != want => {
                    return Err(Error::DegreeMismatch(format!(
                        "d({}) has degree {k}, expected {want}",
                        spec.names()[g]
                    )))
                }
                _ => {}
            }
        }
        Ok(DgAlgebra { algebra, d_images, columns: RwLock::new(Vec::new()) })
    }

    pub fn zero(algebra: PresentedAlgebra) -> Self {
        let n = algebra.ngens();
        DgAlgebra { algebra, d_images: vec![NcPolynomial::zero(); n], columns: RwLock::new(Vec::new()) }
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &NumberField {
        self.algebra.field()
    }

    pub fn d_images(&self) -> &[NcPolynomial] {
        &self.d_images
    }

    pub fn is_zero_differential(&self) -> bool {
        self.d_images.iter().all(NcPolynomial::is_zero)
    }

    /// The same DG algebra with bases computed in another word order.
    pub fn with_order(&self, order: crate::algebra::MonomialOrder) -> Self {
        DgAlgebra {
            algebra: self.algebra.with_order(order),
            d_images: self.d_images.clone(),
            columns: RwLock::new(Vec::new()),
        }
    }

    /// `d(p)` computed in the free algebra, word by word.
    pub fn d_free(&self, p: &NcPolynomial) -> NcPolynomial {
        let k = self.field();
        let spec = self.algebra.spec();
        let mut out = NcPolynomial::zero();
        for (w, c) in p.terms() {
            let mut sign_deg = 0;
            for (i, &g) in w.0.iter().enumerate() {
                let dg = &self.d_images[g as usize];
                if !dg.is_zero() {
                    let left = Word(w.0[..i].to_vec());
                    let right = Word(w.0[i + 1..].to_vec());
                    let coeff = if sign_deg % 2 == 0 { c.clone() } else { c.neg() };
                    for (u, e) in dg.terms() {
                        out.add_term(left.concat(u).concat(&right), &k.mul(&coeff, e));
                    }
                }
                sign_deg += spec.degree_of(g);
            }
        }
        out
    }

    fn columns(&self, n: usize) -> Arc<Vec<Vector>> {
        if let Some(c) = self.columns.read().unwrap().get(n) {
            return c.clone();
        }
        let mut cache = self.columns.write().unwrap();
        while cache.len() <= n {
            let d = cache.len();
            let cols = self.compute_columns(&cache, d);
            cache.push(Arc::new(cols));
        }
        cache[n].clone()
    }

    // d(w'g) = d(w')·g + (-1)^{|w'|} w'·d(g)
    fn compute_columns(&self, lower: &[Arc<Vec<Vector>>], n: usize) -> Vec<Vector> {
        let a = &self.algebra;
        let target = a.dim(n + 1);
        if n == 0 {
            return vec![vec![Scalar::zero(); target]];
        }
        let spec = a.spec();
        (0..a.dim(n))
            .map(|i| {
                let (pidx, g) = a.split_last(n, i);
                let gd = spec.degree_of(g);
                let pd = n - gd;
                let mut col = a.right_mul_gen(&lower[pd][pidx], pd + 1, g);
                let dg = &self.d_images[g as usize];
                if !dg.is_zero() {
                    let mut e = vec![Scalar::zero(); a.dim(pd)];
                    e[pidx] = self.field().one();
                    let t = a.right_mul_poly(&e, pd, dg, gd + 1);
                    let neg = pd % 2 == 1;
                    for (c, x) in col.iter_mut().zip(&t) {
                        if !x.is_zero() {
                            *c = if neg { c.sub(x) } else { c.add(x) };
                        }
                    }
                }
                col
            })
            .collect()
    }

    /// Matrix of `d: A^n -> A^{n+1}` in the normal-word bases.
    pub fn differential_matrix(&self, n: usize) -> ExactMatrix {
        let cols = self.columns(n);
        ExactMatrix::from_columns(self.field(), self.algebra.dim(n + 1), &cols)
    }

    /// `d(v)` for `v ∈ A^n`.
    pub fn apply(&self, v: &[Scalar], n: usize) -> Vector {
        let cols = self.columns(n);
        let k = self.field();
        let mut out = vec![Scalar::zero(); self.algebra.dim(n + 1)];
        for (c, col) in v.iter().zip(cols.iter()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                if !x.is_zero() {
                    k.mul_add_assign(o, c, x);
                }
            }
        }
        out
    }

    /// Fill all bases and differential matrices through degree `max`.
    pub fn warm_up(&self, max: usize) {
        self.algebra.warm_up(max + 1);
        self.columns(max);
    }

    /// `A ⊗ B` with `d(a ⊗ b) = d(a) ⊗ b + (-1)^{|a|} a ⊗ d(b)`.
    pub fn tensor(&self, other: &DgAlgebra) -> Result<DgAlgebra> {
        let t = self.algebra.tensor_product(&other.algebra)?;
        let shift = self.algebra.ngens() as u16;
        let mut d = self.d_images.clone();
        d.extend(other.d_images.iter().map(|p| p.map_generators(|g| g + shift)));
        DgAlgebra::new(t, d)
    }
}

/// Checks that `d` descends to the quotient, squares to zero on generators, and that
/// the degreewise matrices compose to zero through degree `max`.
pub fn validate_dg(a: &DgAlgebra, max: usize) -> ValidationReport {
    let alg = a.algebra();
    let spec = alg.spec();
    let mut report = ValidationReport::new(max);
    for r in alg.relations() {
        let deg = r.homogeneous_degree(spec).ok().flatten().unwrap_or(0);
        let dr = a.d_free(r);
        let ok = alg.normal_form_at(&dr, deg + 1).map(|v| v.iter().all(Scalar::is_zero)).unwrap_or(false);
        let name = format!("d({}) lies in the ideal", r.display(spec));
        report.push(if ok {
            Check::new(name, true)
        } else {
            Check::with_detail(name, false, format!("d(r) = {}", dr.display(spec)))
        });
    }
    for g in 0..spec.len() {
        let gp = NcPolynomial::generator(g as u16);
        let dd = a.d_free(&a.d_free(&gp));
        let deg = spec.degree_of(g as u16) + 2;
        let ok = alg.normal_form_at(&dd, deg).map(|v| v.iter().all(Scalar::is_zero)).unwrap_or(false);
        report.push(Check::new(format!("d²({}) = 0", spec.names()[g]), ok));
    }
    if !report.passed() {
        report.push(Check::with_detail("d∘d = 0 on degreewise matrices", false, "skipped"));
        return report;
    }
    let mut bad = None;
    for n in 0..max.saturating_sub(1) {
        let c = a.columns(n);
        if c.iter().any(|col| a.apply(col, n + 1).iter().any(|x| !x.is_zero())) {
            bad = Some(n);
            break;
        }
    }
    report.push(match bad {
        None => Check::with_detail("d∘d = 0 on degreewise matrices", true, format!("through degree {max}")),
        Some(n) => Check::with_detail("d∘d = 0 on degreewise matrices", false, format!("fails on A^{n}")),
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialOrder;
    use crate::poly::FreeSpec;

    fn w(v: &[u16]) -> NcPolynomial {
        NcPolynomial::monomial(Scalar::int(1), Word(v.to_vec()))
    }

    fn a_xi() -> PresentedAlgebra {
        let k = NumberField::cyclotomic3();
        let xi = k.generator();
        let al = xi.sub(&Scalar::int(1));
        let r1 = w(&[0, 0, 1]).sub(&w(&[0, 1, 0]).scale(&k, &al)).sub(&w(&[1, 0, 0]).scale(&k, &xi));
        let r2 = w(&[0, 1, 1]).sub(&w(&[1, 0, 1]).scale(&k, &al)).sub(&w(&[1, 1, 0]).scale(&k, &xi));
        let spec = FreeSpec::new([("x", 1), ("y", 1)]).unwrap();
        PresentedAlgebra::new(&k, spec, vec![r1, r2], MonomialOrder::DegLex).unwrap()
    }

    #[test]
    fn a1_is_valid() {
        let a = DgAlgebra::new(a_xi(), vec![w(&[1, 1]), NcPolynomial::zero()]).unwrap();
        let r = validate_dg(&a, 8);
        assert!(r.passed(), "{r:?}");
        assert_eq!(a.differential_matrix(1).rank(), 1);
    }

    #[test]
    fn x_squared_is_invalid() {
        let a = DgAlgebra::new(a_xi(), vec![w(&[0, 0]), NcPolynomial::zero()]).unwrap();
        let r = validate_dg(&a, 6);
        assert!(!r.passed());
        assert!(!r.checks[0].passed);
    }

    #[test]
    fn zero_differential() {
        let a = DgAlgebra::zero(a_xi());
        assert!(validate_dg(&a, 6).passed());
        for n in 0..5 {
            assert!(a.differential_matrix(n).is_zero());
        }
    }

    #[test]
    fn degree_checked_at_construction() {
        assert!(matches!(DgAlgebra::new(a_xi(), vec![w(&[1]), NcPolynomial::zero()]), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn leibniz_free_matches_matrix() {
        let a = DgAlgebra::new(a_xi(), vec![w(&[1, 1]), NcPolynomial::zero()]).unwrap();
        let alg = a.algebra().clone();
        for n in 1..6 {
            for (i, word) in alg.degree_basis(n).into_iter().enumerate() {
                let p = NcPolynomial::monomial(Scalar::int(1), word);
                let via_free = alg.normal_form_at(&a.d_free(&p), n + 1).unwrap();
                let mut e = vec![Scalar::zero(); alg.dim(n)];
                e[i] = Scalar::int(1);
                assert_eq!(via_free, a.apply(&e, n));
            }
        }
    }
}
