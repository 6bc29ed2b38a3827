use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::PresentedAlgebra;
use crate::check::{Check, ValidationReport};
use crate::cohomology::{cohomology, cohomology_of_subcomplex, CohomologyAlgebraView};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::graded::GradedMap;
use crate::linalg::{ExactMatrix, Subspace, Vector};
use crate::poly::{NcPolynomial, Word};

/// A degree-preserving algebra endomorphism given by the images of the generators.
/// Images are kept in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism {
    images: Vec<NcPolynomial>,
}

impl AlgebraMorphism {
    pub fn new(a: &PresentedAlgebra, images: Vec<NcPolynomial>) -> Result<Self> {
        let spec = a.spec();
        if images.len() != spec.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} generator images for {} generators",
                images.len(),
                spec.len()
            )));
        }
        let mut normal = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            let deg = spec.degree_of(g as u16);
            if img.homogeneous_degree(spec)?.is_some_and(|d| d != deg) {
                return Err(Error::DegreeMismatch(format!("image of {} must have degree {deg}", spec.names()[g])));
            }
            normal.push(a.to_polynomial(&a.normal_form_at(img, deg)?, deg));
        }
        Ok(AlgebraMorphism { images: normal })
    }

    pub fn identity(a: &PresentedAlgebra) -> Self {
        AlgebraMorphism { images: (0..a.ngens() as u16).map(NcPolynomial::generator).collect() }
    }

    /// `g_i ↦ s_i g_i`.
    pub fn diagonal(a: &PresentedAlgebra, scalars: &[Scalar]) -> Result<Self> {
        let images = scalars
            .iter()
            .enumerate()
            .map(|(g, s)| NcPolynomial::monomial(s.clone(), Word::letter(g as u16)))
            .collect();
        AlgebraMorphism::new(a, images)
    }

    pub fn images(&self) -> &[NcPolynomial] {
        &self.images
    }

    /// `σ(p)` in the free algebra.
    pub fn substitute(&self, field: &NumberField, p: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (w, c) in p.terms() {
            let mut t = NcPolynomial::constant(c.clone());
            for &g in &w.0 {
                t = t.mul(field, &self.images[g as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, a: &PresentedAlgebra, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let images = other.images.iter().map(|p| self.substitute(a.field(), p)).collect();
        AlgebraMorphism::new(a, images)
    }

    /// Matrices on `A^0, …, A^max` in the normal-word bases.
    pub fn matrices(&self, a: &PresentedAlgebra, max: usize) -> Vec<ExactMatrix> {
        a.warm_up(max);
        let k = a.field();
        let spec = a.spec();
        let mut cols: Vec<Vec<Vector>> = vec![vec![a.unit()]];
        for n in 1..=max {
            let c = (0..a.dim(n))
                .map(|i| {
                    let (pidx, g) = a.split_last(n, i);
                    let gd = spec.degree_of(g);
                    a.right_mul_poly(&cols[n - gd][pidx], n - gd, &self.images[g as usize], gd)
                })
                .collect();
            cols.push(c);
        }
        cols.iter().enumerate().map(|(n, c)| ExactMatrix::from_columns(k, a.dim(n), c)).collect()
    }
}

/// Relations preserved, `σ∘d = d∘σ` on generators, and bijective on `A^n` for `n ≤ max`.
pub fn validate_automorphism(a: &DgAlgebra, sigma: &AlgebraMorphism, max: usize) -> ValidationReport {
    let alg = a.algebra();
    let spec = alg.spec();
    let k = a.field();
    let mut report = ValidationReport::new(max);
    alg.warm_up(max.max(spec.degrees().iter().copied().max().unwrap_or(0) + 1));
    let mut rel_fail = Vec::new();
    for (r, rel) in alg.relations().iter().enumerate() {
        let deg = rel.homogeneous_degree(spec).ok().flatten().unwrap_or(0);
        match alg.normal_form_at(&sigma.substitute(k, rel), deg) {
            Ok(v) if v.iter().all(Scalar::is_zero) => {}
            _ => rel_fail.push(r),
        }
    }
    report.push(if rel_fail.is_empty() {
        Check::new("relations preserved", true)
    } else {
        Check::with_detail("relations preserved", false, format!("relations {rel_fail:?} not mapped into the ideal"))
    });
    let mut chain_fail = Vec::new();
    for g in 0..spec.len() {
        let deg = spec.degree_of(g as u16) + 1;
        let lhs = sigma.substitute(k, &a.d_images()[g]);
        let rhs = a.d_free(&sigma.images[g]);
        match alg.normal_form_at(&lhs.sub(&rhs), deg) {
            Ok(v) if v.iter().all(Scalar::is_zero) => {}
            _ => chain_fail.push(spec.names()[g].clone()),
        }
    }
    report.push(if chain_fail.is_empty() {
        Check::new("chain map", true)
    } else {
        Check::with_detail("chain map", false, format!("σ∘d ≠ d∘σ on {}", chain_fail.join(", ")))
    });
    let bad: Vec<usize> =
        sigma.matrices(alg, max).iter().enumerate().filter(|(_, m)| !m.is_invertible()).map(|(n, _)| n).collect();
    report.push(if bad.is_empty() {
        Check::new("invertible", true)
    } else {
        Check::with_detail("invertible", false, format!("singular in degrees {bad:?}"))
    });
    report
}

/// A finite group of automorphisms closed under composition.
/// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<AlgebraMorphism>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AlgebraMorphism] {
        &self.elements
    }

    /// The identity is always element 0.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Degreewise matrices of every element on `A^0..=A^max`.
    pub fn matrices(&self, a: &PresentedAlgebra, max: usize) -> Vec<Vec<ExactMatrix>> {
        self.elements.iter().map(|g| g.matrices(a, max)).collect()
    }
}

pub const DEFAULT_GROUP_BOUND: usize = 64;

/// The subgroup generated by `generators`, deduplicated by generator images.
pub fn group_closure(a: &DgAlgebra, generators: &[AlgebraMorphism], bound: usize) -> Result<FiniteGroup> {
    let alg = a.algebra();
    let id = AlgebraMorphism::identity(alg);
    let mut elements = vec![id];
    let mut index: HashMap<Vec<NcPolynomial>, usize> = HashMap::new();
    index.insert(elements[0].images.clone(), 0);
    let gens: Vec<AlgebraMorphism> =
        generators.iter().map(|g| AlgebraMorphism::new(alg, g.images.clone())).collect::<Result<_>>()?;
    let mut next = 0;
    while next < elements.len() {
        for s in &gens {
            let h = s.compose(alg, &elements[next])?;
            if !index.contains_key(&h.images) {
                if elements.len() == bound {
                    return Err(Error::OrderBoundExceeded(bound));
                }
                index.insert(h.images.clone(), elements.len());
                elements.push(h);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let h = elements[i].compose(alg, &elements[j])?;
            table[i][j] = *index.get(&h.images).ok_or_else(|| Error::Internal("group closure not closed".into()))?;
        }
    }
    let inverses = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| table[i][j] == 0 && table[j][i] == 0)
                .ok_or_else(|| Error::Internal("group element without inverse".into()))
        })
        .collect::<Result<_>>()?;
    Ok(FiniteGroup { elements, table, inverses })
}

/// `|G|^{-1} Σ_g M_g` on `A^n`.
pub fn reynolds_projector(a: &PresentedAlgebra, g: &FiniteGroup, n: usize) -> ExactMatrix {
    let mats: Vec<ExactMatrix> = g.elements.iter().map(|s| s.matrices(a, n).pop().unwrap()).collect();
    average(a.field(), a.dim(n), &mats)
}

fn average(k: &NumberField, dim: usize, mats: &[ExactMatrix]) -> ExactMatrix {
    let mut sum = ExactMatrix::zeros(k, dim, dim);
    for m in mats {
        sum = sum.add(m);
    }
    sum.scale(&Scalar::rational(1, mats.len() as i64))
}

/// `A^G` degreewise, with its cohomology.
#[derive(Clone, Debug)]
pub struct FixedSubalgebraView {
    projectors: Vec<ExactMatrix>,
    cohomology: CohomologyAlgebraView,
}

impl FixedSubalgebraView {
    pub fn projector(&self, n: usize) -> &ExactMatrix {
        &self.projectors[n]
    }

    /// Dimensions of `(A^G)^n` for `n ≤ max`.
    pub fn dims(&self) -> Vec<usize> {
        (0..self.projectors.len()).map(|n| self.cohomology.subspace(n).dim()).collect()
    }

    pub fn subspace(&self, n: usize) -> &Subspace {
        self.cohomology.subspace(n)
    }

    /// `H(A^G)`, valid through `max − 1`.
    pub fn cohomology(&self) -> &CohomologyAlgebraView {
        &self.cohomology
    }
}

pub fn fixed_subalgebra(a: &DgAlgebra, g: &FiniteGroup, max: usize) -> Result<FixedSubalgebraView> {
    a.warm_up(max);
    let alg = a.algebra();
    let k = a.field();
    let mats = g.matrices(alg, max);
    let projectors: Vec<ExactMatrix> =
        (0..=max).map(|n| average(k, alg.dim(n), &mats.iter().map(|m| m[n].clone()).collect::<Vec<_>>())).collect();
    let subspaces = projectors
        .iter()
        .enumerate()
        .map(|(n, p)| Subspace::spanned_by(k, alg.dim(n), &(0..p.cols()).map(|c| p.column(c)).collect::<Vec<_>>()))
        .collect();
    let cohomology = cohomology_of_subcomplex(a, subspaces, max)?;
    Ok(FixedSubalgebraView { projectors, cohomology })
}

/// `H(σ)` on `H^0..=H^{valid_through}` in the view's cohomology basis.
pub fn induced_on_cohomology(view: &CohomologyAlgebraView, sigma: &AlgebraMorphism) -> Result<GradedMap> {
    let a = view.dg().algebra();
    let max = view.valid_through();
    let mats = sigma.matrices(a, max);
    induced_from_matrices(view, &mats)
}

fn induced_from_matrices(view: &CohomologyAlgebraView, mats: &[ExactMatrix]) -> Result<GradedMap> {
    let k = view.field();
    let mut out = Vec::with_capacity(view.valid_through() + 1);
    for n in 0..=view.valid_through() {
        let cols = view
            .representatives(n)
            .iter()
            .map(|r| view.class_of(&mats[n].mul_vec(r), n))
            .collect::<Result<Vec<_>>>()?;
        out.push(ExactMatrix::from_columns(k, view.dim(n), &cols));
    }
    Ok(GradedMap { matrices: out })
}

/// `H(g)` for every element of `G`, in group order.
pub fn induced_group_on_h(view: &CohomologyAlgebraView, g: &FiniteGroup) -> Result<Vec<GradedMap>> {
    let a = view.dg().algebra();
    g.matrices(a, view.valid_through()).iter().map(|m| induced_from_matrices(view, m)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PropEqualRow {
    pub degree: usize,
    pub fixed_cohomology: usize,
    pub cohomology_fixed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropEqualReport {
    pub rows: Vec<PropEqualRow>,
    pub group_laws: bool,
    pub passed: bool,
}

/// Compares `dim H^n(A^G)` with `dim H^n(A)^{H(G)}` for `n ≤ max − 1`.
pub fn verify_prop_equal(a: &DgAlgebra, g: &FiniteGroup, max: usize) -> Result<PropEqualReport> {
    let fixed = fixed_subalgebra(a, g, max)?;
    let view = cohomology(a, max)?;
    let hg = induced_group_on_h(&view, g)?;
    let mut group_laws = true;
    for i in 0..g.order() {
        for j in 0..g.order() {
            if hg[i].compose(&hg[j]) != hg[g.product(i, j)] {
                group_laws = false;
            }
        }
    }
    let k = a.field();
    let rows: Vec<PropEqualRow> = (0..=view.valid_through())
        .map(|n| {
            let d = view.dim(n);
            let id = ExactMatrix::identity(k, d);
            let stacked = hg.iter().fold(ExactMatrix::zeros(k, 0, d), |acc, h| acc.vstack(&h.matrices[n].sub(&id)));
            PropEqualRow {
                degree: n,
                fixed_cohomology: fixed.cohomology().dim(n),
                cohomology_fixed: d - stacked.rank(),
            }
        })
        .collect();
    let passed = group_laws && rows.iter().all(|r| r.fixed_cohomology == r.cohomology_fixed);
    Ok(PropEqualReport { rows, group_laws, passed })
}

/// `P² = P`, `P·M_g = M_g·P = P`, `d·P = P·d`, and `M_{gh} = M_g·M_h` through degree `max`.
pub fn check_representation(a: &DgAlgebra, g: &FiniteGroup, max: usize) -> ValidationReport {
    a.warm_up(max);
    let alg = a.algebra();
    let k = a.field();
    let mats = g.matrices(alg, max + 1);
    let projectors: Vec<ExactMatrix> =
        (0..=max + 1).map(|n| average(k, alg.dim(n), &mats.iter().map(|m| m[n].clone()).collect::<Vec<_>>())).collect();
    let mut report = ValidationReport::new(max);
    let fail_degrees = |f: &dyn Fn(usize) -> bool| -> Vec<usize> { (0..=max).filter(|&n| !f(n)).collect() };
    let mut push = |name: &str, bad: Vec<usize>| {
        report.push(if bad.is_empty() {
            Check::new(name, true)
        } else {
            Check::with_detail(name, false, format!("fails in degrees {bad:?}"))
        })
    };
    push("P² = P", fail_degrees(&|n| projectors[n].mul(&projectors[n]) == projectors[n]));
    push(
        "P·M_g = M_g·P = P",
        fail_degrees(&|n| {
            mats.iter().all(|m| projectors[n].mul(&m[n]) == projectors[n] && m[n].mul(&projectors[n]) == projectors[n])
        }),
    );
    push(
        "d·P = P·d",
        fail_degrees(&|n| {
            let d = a.differential_matrix(n);
            d.mul(&projectors[n]) == projectors[n + 1].mul(&d)
        }),
    );
    push(
        "M_gh = M_g·M_h",
        fail_degrees(&|n| {
            (0..g.order()).all(|i| (0..g.order()).all(|j| mats[g.product(i, j)][n] == mats[i][n].mul(&mats[j][n])))
        }),
    );
    report
}
