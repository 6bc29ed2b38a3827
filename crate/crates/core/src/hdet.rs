use serde::Serialize;

use crate::check::{Check, ValidationReport};
use crate::cohomology::{cohomology, CohomologyAlgebraView};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graded::{GradedAlgebraData, GradedMap};
use crate::invariants::{fixed_subalgebra, induced_on_cohomology, validate_automorphism, AlgebraMorphism, FiniteGroup};
use crate::linalg::{kernel_basis, solve_in_span, SpanSolution, Vector};
use crate::resolution::{coboundary, gorenstein_probe, hom_layout, GorensteinVerdict, Probe, ResolutionData};

/// The scalar by which an automorphism acts on the top `Ext`, with the data
/// backing it. `scalar` is normalised so that a polynomial ring gives the
/// determinant on generators; `inverse` is the other candidate convention.
#[derive(Clone, Debug, PartialEq)]
pub struct HdetResult {
    pub scalar: Scalar,
    pub inverse: Scalar,
    pub d: usize,
    pub l: i64,
    pub certificates: ValidationReport,
}

/// `τ_i(e)` for every generator `e` of `F_i`, `i ≤ upto`.
pub type Lift = Vec<Vec<Vector>>;

fn apply_lift(res: &ResolutionData, tau: &GradedMap, lift: &[Vector], i: usize, v: &[Scalar], j: usize) -> Vector {
    let mut out = vec![Scalar::zero(); res.module_dim(i, j)];
    for (e, blk) in res.layout(i, j).iter().enumerate() {
        let Some((o, n)) = *blk else { continue };
        let b = &v[o..o + n];
        if b.iter().all(Scalar::is_zero) {
            continue;
        }
        let t = res.generator_degrees(i)[e];
        let tb = tau.apply(b, j - t);
        let x = res.left_mul(i, &tb, j - t, &lift[e], t);
        for (a, y) in out.iter_mut().zip(x) {
            a.add_assign(&y);
        }
    }
    out
}

/// A `τ`-linear chain map `F_• → F_•` over `τ` on `F_0 = B`, built degreewise.
/// With `alternative`, each generator's image is shifted by a kernel vector when
/// one exists.
pub fn lift_automorphism(res: &ResolutionData, tau: &GradedMap, upto: usize, alternative: bool) -> Result<Lift> {
    let k = res.algebra().field().clone();
    let mut lift: Lift = vec![vec![vec![k.one()]]];
    for i in 1..=upto.min(res.length()) {
        let mut step = Vec::new();
        for (e, &t) in res.generator_degrees(i).iter().enumerate() {
            let target = apply_lift(res, tau, &lift[i - 1], i - 1, res.image(i, e), t);
            let m = res.map_matrix(i, t);
            let cols: Vec<Vector> = (0..m.cols()).map(|c| m.column(c)).collect();
            let SpanSolution::InSpan(mut x) = solve_in_span(&k, &target, &cols) else {
                return Err(Error::LiftFailure(format!("no preimage for generator {e} of F_{i}")));
            };
            if alternative {
                if let Some(z) = kernel_basis(m).first() {
                    for (a, b) in x.iter_mut().zip(z) {
                        a.add_assign(b);
                    }
                }
            }
            step.push(x);
        }
        lift.push(step);
    }
    Ok(lift)
}

fn lift_certificates(res: &ResolutionData, tau: &GradedMap, lift: &Lift) -> ValidationReport {
    let mut report = ValidationReport::new(res.max_degree());
    for i in 1..lift.len() {
        let ok = res.generator_degrees(i).iter().enumerate().all(|(e, &t)| {
            let lhs = res.map_matrix(i, t).mul_vec(&lift[i][e]);
            lhs == apply_lift(res, tau, &lift[i - 1], i - 1, res.image(i, e), t)
        });
        report.push(Check::new(format!("φ_{i}∘τ_{i} = τ_{}∘φ_{i}", i - 1), ok));
    }
    report
}

/// The scalar of `f ↦ τ^{-1}∘f∘τ_d` on the one-dimensional `Ext^d_{−l}`.
fn top_scalar(res: &ResolutionData, inv: &GradedMap, lift: &Lift, d: usize, l: i64) -> Result<Scalar> {
    let b = res.algebra();
    let k = b.field();
    let q = -l;
    let cocycles = kernel_basis(&coboundary(res, d + 1, q));
    let bounds: Vec<Vector> = if d == 0 {
        Vec::new()
    } else {
        let m = coboundary(res, d, q);
        (0..m.cols()).map(|c| m.column(c)).collect()
    };
    let z = cocycles
        .into_iter()
        .find(|z| matches!(solve_in_span(k, z, &bounds), SpanSolution::NotInSpan))
        .ok_or_else(|| Error::Internal("top Ext has no class".into()))?;
    let (layout, n) = hom_layout(res, d, q);
    let mut w = vec![Scalar::zero(); n];
    for (e, blk) in layout.iter().enumerate() {
        let Some((o, len)) = *blk else { continue };
        let t = res.generator_degrees(d)[e];
        let fdeg = (t as i64 + q) as usize;
        let mut acc = vec![Scalar::zero(); len];
        for (ep, src) in res.layout(d, t).iter().enumerate() {
            let Some((so, sn)) = *src else { continue };
            let Some((fo, fl)) = layout[ep] else { continue };
            let tp = res.generator_degrees(d)[ep];
            b.multiply_into(&mut acc, &lift[d][e][so..so + sn], t - tp, &z[fo..fo + fl], (tp as i64 + q) as usize);
        }
        w[o..o + len].clone_from_slice(&inv.apply(&acc, fdeg));
    }
    let mut gens = bounds;
    gens.push(z);
    match solve_in_span(k, &w, &gens) {
        SpanSolution::InSpan(c) => Ok(c.last().unwrap().clone()),
        SpanSolution::NotInSpan => Err(Error::Internal("top Ext is not preserved".into())),
    }
}

/// `hdet_B(τ)` through the minimal resolution in `probe`.
pub fn hdet_graded(b: &GradedAlgebraData, tau: &GradedMap, probe: &Probe) -> Result<HdetResult> {
    let GorensteinVerdict::ConsistentASGorenstein { d, l } = probe.verdict else {
        return Err(Error::NotGorensteinWindow(probe.verdict.to_string()));
    };
    if !tau.is_automorphism_of(b) {
        return Err(Error::NotAnHAutomorphism("τ does not respect the structure constants".into()));
    }
    let res = &probe.resolution;
    let inv = tau.inverse()?;
    let lift = lift_automorphism(res, tau, d, false)?;
    let mut certificates = lift_certificates(res, tau, &lift);
    let s = top_scalar(res, &inv, &lift, d, l)?;
    let alt = lift_automorphism(res, tau, d, true)?;
    let alt_ok = lift_certificates(res, tau, &alt).passed();
    let s_alt = top_scalar(res, &inv, &alt, d, l)?;
    certificates.push(Check::new("alternative lift gives the same scalar", alt_ok && s_alt == s));
    if s.is_zero() {
        return Err(Error::Internal("homological determinant vanished".into()));
    }
    let inverse = b.field().inv(&s)?;
    Ok(HdetResult { scalar: s, inverse, d, l, certificates })
}

/// Precomputed `H(A)`, its structure constants and its Gorenstein probe.
#[derive(Clone, Debug)]
pub struct HdetContext {
    pub view: CohomologyAlgebraView,
    pub algebra: GradedAlgebraData,
    pub probe: Probe,
}

impl HdetContext {
    /// `H(A)` through degree `max`, probed with resolution length `length`.
    pub fn new(a: &DgAlgebra, max: usize, length: usize) -> Result<Self> {
        let view = cohomology(a, max + 1)?;
        Self::from_view(view, length)
    }

    pub fn from_view(view: CohomologyAlgebraView, length: usize) -> Result<Self> {
        let algebra = GradedAlgebraData::from_cohomology(&view)?;
        let probe = gorenstein_probe(&algebra, length, view.valid_through())?;
        Ok(HdetContext { view, algebra, probe })
    }

    /// `Hdet_A(σ) = hdet_{H(A)}(H(σ))`.
    pub fn hdet(&self, sigma: &AlgebraMorphism) -> Result<HdetResult> {
        let h = induced_on_cohomology(&self.view, sigma)?;
        if !h.is_automorphism_of(&self.algebra) {
            return Err(Error::NotAnHAutomorphism("H(σ) does not respect the product of H(A)".into()));
        }
        hdet_graded(&self.algebra, &h, &self.probe)
    }
}

pub fn hdet_dg(a: &DgAlgebra, sigma: &AlgebraMorphism, max: usize, length: usize) -> Result<HdetResult> {
    HdetContext::new(a, max, length)?.hdet(sigma)
}

/// Diagonal automorphisms `g_i ↦ ζ_i g_i` by roots of unity of the field that are
/// DG automorphisms of `A` with `Hdet = 1`, excluding the identity.
pub fn diagonal_scan(a: &DgAlgebra, ctx: &HdetContext, check_degree: usize) -> Result<Vec<AlgebraMorphism>> {
    let roots: Vec<Scalar> = a.field().roots_of_unity().into_iter().map(|(r, _)| r).collect();
    let n = a.algebra().ngens();
    let mut found = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        if idx.iter().any(|&i| i != 0) {
            let scalars: Vec<Scalar> = idx.iter().map(|&i| roots[i].clone()).collect();
            let sigma = AlgebraMorphism::diagonal(a.algebra(), &scalars)?;
            if validate_automorphism(a, &sigma, check_degree).passed() && ctx.hdet(&sigma)?.scalar.is_one() {
                found.push(sigma);
            }
        }
        let mut p = 0;
        while p < n {
            idx[p] += 1;
            if idx[p] < roots.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == n {
            break;
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremDReport {
    pub hdets: Vec<String>,
    pub multiplicative: bool,
    pub applies: bool,
    pub verdict: String,
    pub fixed_probe: Option<GorensteinVerdict>,
    pub fixed_dims: Vec<usize>,
}

impl TheoremDReport {
    pub fn passed(&self) -> bool {
        self.applies && self.multiplicative && self.fixed_probe.as_ref().is_some_and(GorensteinVerdict::is_consistent)
    }
}

/// Hdet of every element of `G`; when all are 1, probes `H(A^G)` as corroboration.
pub fn theorem_d_check(a: &DgAlgebra, g: &FiniteGroup, max: usize, length: usize) -> Result<TheoremDReport> {
    let ctx = HdetContext::new(a, max, length)?;
    let values: Vec<Scalar> = g.elements().iter().map(|s| ctx.hdet(s).map(|r| r.scalar)).collect::<Result<_>>()?;
    let k = a.field();
    let multiplicative =
        (0..g.order()).all(|i| (0..g.order()).all(|j| values[g.product(i, j)] == k.mul(&values[i], &values[j])));
    let applies = values.iter().all(Scalar::is_one);
    let hdets = values.iter().map(|v| k.display(v).to_string()).collect();
    if !applies {
        return Ok(TheoremDReport {
            hdets,
            multiplicative,
            applies,
            verdict: "hypothesis fails: some Hdet differs from 1, no claim made".into(),
            fixed_probe: None,
            fixed_dims: Vec::new(),
        });
    }
    let fixed = fixed_subalgebra(a, g, max + 1)?;
    let hg = GradedAlgebraData::from_cohomology(fixed.cohomology())?;
    let fixed_probe = match gorenstein_probe(&hg, length, max) {
        Ok(p) => p.verdict,
        Err(e @ Error::WindowExhausted(_)) => GorensteinVerdict::Inconclusive { reason: e.to_string() },
        Err(e) => return Err(e),
    };
    Ok(TheoremDReport {
        hdets,
        multiplicative,
        applies,
        verdict: "trivial homological determinant: A^G is Gorenstein".into(),
        fixed_probe: Some(fixed_probe),
        fixed_dims: fixed.cohomology().dims().to_vec(),
    })
}

/// `τ` as a graded map on `B`, from a morphism of a zero-differential algebra.
pub fn graded_map_of(a: &DgAlgebra, sigma: &AlgebraMorphism, max: usize) -> GradedMap {
    GradedMap { matrices: sigma.matrices(a.algebra(), max) }
}
