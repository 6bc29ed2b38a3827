use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cochain::cohomology::cohomology;
use cochain::description::{
    parse_description_with_field, parse_preset_expression, AlgebraDescription, Preset, Session,
};
use cochain::dg::validate_dg;
use cochain::error::Error;
use cochain::families::crisscross_check;
use cochain::graded::GradedAlgebraData;
use cochain::hdet::{diagonal_scan, theorem_d_check, HdetContext};
use cochain::invariants::{fixed_subalgebra, group_closure, verify_prop_equal, AlgebraMorphism, FiniteGroup};
use cochain::resolution::{gorenstein_probe, GorensteinVerdict};

fn err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. }
        | Error::UnknownGenerator(_)
        | Error::UnknownPreset(_)
        | Error::DegreeMismatch(_)
        | Error::FieldError(_)
        | Error::InvalidMorphism(_)
        | Error::CaseMismatch(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Outcome of a Gorenstein probe.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Verdict {
    /// `"consistent"`, `"refuted"` or `"inconclusive"`.
    kind: String,
    d: Option<usize>,
    l: Option<i64>,
    detail: String,
}

#[pymethods]
impl Verdict {
    fn is_consistent(&self) -> bool {
        self.kind == "consistent"
    }

    fn __repr__(&self) -> String {
        format!("Verdict({})", self.detail)
    }
}

impl From<&GorensteinVerdict> for Verdict {
    fn from(v: &GorensteinVerdict) -> Self {
        let detail = v.to_string();
        match v {
            GorensteinVerdict::ConsistentASGorenstein { d, l } => {
                Verdict { kind: "consistent".into(), d: Some(*d), l: Some(*l), detail }
            }
            GorensteinVerdict::Refuted { .. } => Verdict { kind: "refuted".into(), d: None, l: None, detail },
            GorensteinVerdict::Inconclusive { .. } => Verdict { kind: "inconclusive".into(), d: None, l: None, detail },
        }
    }
}

/// A DG algebra read from the text format, with its `[group]` morphisms.
#[pyclass(frozen)]
struct Algebra {
    desc: AlgebraDescription,
    session: Session,
}

impl Algebra {
    fn from_desc(desc: AlgebraDescription) -> PyResult<Self> {
        let session = desc.build().map_err(err)?;
        Ok(Algebra { desc, session })
    }

    fn group(&self, bound: usize) -> PyResult<FiniteGroup> {
        let gens: Vec<AlgebraMorphism> = self.session.group.iter().map(|(_, m)| m.clone()).collect();
        group_closure(&self.session.dg, &gens, bound).map_err(err)
    }

    fn morphism(&self, name: Option<&str>) -> PyResult<AlgebraMorphism> {
        match name {
            None => Ok(AlgebraMorphism::identity(self.session.dg.algebra())),
            Some(n) => self
                .session
                .group
                .iter()
                .find(|(g, _)| g == n)
                .map(|(_, m)| m.clone())
                .ok_or_else(|| PyValueError::new_err(format!("no morphism named `{n}`"))),
        }
    }
}

#[pymethods]
impl Algebra {
    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn parse(text: &str, field: Option<&str>) -> PyResult<Self> {
        Self::from_desc(parse_description_with_field(text, field).map_err(err)?)
    }

    /// `A1`, `A2`, `A3`, `down-up(α, β)` or `dg-free(n, ...)`.
    #[staticmethod]
    #[pyo3(signature = (name, field=None))]
    fn preset(name: &str, field: Option<&str>) -> PyResult<Self> {
        Self::parse(&format!("algebra = \"{name}\"\n"), field)
    }

    fn to_text(&self) -> String {
        self.desc.serialize()
    }

    fn generators(&self) -> Vec<String> {
        self.session.dg.algebra().spec().names().to_vec()
    }

    fn group_names(&self) -> Vec<String> {
        self.session.group.iter().map(|(n, _)| n.clone()).collect()
    }

    /// `(name, passed, detail)` for each Leibniz, ideal and `d² = 0` check.
    fn validate(&self, max_degree: usize) -> Vec<(String, bool, Option<String>)> {
        validate_dg(&self.session.dg, max_degree).checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect()
    }

    fn hilbert(&self, max_degree: usize) -> Vec<usize> {
        self.session.dg.algebra().hilbert(max_degree).0
    }

    /// `dim H^n(A)` for `n ≤ max_degree`.
    fn cohomology_dims(&self, py: Python<'_>, max_degree: usize) -> PyResult<Vec<usize>> {
        let dg = &self.session.dg;
        py.detach(|| cohomology(dg, max_degree + 1).map(|v| v.dims().to_vec())).map_err(err)
    }

    #[pyo3(signature = (max_degree=12, length=4))]
    fn gorenstein_probe(&self, py: Python<'_>, max_degree: usize, length: usize) -> PyResult<Verdict> {
        let dg = &self.session.dg;
        py.detach(|| {
            let view = cohomology(dg, max_degree + 1)?;
            let b = GradedAlgebraData::from_cohomology(&view)?;
            gorenstein_probe(&b, length, max_degree).map(|p| Verdict::from(&p.verdict))
        })
        .map_err(err)
    }

    /// Homological determinant of the named `[group]` morphism, or of the identity.
    #[pyo3(signature = (name=None, max_degree=12, length=4))]
    fn hdet(&self, py: Python<'_>, name: Option<&str>, max_degree: usize, length: usize) -> PyResult<String> {
        let sigma = self.morphism(name)?;
        let dg = &self.session.dg;
        py.detach(|| {
            let ctx = HdetContext::new(dg, max_degree, length)?;
            let r = ctx.hdet(&sigma)?;
            Ok(dg.field().display(&r.scalar).to_string())
        })
        .map_err(err)
    }

    /// Order of the group generated by the `[group]` morphisms.
    #[pyo3(signature = (bound=64))]
    fn group_order(&self, bound: usize) -> PyResult<usize> {
        Ok(self.group(bound)?.order())
    }

    /// `dim H^n(A^G)` for `n ≤ max_degree`.
    #[pyo3(signature = (max_degree, bound=64))]
    fn fixed_cohomology_dims(&self, py: Python<'_>, max_degree: usize, bound: usize) -> PyResult<Vec<usize>> {
        let g = self.group(bound)?;
        let dg = &self.session.dg;
        py.detach(|| fixed_subalgebra(dg, &g, max_degree + 1).map(|f| f.cohomology().dims().to_vec())).map_err(err)
    }

    /// Whether `dim H^n(A^G) = dim H^n(A)^{H(G)}` for every `n ≤ max_degree`.
    #[pyo3(signature = (max_degree, bound=64))]
    fn verify_prop_equal(&self, py: Python<'_>, max_degree: usize, bound: usize) -> PyResult<bool> {
        let g = self.group(bound)?;
        let dg = &self.session.dg;
        py.detach(|| verify_prop_equal(dg, &g, max_degree + 1).map(|r| r.passed)).map_err(err)
    }

    /// Hdet of every group element and the probe on `H(A^G)` when all are 1.
    /// With `scan`, the group comes from diagonal automorphisms with Hdet = 1.
    #[pyo3(signature = (max_degree=12, length=4, scan=false, bound=64))]
    fn theorem_d(
        &self,
        py: Python<'_>,
        max_degree: usize,
        length: usize,
        scan: bool,
        bound: usize,
    ) -> PyResult<(Vec<String>, bool, Option<Verdict>)> {
        let dg = &self.session.dg;
        let listed: Vec<AlgebraMorphism> = self.session.group.iter().map(|(_, m)| m.clone()).collect();
        py.detach(|| {
            let gens = if scan {
                let ctx = HdetContext::new(dg, max_degree, length)?;
                diagonal_scan(dg, &ctx, max_degree.min(6))?
            } else {
                listed
            };
            let g = group_closure(dg, &gens, bound)?;
            let r = theorem_d_check(dg, &g, max_degree, length)?;
            Ok((r.hdets, r.applies, r.fixed_probe.as_ref().map(Verdict::from)))
        })
        .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Algebra(generators={:?})", self.generators())
    }
}

type Witness = (usize, usize, usize, usize);

/// Whether `d(x_i) = Σ M^i_{pq} x_p x_q` squares to zero, by the crisscross identity.
/// Entries are strings such as `"1/2"` or `"t + 1"`; returns the first witness on failure.
#[pyfunction]
#[pyo3(signature = (matrices, field=None))]
fn crisscross(matrices: Vec<Vec<Vec<String>>>, field: Option<&str>) -> PyResult<(bool, Option<Witness>)> {
    let k = match field {
        Some(f) => Some(parse_description_with_field("generators = \"x\"\n", Some(f)).map_err(err)?.field),
        None => None,
    };
    let rows = |m: &Vec<Vec<String>>| {
        let r: Vec<String> = m.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        format!("[{}]", r.join(", "))
    };
    let body: Vec<String> = matrices.iter().map(rows).collect();
    let expr = format!("dg-free({}, {})", matrices.len(), body.join(", "));
    let Preset::DgFree(t) = parse_preset_expression(&expr, k.as_ref()).map_err(err)? else { unreachable!() };
    let v = crisscross_check(&t);
    Ok((v.holds, v.witness))
}

#[pymodule]
fn pycochain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(crisscross, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
