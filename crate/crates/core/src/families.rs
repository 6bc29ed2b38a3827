use serde::Serialize;

use crate::algebra::{MonomialOrder, PresentedAlgebra};
use crate::check::ValidationReport;
use crate::dg::{validate_dg, DgAlgebra};
use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};
use crate::linalg::ExactMatrix;
use crate::poly::{FreeSpec, NcPolynomial, Word};

/// Which branch of the down-up classification `(α, β)` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DownUpCase {
    /// Only the zero differential.
    A,
    /// `1 + α − β = 0`, `β³ = 1`, `β ≠ 1`.
    B,
    /// `α = 0`, `β = 1`.
    C,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DownUpDifferential {
    Zero,
    /// `d(x) = c y²`, `d(y) = d x²` with `c·d = 0`.
    Monomial {
        c: Scalar,
        d: Scalar,
    },
    /// `d(x) = 2d x² + c(xy + yx) − (c²/d) y²`, `d(y) = −(d²/c) x² + d(xy + yx) + 2c y²`.
    Mixed {
        c: Scalar,
        d: Scalar,
    },
    /// `d(x) = c₁x² + c₂(xy + yx) + c₃y²`, `d(y) = d₁x² + d₂(xy + yx) + d₃y²`.
    General {
        c: [Scalar; 3],
        d: [Scalar; 3],
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DownUpParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub differential: DownUpDifferential,
}

fn word(v: &[u16]) -> NcPolynomial {
    NcPolynomial::monomial(Scalar::int(1), Word(v.to_vec()))
}

fn quad(k: &NumberField, xx: &Scalar, sym: &Scalar, yy: &Scalar) -> NcPolynomial {
    word(&[0, 0]).scale(k, xx).add(&word(&[0, 1]).add(&word(&[1, 0])).scale(k, sym)).add(&word(&[1, 1]).scale(k, yy))
}

pub fn down_up_case(k: &NumberField, alpha: &Scalar, beta: &Scalar) -> DownUpCase {
    let one = k.one();
    if alpha.is_zero() && beta.is_one() {
        return DownUpCase::C;
    }
    if one.add(alpha).sub(beta).is_zero() && k.pow(beta, 3).is_one() && !beta.is_one() {
        return DownUpCase::B;
    }
    DownUpCase::A
}

/// The graded down-up algebra `A(α, β)`.
pub fn down_up_algebra(k: &NumberField, alpha: &Scalar, beta: &Scalar, order: MonomialOrder) -> PresentedAlgebra {
    let r1 = word(&[0, 0, 1]).sub(&word(&[0, 1, 0]).scale(k, alpha)).sub(&word(&[1, 0, 0]).scale(k, beta));
    let r2 = word(&[0, 1, 1]).sub(&word(&[1, 0, 1]).scale(k, alpha)).sub(&word(&[1, 1, 0]).scale(k, beta));
    let spec = FreeSpec::new([("x", 1), ("y", 1)]).expect("valid names");
    PresentedAlgebra::new(k, spec, vec![r1, r2], order).expect("homogeneous cubic relations")
}

/// A DG down-up algebra. The parameters must fit the case of `(α, β)`, and the
/// resulting derivation must pass the generator-level checks of `validate_dg`.
pub fn make_down_up(k: &NumberField, params: &DownUpParams) -> Result<DgAlgebra> {
    let case = down_up_case(k, &params.alpha, &params.beta);
    let zero = Scalar::zero();
    let images = match (&params.differential, case) {
        (DownUpDifferential::Zero, _) => vec![NcPolynomial::zero(), NcPolynomial::zero()],
        (DownUpDifferential::Monomial { c, d }, DownUpCase::B) => {
            if !k.mul(c, d).is_zero() {
                return Err(Error::CaseMismatch("case (b) first family needs c·d = 0".into()));
            }
            vec![quad(k, &zero, &zero, c), quad(k, d, &zero, &zero)]
        }
        (DownUpDifferential::Mixed { c, d }, DownUpCase::B) => {
            if c.is_zero() || d.is_zero() {
                return Err(Error::CaseMismatch("case (b) second family needs c, d nonzero".into()));
            }
            let c2d = k.div(&k.mul(c, c), d)?;
            let d2c = k.div(&k.mul(d, d), c)?;
            let two = Scalar::int(2);
            vec![quad(k, &k.mul(&two, d), c, &c2d.neg()), quad(k, &d2c.neg(), d, &k.mul(&two, c))]
        }
        (DownUpDifferential::General { c, d }, DownUpCase::C) => {
            vec![quad(k, &c[0], &c[1], &c[2]), quad(k, &d[0], &d[1], &d[2])]
        }
        (diff, case) => {
            let shown = match diff {
                DownUpDifferential::Zero => "zero",
                DownUpDifferential::Monomial { .. } => "case (b) first family",
                DownUpDifferential::Mixed { .. } => "case (b) second family",
                DownUpDifferential::General { .. } => "case (c)",
            };
            return Err(Error::CaseMismatch(format!("{shown} differential on an algebra in case {case:?}")));
        }
    };
    let alg = down_up_algebra(k, &params.alpha, &params.beta, MonomialOrder::DegLex);
    let dg = DgAlgebra::new(alg, images)?;
    let report = validate_dg(&dg, 0);
    if !report.passed() {
        return Err(Error::DgValidationFailed(first_failure(&report)));
    }
    Ok(dg)
}

fn first_failure(r: &ValidationReport) -> String {
    r.failures().next().map(|c| c.name.clone()).unwrap_or_default()
}

/// Parameters of the named presets over `Q(ξ)`, all on `A(ξ − 1, ξ)`.
pub fn preset_params(k: &NumberField, name: &str) -> Result<DownUpParams> {
    let xi = k.generator();
    let alpha = xi.sub(&Scalar::int(1));
    let differential = match name {
        "A1" => DownUpDifferential::Monomial { c: Scalar::int(1), d: Scalar::zero() },
        "A2" => DownUpDifferential::Monomial { c: Scalar::zero(), d: Scalar::int(1) },
        "A3" => DownUpDifferential::Mixed { c: Scalar::int(1), d: Scalar::int(1) },
        _ => return Err(Error::UnknownPreset(name.into())),
    };
    Ok(DownUpParams { alpha, beta: xi, differential })
}

/// `A1`, `A2` or `A3`.
pub fn preset(name: &str) -> Result<DgAlgebra> {
    let k = NumberField::cyclotomic3();
    make_down_up(&k, &preset_params(&k, name)?)
}

/// An `n`-tuple of `n × n` matrices defining `d(x_i) = Σ_{p,q} Mⁱ_{pq} x_p x_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrisscrossTuple {
    pub matrices: Vec<ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrisscrossVerdict {
    pub holds: bool,
    /// `(i, j, row, col)` of the first nonzero entry.
    pub witness: Option<(usize, usize, usize, usize)>,
}

impl CrisscrossTuple {
    pub fn new(matrices: Vec<ExactMatrix>) -> Result<Self> {
        let n = matrices.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty tuple".into()));
        }
        let field = matrices[0].field().clone();
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch(format!("M{} is {}x{}, expected {n}x{n}", i + 1, m.rows(), m.cols())));
            }
            if *m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(CrisscrossTuple { matrices })
    }

    pub fn zero(field: &NumberField, n: usize) -> Self {
        CrisscrossTuple { matrices: vec![ExactMatrix::zeros(field, n, n); n] }
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn field(&self) -> &NumberField {
        self.matrices[0].field()
    }
}

/// Evaluates `Σ_l [c^l_j r^i_l − c^i_l r^l_j] = 0` for all `i, j`, where `c^i_j` is the
/// `j`-th column and `r^i_j` the `j`-th row of `Mⁱ`.
pub fn crisscross_check(t: &CrisscrossTuple) -> CrisscrossVerdict {
    let n = t.n();
    let k = t.field();
    let m = &t.matrices;
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let mut s = Scalar::zero();
                    for l in 0..n {
                        k.mul_add_assign(&mut s, m[l].get(a, j), m[i].get(l, b));
                        s = s.sub(&k.mul(m[i].get(a, l), m[l].get(j, b)));
                    }
                    if !s.is_zero() {
                        return CrisscrossVerdict { holds: false, witness: Some((i, j, a, b)) };
                    }
                }
            }
        }
    }
    CrisscrossVerdict { holds: true, witness: None }
}

/// The free algebra on `x1..xn` in degree 1 with the differential of `t`, unchecked.
pub fn dg_free_unchecked(t: &CrisscrossTuple) -> DgAlgebra {
    let n = t.n();
    let k = t.field();
    let names: Vec<(String, usize)> = (1..=n).map(|i| (format!("x{i}"), 1)).collect();
    let spec = FreeSpec::new(names).expect("valid names");
    let images = t
        .matrices
        .iter()
        .map(|m| {
            let mut p = NcPolynomial::zero();
            for a in 0..n {
                for b in 0..n {
                    p.add_term(Word(vec![a as u16, b as u16]), m.get(a, b));
                }
            }
            p
        })
        .collect();
    let alg = PresentedAlgebra::free(k, spec);
    DgAlgebra::new(alg, images).expect("quadratic images of degree 2")
}

pub fn make_dg_free(t: &CrisscrossTuple) -> Result<DgAlgebra> {
    let v = crisscross_check(t);
    if let Some((i, j, row, col)) = v.witness {
        return Err(Error::NotCrisscross { i: i + 1, j: j + 1, row: row + 1, col: col + 1 });
    }
    Ok(dg_free_unchecked(t))
}
