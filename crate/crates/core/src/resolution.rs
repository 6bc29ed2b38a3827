use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graded::{unit, GradedAlgebraData};
use crate::linalg::{kernel_basis, EchelonSpace, ExactMatrix, Vector};

/// A minimal graded free resolution `F_0 ← F_1 ← … ← F_len` of the trivial left
/// module `k`, computed through internal degree `max_degree`.
///
/// An element of `F_i` in internal degree `j` is stored as the concatenation, over
/// the generators `e` of `F_i` with `t_e ≤ j`, of its coefficient in `B_{j − t_e}`.
#[derive(Debug)]
pub struct ResolutionData {
    algebra: GradedAlgebraData,
    max_degree: usize,
    generators: Vec<Vec<usize>>,
    images: Vec<Vec<Vector>>,
    matrices: Vec<Vec<OnceLock<ExactMatrix>>>,
}

impl Clone for ResolutionData {
    fn clone(&self) -> Self {
        ResolutionData {
            algebra: self.algebra.clone(),
            max_degree: self.max_degree,
            generators: self.generators.clone(),
            images: self.images.clone(),
            matrices: self.matrices.iter().map(|v| v.iter().map(|_| OnceLock::new()).collect()).collect(),
        }
    }
}

pub fn minimal_resolution(b: &GradedAlgebraData, length: usize, max: usize) -> Result<ResolutionData> {
    if max > b.max_degree() {
        return Err(Error::WindowExhausted(format!(
            "internal degree {max} exceeds the algebra data (known through {})",
            b.max_degree()
        )));
    }
    if length > max {
        return Err(Error::WindowExhausted(format!("generators of F_{length} live in degrees ≥ {length} > {max}")));
    }
    let mut res = ResolutionData {
        algebra: b.clone(),
        max_degree: max,
        generators: vec![vec![0]],
        images: vec![Vec::new()],
        matrices: vec![empty_cache(max)],
    };
    let k = b.field().clone();
    for i in 0..length {
        let mut gens = Vec::new();
        let mut imgs: Vec<Vector> = Vec::new();
        for j in 0..=max {
            let kernel: Vec<Vector> = if i == 0 {
                if j == 0 {
                    Vec::new()
                } else {
                    (0..b.dim(j)).map(|n| unit(&k.one(), b.dim(j), n)).collect()
                }
            } else {
                kernel_basis(res.map_matrix(i, j))
            };
            if kernel.is_empty() {
                continue;
            }
            let size = res.module_dim(i, j);
            let mut space = EchelonSpace::new(&k, size);
            for (&t, g) in gens.iter().zip(&imgs) {
                for beta in 0..b.dim(j - t) {
                    let e = unit(&k.one(), b.dim(j - t), beta);
                    space.insert(&res.left_mul(i, &e, j - t, g, t));
                }
            }
            for v in kernel.iter() {
                if space.insert(v) {
                    if !res.in_augmentation_part(i, v, j) {
                        return Err(Error::Internal(format!("kernel element of F_{i} outside m·F_{i}")));
                    }
                    gens.push(j);
                    imgs.push(v.clone());
                }
            }
            if space.rank() != kernel.len() {
                return Err(Error::Internal(format!("exactness failed at F_{i}, degree {j}")));
            }
        }
        res.generators.push(gens);
        res.images.push(imgs);
        res.matrices.push(empty_cache(max));
    }
    Ok(res)
}

fn empty_cache(max: usize) -> Vec<OnceLock<ExactMatrix>> {
    (0..=max).map(|_| OnceLock::new()).collect()
}

impl ResolutionData {
    pub fn algebra(&self) -> &GradedAlgebraData {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Index of the last computed module.
    pub fn length(&self) -> usize {
        self.generators.len() - 1
    }

    /// Internal degrees of the generators of `F_i`, nondecreasing.
    pub fn generator_degrees(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    /// `φ_i(e)` for the `e`-th generator of `F_i`, as an element of `F_{i−1}`.
    pub fn image(&self, i: usize, e: usize) -> &Vector {
        &self.images[i][e]
    }

    /// `(offset, size)` of each generator's block in internal degree `j`; `None` when `t_e > j`.
    pub fn layout(&self, i: usize, j: usize) -> Vec<Option<(usize, usize)>> {
        let mut off = 0;
        self.generators[i]
            .iter()
            .map(|&t| {
                if t > j {
                    None
                } else {
                    let n = self.algebra.dim(j - t);
                    let r = Some((off, n));
                    off += n;
                    r
                }
            })
            .collect()
    }

    pub fn module_dim(&self, i: usize, j: usize) -> usize {
        self.generators[i].iter().filter(|&&t| t <= j).map(|&t| self.algebra.dim(j - t)).sum()
    }

    /// `b · m` for `b ∈ B_p` and `m ∈ (F_i)_j`.
    pub fn left_mul(&self, i: usize, b: &[Scalar], p: usize, m: &[Scalar], j: usize) -> Vector {
        let src = self.layout(i, j);
        let dst = self.layout(i, j + p);
        let mut out = vec![Scalar::zero(); self.module_dim(i, j + p)];
        for (e, s) in src.iter().enumerate() {
            let Some((so, sn)) = *s else { continue };
            let (dof, dn) = dst[e].expect("block exists in higher degree");
            let t = self.generators[i][e];
            self.algebra.multiply_into(&mut out[dof..dof + dn], b, p, &m[so..so + sn], j - t);
        }
        out
    }

    fn in_augmentation_part(&self, i: usize, v: &[Scalar], j: usize) -> bool {
        self.layout(i, j)
            .iter()
            .zip(&self.generators[i])
            .all(|(l, &t)| t != j || l.is_none_or(|(o, n)| v[o..o + n].iter().all(Scalar::is_zero)))
    }

    /// Matrix of `φ_i: (F_i)_j → (F_{i−1})_j`, for `i ≥ 1`.
    pub fn map_matrix(&self, i: usize, j: usize) -> &ExactMatrix {
        self.matrices[i][j].get_or_init(|| {
            let k = self.algebra.field();
            let mut cols = Vec::new();
            for (e, &t) in self.generators[i].iter().enumerate() {
                if t > j {
                    continue;
                }
                let n = self.algebra.dim(j - t);
                for beta in 0..n {
                    let b = unit(&k.one(), n, beta);
                    cols.push(self.left_mul(i - 1, &b, j - t, &self.images[i][e], t));
                }
            }
            ExactMatrix::from_columns(k, self.module_dim(i - 1, j), &cols)
        })
    }

    /// Composite of consecutive maps vanishes, every map is minimal, and the
    /// sequence is exact at every computed spot and degree.
    pub fn verify(&self) -> bool {
        for i in 1..=self.length() {
            for (&t, img) in self.generators[i].iter().zip(&self.images[i]) {
                if !self.in_augmentation_part(i - 1, img, t) {
                    return false;
                }
            }
            for j in 0..=self.max_degree {
                let m = self.map_matrix(i, j);
                let ker = if i == 1 {
                    self.module_dim(0, j) - usize::from(j == 0)
                } else {
                    let prev = self.map_matrix(i - 1, j);
                    if !prev.mul(m).is_zero() {
                        return false;
                    }
                    prev.cols() - prev.rank()
                };
                if i == 1 && j == 0 && m.cols() != 0 {
                    return false;
                }
                if m.rank() != ker {
                    return false;
                }
            }
        }
        true
    }
}

/// One graded piece `Ext^i(k, B)_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub i: usize,
    pub q: i64,
    pub dim: usize,
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub length: usize,
    pub max_degree: usize,
    pub entries: Vec<ExtEntry>,
}

impl ExtTable {
    pub fn get(&self, i: usize, q: i64) -> Option<&ExtEntry> {
        self.entries.iter().find(|e| e.i == i && e.q == q)
    }

    /// Nonzero trusted entries.
    pub fn support(&self) -> impl Iterator<Item = &ExtEntry> {
        self.entries.iter().filter(|e| e.trusted && e.dim > 0)
    }
}

/// Layout of `Hom^q(F_i, B) = ⊕_e B_{t_e + q}`: `(offset, size)` per generator.
pub(crate) fn hom_layout(res: &ResolutionData, i: usize, q: i64) -> (Vec<Option<(usize, usize)>>, usize) {
    let b = res.algebra();
    let mut off = 0;
    let l = res.generators[i]
        .iter()
        .map(|&t| {
            let deg = t as i64 + q;
            if deg < 0 || deg as usize > b.max_degree() {
                None
            } else {
                let n = b.dim(deg as usize);
                let r = Some((off, n));
                off += n;
                r
            }
        })
        .collect();
    (l, off)
}

/// Matrix of `δ: Hom^q(F_{i−1}, B) → Hom^q(F_i, B)`, `(δf)(e) = Σ_{e'} c_{ee'} f(e')`.
pub(crate) fn coboundary(res: &ResolutionData, i: usize, q: i64) -> ExactMatrix {
    let b = res.algebra();
    let k = b.field();
    let (src, sn) = hom_layout(res, i - 1, q);
    let (dst, dn) = hom_layout(res, i, q);
    let mut m = ExactMatrix::zeros(k, dn, sn);
    for (e, d) in dst.iter().enumerate() {
        let Some((dof, dlen)) = *d else { continue };
        let t = res.generators[i][e];
        let img = &res.images[i][e];
        let blocks = res.layout(i - 1, t);
        for (ep, s) in src.iter().enumerate() {
            let Some((sof, slen)) = *s else { continue };
            let Some((bo, bn)) = blocks[ep] else { continue };
            let c = &img[bo..bo + bn];
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            let tp = res.generators[i - 1][ep];
            let cdeg = t - tp;
            let fdeg = (tp as i64 + q) as usize;
            for beta in 0..slen {
                let f = unit(&k.one(), slen, beta);
                let prod = b.multiply(c, cdeg, &f, fdeg);
                debug_assert_eq!(prod.len(), dlen);
                for (r, x) in prod.into_iter().enumerate() {
                    if !x.is_zero() {
                        m.set(dof + r, sof + beta, x);
                    }
                }
            }
        }
    }
    m
}

/// A module of the resolution is settled when none of its generators sits in the
/// top window degree; settled modules are taken to have no generators beyond it.
pub fn is_settled(res: &ResolutionData, m: usize) -> bool {
    m <= res.length() && res.generators[m].iter().all(|&t| t < res.max_degree)
}

fn trusted(res: &ResolutionData, i: usize, q: i64) -> bool {
    let d = res.max_degree as i64;
    let lo = i.saturating_sub(1);
    (lo..=i + 1)
        .all(|m| is_settled(res, m) && res.generators[m].iter().all(|&t| t as i64 + q <= d || (t as i64 + q) < 0))
}

/// Degreewise dims of `Ext^i_B(k, B)` for `i ≤ length`, computed from `Hom_B(F_•, B)`.
/// An entry is trusted when `F_{i−1}`, `F_i`, `F_{i+1}` are settled and every
/// generator contributing to it lands within the computed degrees of `B`.
pub fn ext_table(res: &ResolutionData, length: usize) -> Result<ExtTable> {
    if length + 1 > res.length() {
        return Err(Error::WindowExhausted(format!(
            "Ext^{length} needs F_{} but the resolution stops at F_{}",
            length + 1,
            res.length()
        )));
    }
    let d = res.max_degree as i64;
    let top = res.generators.iter().flatten().copied().max().unwrap_or(0) as i64;
    let mut entries = Vec::new();
    for i in 0..=length {
        for q in -top..=d {
            let (_, n) = hom_layout(res, i, q);
            let dim = if n == 0 {
                0
            } else {
                let next = coboundary(res, i + 1, q);
                let z = n - next.rank();
                let b = if i == 0 { 0 } else { coboundary(res, i, q).rank() };
                z - b
            };
            entries.push(ExtEntry { i, q, dim, trusted: trusted(res, i, q) });
        }
    }
    Ok(ExtTable { length, max_degree: res.max_degree, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GorensteinVerdict {
    ConsistentASGorenstein { d: usize, l: i64 },
    Refuted { witness: String },
    Inconclusive { reason: String },
}

impl GorensteinVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, GorensteinVerdict::ConsistentASGorenstein { .. })
    }
}

impl fmt::Display for GorensteinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GorensteinVerdict::ConsistentASGorenstein { d, l } => {
                write!(f, "consistent with AS-Gorenstein (d = {d}, l = {l})")
            }
            GorensteinVerdict::Refuted { witness } => write!(f, "refuted: {witness}"),
            GorensteinVerdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// `Ext^d(k, B)` one-dimensional in internal degree `−l` and every other trusted
/// entry zero gives a consistent verdict; `l` is the negated internal degree.
pub fn gorenstein_verdict(table: &ExtTable) -> GorensteinVerdict {
    let support: Vec<&ExtEntry> = table.support().collect();
    match support.as_slice() {
        [] => GorensteinVerdict::Inconclusive { reason: "no nonzero Ext inside the trusted window".into() },
        [e] if e.dim == 1 => GorensteinVerdict::ConsistentASGorenstein { d: e.i, l: -e.q },
        [e] => GorensteinVerdict::Refuted { witness: format!("dim Ext^{}_{} = {}", e.i, e.q, e.dim) },
        [a, b, ..] => GorensteinVerdict::Refuted {
            witness: format!("Ext^{}_{} and Ext^{}_{} are both nonzero", a.i, a.q, b.i, b.q),
        },
    }
}

/// Result of a probe, with the data it was computed from.
#[derive(Clone, Debug)]
pub struct Probe {
    pub resolution: ResolutionData,
    pub ext: ExtTable,
    pub verdict: GorensteinVerdict,
}

/// Resolves `k` to length `length + 1` within internal degree `max` and inspects
/// `Ext^i(k, B)` for `i ≤ length`.
pub fn gorenstein_probe(b: &GradedAlgebraData, length: usize, max: usize) -> Result<Probe> {
    let resolution = minimal_resolution(b, length + 1, max)?;
    let ext = ext_table(&resolution, length)?;
    let verdict = gorenstein_verdict(&ext);
    Ok(Probe { resolution, ext, verdict })
}
