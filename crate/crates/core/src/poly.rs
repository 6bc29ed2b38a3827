//! Words and noncommutative polynomials over a set of graded generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{NumberField, Scalar};

/// Generators of a free graded algebra together with their (positive) degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeSpec {
    names: Vec<String>,
    degrees: Vec<usize>,
}

impl FreeSpec {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (n, d) in gens {
            let n = n.into();
            if !is_identifier(&n) || n == "t" {
                return Err(Error::InvalidGenerators(format!("`{n}` is not a valid generator name")));
            }
            if names.contains(&n) {
                return Err(Error::InvalidGenerators(format!("duplicate generator `{n}`")));
            }
            if d == 0 {
                return Err(Error::InvalidGenerators(format!("generator `{n}` has degree 0")));
            }
            names.push(n);
            degrees.push(d);
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidGenerators("too many generators".into()));
        }
        Ok(FreeSpec { names, degrees })
    }

    /// The spec with no generators (the base field as an algebra).
    pub fn empty() -> Self {
        FreeSpec { names: Vec::new(), degrees: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree_of(&self, g: u16) -> usize {
        self.degrees[g as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn word_degree(&self, w: &Word) -> usize {
        w.0.iter().map(|&g| self.degrees[g as usize]).sum()
    }

    /// Number of words of each degree `0..=max` (saturating).
    pub fn word_counts(&self, max: usize) -> Vec<u128> {
        let mut c = vec![0u128; max + 1];
        c[0] = 1;
        for d in 1..=max {
            let mut s = 0u128;
            for &g in &self.degrees {
                if g <= d {
                    s = s.saturating_add(c[d - g]);
                }
            }
            c[d] = s;
        }
        c
    }

    /// All words of degree `d`, in lexicographic order of generator indices.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(spec: &FreeSpec, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(Word(cur.clone()));
                return;
            }
            for (g, &dg) in spec.degrees.iter().enumerate() {
                if dg <= left {
                    cur.push(g as u16);
                    rec(spec, left - dg, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, d, &mut cur, &mut out);
        out
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    ch.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A word in the generators, stored as generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: u16) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Per-generator letter counts.
    pub fn content(&self, ngens: usize) -> Vec<usize> {
        let mut c = vec![0; ngens];
        for &g in &self.0 {
            c[g as usize] += 1;
        }
        c
    }

    pub fn display<'a>(&'a self, spec: &'a FreeSpec) -> impl fmt::Display + 'a {
        WordDisplay(self, spec)
    }
}

struct WordDisplay<'a>(&'a Word, &'a FreeSpec);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.0 .0;
        if w.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = &self.1.names[w[i] as usize];
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::int(1), Word::empty())
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn generator(g: u16) -> Self {
        Self::monomial(Scalar::int(1), Word::letter(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPolynomial {
        NcPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, field: &NumberField, s: &Scalar) -> NcPolynomial {
        if s.is_zero() {
            return Self::zero();
        }
        NcPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), field.mul(c, s))).collect() }
    }

    /// Noncommutative product (concatenation of words).
    pub fn mul(&self, field: &NumberField, other: &NcPolynomial) -> NcPolynomial {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &field.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, field: &NumberField, e: u32) -> NcPolynomial {
        (0..e).fold(Self::one(), |acc, _| acc.mul(field, self))
    }

    /// The common degree of all terms, `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, spec: &FreeSpec) -> Result<Option<usize>> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = spec.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::InhomogeneousInput),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self, spec: &FreeSpec) -> bool {
        self.homogeneous_degree(spec).is_ok()
    }

    /// Rename generator indices (used when embedding into a larger spec).
    pub fn map_generators(&self, f: impl Fn(u16) -> u16) -> NcPolynomial {
        NcPolynomial {
            terms: self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&g| f(g)).collect()), c.clone())).collect(),
        }
    }

    /// Render with generator names; terms in degree-then-lexicographic order.
    pub fn display<'a>(&'a self, spec: &'a FreeSpec) -> impl fmt::Display + 'a {
        PolyDisplay(self, spec)
    }
}

struct PolyDisplay<'a>(&'a NcPolynomial, &'a FreeSpec);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.1;
        let mut terms: Vec<(&Word, &Scalar)> = self.0.terms.iter().collect();
        terms.sort_by(|a, b| spec.word_degree(a.0).cmp(&spec.word_degree(b.0)).then(a.0.cmp(b.0)));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = split_sign(c);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let coef = if mag.is_one() {
                None
            } else if mag.coeffs().iter().filter(|q| !num_traits::Zero::is_zero(*q)).count() <= 1 {
                Some(format!("{mag}"))
            } else {
                Some(format!("({mag})"))
            };
            match (coef, w.is_empty()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{}", w.display(spec))?,
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c}*{}", w.display(spec))?,
            }
        }
        Ok(())
    }
}

/// Split off a minus sign when the leading coefficient in `t` is negative.
fn split_sign(c: &Scalar) -> (bool, Scalar) {
    use num_traits::Signed;
    match c.coeffs().last() {
        Some(q) if q.is_negative() => (true, c.neg()),
        _ => (false, c.clone()),
    }
}
