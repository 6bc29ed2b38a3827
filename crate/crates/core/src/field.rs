//! Exact arithmetic in number fields `Q[t]/(m(t))` of degree at most four.
//!
//! Elements are stored as coefficient vectors in the power basis `1, t, .., t^(n-1)`
//! with trailing zeros trimmed, so the zero element never allocates. All operations go
//! through the [`NumberField`] handle, which owns the minimal polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of a number field: rational coefficients in the power basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar(Vec<BigRational>);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The rational number `n/d` (constant in `t`).
    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_coeffs(vec![BigRational::new(n.into(), d.into())])
    }

    pub fn int(n: i64) -> Self {
        Self::rational(n, 1)
    }

    pub fn from_ratio(q: BigRational) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Scalar(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.0.len() == 1 && (-&self.0[0]).is_one()
    }

    /// The rational value if this scalar lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Scalar::from_coeffs(out)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => out.push(a - b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(-b),
                (None, None) => unreachable!(),
            }
        }
        Scalar::from_coeffs(out)
    }

    pub fn add_assign(&mut self, other: &Scalar) {
        if other.is_zero() {
            return;
        }
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        while self.0.last().is_some_and(|x| x.is_zero()) {
            self.0.pop();
        }
    }

    /// Multiply by a rational number; this needs no field reduction.
    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar(self.0.iter().map(|c| c * q).collect())
    }

    /// A rough size measure used for pivot selection.
    pub(crate) fn weight(&self) -> u64 {
        self.0.iter().map(|c| c.numer().bits() + c.denom().bits()).sum::<u64>() + self.0.len() as u64
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldData {
    /// Monic minimal polynomial, coefficients from `t^0` upward (length = degree + 1).
    poly: Vec<BigInt>,
}

/// A number field `Q[t]/(m(t))`. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    /// Build `Q[t]/(m)` after checking that `m` is monic and irreducible.
    ///
    /// `min_poly` lists integer coefficients from the constant term upward.
    pub fn new(min_poly: &[i64]) -> Result<Self> {
        make_field(&min_poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    /// The rationals, presented as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        NumberField(Arc::new(FieldData { poly: vec![BigInt::zero(), BigInt::one()] }))
    }

    /// `Q(xi)` with `xi` a primitive cube root of unity (`t^2 + t + 1`).
    pub fn cyclotomic3() -> Self {
        NumberField(Arc::new(FieldData { poly: vec![BigInt::one(), BigInt::one(), BigInt::one()] }))
    }

    pub fn degree(&self) -> usize {
        self.0.poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.0.poly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::int(1)
    }

    /// The class of `t`.
    pub fn generator(&self) -> Scalar {
        if self.degree() == 1 {
            // t = -m0 in Q[t]/(t + m0)
            Scalar::from_ratio(BigRational::from_integer(-self.0.poly[0].clone()))
        } else {
            Scalar::from_coeffs(vec![BigRational::zero(), BigRational::one()])
        }
    }

    /// Reduce an arbitrary rational polynomial in `t` modulo the minimal polynomial.
    pub fn reduce(&self, mut c: Vec<BigRational>) -> Scalar {
        let n = self.degree();
        let m = &self.0.poly;
        if c.len() > n {
            for k in (n..c.len()).rev() {
                let top = std::mem::take(&mut c[k]);
                if top.is_zero() {
                    continue;
                }
                for (i, mi) in m.iter().enumerate().take(n) {
                    if !mi.is_zero() {
                        c[k - n + i] -= &top * BigRational::from_integer(mi.clone());
                    }
                }
            }
            c.truncate(n);
        }
        Scalar::from_coeffs(c)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        if a.0.len() == 1 {
            return b.scale_rational(&a.0[0]);
        }
        if b.0.len() == 1 {
            return a.scale_rational(&b.0[0]);
        }
        let mut prod = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.0.len() == 1 {
            return Ok(Scalar::from_ratio(a.0[0].recip()));
        }
        // Solve (multiplication-by-a) x = 1 over Q.
        let n = self.degree();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut basis = self.one();
        let t = self.generator();
        for _ in 0..n {
            let p = self.mul(a, &basis);
            cols.push((0..n).map(|i| p.coeff(i)).collect());
            basis = self.mul(&basis, &t);
        }
        // Augmented system rows: row i = [cols[0][i], .., cols[n-1][i] | e_0[i]]
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[r][c].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
            m.swap(c, p);
            let piv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= &piv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let v = &f * &m[c][k];
                        m[r][k] -= v;
                    }
                }
            }
        }
        Ok(Scalar::from_coeffs(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a possibly negative exponent.
    pub fn powi(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Fused `acc += a * b`.
    pub fn mul_add_assign(&self, acc: &mut Scalar, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = self.mul(a, b);
        acc.add_assign(&p);
    }

    /// Roots of unity of the form `±t^k`, deduplicated, with their orders.
    ///
    /// This captures every root of unity for the cyclotomic fields used in practice
    /// (`Q`, `Q(i)`, `Q(xi)`, `Q(zeta_8)`, ...).
    pub fn roots_of_unity(&self) -> Vec<(Scalar, u64)> {
        let mut found: Vec<(Scalar, u64)> = Vec::new();
        let t = self.generator();
        let mut cands = Vec::new();
        let mut p = self.one();
        for _ in 0..=24 {
            cands.push(p.clone());
            cands.push(p.neg());
            p = self.mul(&p, &t);
        }
        for c in cands {
            if found.iter().any(|(f, _)| *f == c) {
                continue;
            }
            let mut q = c.clone();
            for k in 1..=24u64 {
                if q.is_one() {
                    found.push((c.clone(), k));
                    break;
                }
                q = self.mul(&q, &c);
            }
        }
        found.sort_by_key(|(_, k)| *k);
        found
    }

    /// Pretty-print a scalar as a polynomial in `t`.
    pub fn display<'a>(&'a self, s: &'a Scalar) -> ScalarDisplay<'a> {
        ScalarDisplay(s)
    }
}

/// Build the field `Q[t]/(m)` from integer coefficients listed from the constant term up.
///
/// Irreducibility is decided by the rational root test and, in degree four, a search
/// for monic integer quadratic factors (Gauss's lemma makes both complete).
pub fn make_field(min_poly: &[BigInt]) -> Result<NumberField> {
    let mut poly = min_poly.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let deg = poly.len().saturating_sub(1);
    if deg == 0 {
        return Err(Error::FieldError("minimal polynomial must have degree >= 1".into()));
    }
    if deg > 4 {
        return Err(Error::DegreeTooLarge(deg));
    }
    if !poly[deg].is_one() {
        return Err(Error::FieldError("minimal polynomial must be monic".into()));
    }
    let shown = format_int_poly(&poly);
    if deg >= 2 {
        if let Some(r) = integer_root(&poly)? {
            return Err(Error::ReducibleMinimalPolynomial(format!("{shown} has the root {r}")));
        }
        if deg == 4 && has_quadratic_factor(&poly)? {
            return Err(Error::ReducibleMinimalPolynomial(format!("{shown} splits into two quadratics")));
        }
    }
    Ok(NumberField(Arc::new(FieldData { poly })))
}

fn small(c: &BigInt) -> Result<i64> {
    c.to_i64()
        .filter(|v| v.unsigned_abs() < (1 << 40))
        .ok_or_else(|| Error::FieldError("minimal polynomial coefficients are too large".into()))
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as i64);
            if d * d != n {
                out.push((n / d) as i64);
            }
        }
        d += 1;
    }
    out
}

fn eval_int(poly: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn integer_root(poly: &[BigInt]) -> Result<Option<i64>> {
    let m0 = small(&poly[0])?;
    if m0 == 0 {
        return Ok(Some(0));
    }
    for d in divisors(m0) {
        for r in [d, -d] {
            if eval_int(poly, r).is_zero() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// Does a monic quartic split as `(t^2 + a t + b)(t^2 + c t + d)` over Z?
fn has_quadratic_factor(poly: &[BigInt]) -> Result<bool> {
    let m: Vec<i64> = poly.iter().map(small).collect::<Result<_>>()?;
    let (m0, m1, m2, m3) = (m[0] as i128, m[1] as i128, m[2] as i128, m[3] as i128);
    for b in divisors(m[0]).into_iter().flat_map(|d| [d, -d]) {
        let b = b as i128;
        let d = m0 / b;
        // a + c = m3, ad + bc = m1, ac + b + d = m2
        if d != b {
            let num = m1 - b * m3;
            let den = d - b;
            if num % den != 0 {
                continue;
            }
            let a = num / den;
            let c = m3 - a;
            if a * c + b + d == m2 {
                return Ok(true);
            }
        } else {
            if m1 != b * m3 {
                continue;
            }
            // a, c roots of z^2 - m3 z + (m2 - 2b)
            let disc = m3 * m3 - 4 * (m2 - 2 * b);
            if disc < 0 {
                continue;
            }
            let r = disc.sqrt();
            if r * r == disc && (m3 + r).is_even() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn format_int_poly(poly: &[BigInt]) -> String {
    let c: Vec<Scalar> = vec![Scalar::from_coeffs(poly.iter().map(|x| BigRational::from_integer(x.clone())).collect())];
    format!("{}", ScalarDisplay(&c[0]))
}

pub struct ScalarDisplay<'a>(&'a Scalar);

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0 .0;
        if c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in c.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ScalarDisplay(self).fmt(f)
    }
}
