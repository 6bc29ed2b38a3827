//! A line-oriented text format describing a DG algebra together with optional
//! group, candidate-presentation and option blocks.
//!
//! ```text
//! field = "t^2 + t + 1"
//! generators = "x:1, y:1"
//!
//! [relations]
//! x^2*y = (t - 1)*x*y*x + t*y*x^2
//! x*y^2 = (t - 1)*y*x*y + t*y^2*x
//!
//! [differential]
//! x = y^2
//!
//! [group]
//! sigma = x -> (-t - 1)*x, y -> t*y
//!
//! [options]
//! max-degree = 12
//! ```
//!
//! Instead of `generators` and `[relations]`, `algebra` may name a preset:
//! `A1`, `A2`, `A3`, `down-up(α, β)` or `dg-free(n, M1, …, Mn)` with matrices
//! written as `[[a, b], [c, d]]`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{MonomialOrder, PresentedAlgebra};
use crate::cohomology::CandidateGenerator;
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};
use crate::families::{down_up_algebra, down_up_case, make_dg_free, preset, CrisscrossTuple, DownUpCase};
use crate::field::{make_field, NumberField, Scalar};
use crate::invariants::AlgebraMorphism;
use crate::linalg::ExactMatrix;
use crate::poly::{FreeSpec, NcPolynomial};

#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Named(String),
    DownUp { alpha: Scalar, beta: Scalar },
    DgFree(CrisscrossTuple),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescriptionOptions {
    pub max_degree: Option<usize>,
    pub resolution_length: Option<usize>,
    pub group_bound: Option<usize>,
    pub order: Option<MonomialOrder>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDescription {
    pub field: NumberField,
    pub preset: Option<Preset>,
    pub spec: FreeSpec,
    pub relations: Vec<NcPolynomial>,
    /// Explicit `d(g)` entries; generators not listed have `d = 0`.
    pub differential: Vec<(u16, NcPolynomial)>,
    /// Named morphisms, one image per generator.
    pub group: Vec<(String, Vec<NcPolynomial>)>,
    pub candidates: Vec<(String, NcPolynomial)>,
    /// Relations among the candidates, written in the candidate names.
    pub candidate_relations: Vec<NcPolynomial>,
    pub options: DescriptionOptions,
}

/// A description turned into engine objects.
#[derive(Clone, Debug)]
pub struct Session {
    pub dg: DgAlgebra,
    pub group: Vec<(String, AlgebraMorphism)>,
    pub candidates: Vec<CandidateGenerator>,
    pub candidate_relations: Vec<NcPolynomial>,
    pub crisscross: Option<CrisscrossTuple>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Header,
    Relations,
    Differential,
    Group,
    Candidates,
    CandidateRelations,
    Options,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

pub fn parse_description(text: &str) -> Result<AlgebraDescription> {
    parse_description_with_field(text, None)
}

/// Like [`parse_description`], with `field_override` (a minimal polynomial in `t`,
/// or `Q`) taking precedence over any `field` line.
pub fn parse_description_with_field(text: &str, field_override: Option<&str>) -> Result<AlgebraDescription> {
    let forced = field_override.map(|f| parse_field(f, 0, 1)).transpose()?;
    let mut field: Option<NumberField> = None;
    let mut algebra: Option<(String, usize, usize)> = None;
    let mut generators: Option<(String, usize, usize)> = None;
    let mut block = Block::Header;
    let mut pending: Vec<(Block, String, usize, usize)> = Vec::new();
    let mut seen = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len() + 1;
        if trimmed.starts_with('[') {
            let name = trimmed
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| syntax(line_no, indent, "unterminated block header"))?
                .trim();
            block = match name {
                "relations" => Block::Relations,
                "differential" => Block::Differential,
                "group" => Block::Group,
                "candidates" => Block::Candidates,
                "candidate-relations" => Block::CandidateRelations,
                "options" => Block::Options,
                _ => return Err(syntax(line_no, indent + 1, format!("unknown block `{name}`"))),
            };
            if seen.contains(&name.to_string()) {
                return Err(syntax(line_no, indent, format!("block `{name}` appears twice")));
            }
            seen.push(name.to_string());
            continue;
        }
        if block == Block::Header {
            let (key, value, vcol) = split_assignment(trimmed, line_no, indent)?;
            let value = unquote(value, line_no, vcol)?;
            match key {
                "field" => field = Some(parse_field(&value, line_no, vcol + 1)?),
                "algebra" => algebra = Some((value, line_no, vcol + 1)),
                "generators" => generators = Some((value, line_no, vcol + 1)),
                _ => return Err(syntax(line_no, indent, format!("unknown key `{key}`"))),
            }
        } else {
            pending.push((block, trimmed.to_string(), line_no, indent));
        }
    }

    if forced.is_some() {
        field = forced;
    }
    let preset_value = match &algebra {
        Some((v, l, c)) => Some(parse_preset(v, field.as_ref(), *l, *c)?),
        None => None,
    };
    let field = match (&preset_value, field) {
        (Some(Preset::Named(_)), None) => NumberField::cyclotomic3(),
        (Some(Preset::Named(n)), Some(f)) if f != NumberField::cyclotomic3() => {
            return Err(Error::FieldError(format!("preset {n} is defined over Q(t) with t^2 + t + 1 = 0")));
        }
        (_, Some(f)) => f,
        (Some(Preset::DgFree(t)), None) => t.field().clone(),
        (_, None) => NumberField::rationals(),
    };
    let spec = match (&preset_value, &generators) {
        (Some(_), Some((_, l, c))) => {
            return Err(syntax(*l, *c, "`generators` cannot be combined with a preset algebra"));
        }
        (Some(Preset::DgFree(t)), None) => FreeSpec::new((1..=t.n()).map(|i| (format!("x{i}"), 1)))?,
        (Some(_), None) => FreeSpec::new([("x", 1), ("y", 1)])?,
        (None, Some((g, l, c))) => parse_generators(g, *l, *c)?,
        (None, None) => return Err(syntax(1, 1, "missing `generators` or `algebra`")),
    };

    let mut desc = AlgebraDescription {
        field: field.clone(),
        preset: preset_value,
        spec: spec.clone(),
        relations: Vec::new(),
        differential: Vec::new(),
        group: Vec::new(),
        candidates: Vec::new(),
        candidate_relations: Vec::new(),
        options: DescriptionOptions::default(),
    };
    let mut candidate_lines = Vec::new();
    let mut relation_lines = Vec::new();
    for (block, line, l, c) in pending {
        match block {
            Block::Relations => {
                if desc.preset.is_some() {
                    return Err(syntax(l, c, "`[relations]` cannot be combined with a preset algebra"));
                }
                desc.relations.push(parse_equation(&line, &field, &spec, l, c)?);
            }
            Block::Differential => {
                if matches!(desc.preset, Some(Preset::Named(_) | Preset::DgFree(_))) {
                    return Err(syntax(l, c, "this preset fixes its differential"));
                }
                let (key, value, vc) = split_assignment(&line, l, c)?;
                let g = spec
                    .index_of(key)
                    .ok_or_else(|| Error::UnknownGenerator(format!("`{key}` at line {l}, column {c}")))?;
                if desc.differential.iter().any(|(h, _)| *h == g) {
                    return Err(syntax(l, c, format!("differential of `{key}` given twice")));
                }
                desc.differential.push((g, parse_poly(value, &field, &spec, l, vc)?));
            }
            Block::Group => {
                let (name, value, vc) = split_assignment(&line, l, c)?;
                let images = parse_images(value, &field, &spec, l, vc)?;
                desc.group.push((name.to_string(), images));
            }
            Block::Candidates => {
                let (name, value, vc) = split_assignment(&line, l, c)?;
                let p = parse_poly(value, &field, &spec, l, vc)?;
                desc.candidates.push((name.to_string(), p));
                candidate_lines.push((l, c));
            }
            Block::CandidateRelations => relation_lines.push((line, l, c)),
            Block::Options => {
                let (key, value, vc) = split_assignment(&line, l, c)?;
                let value = value.trim().trim_matches('"');
                let num =
                    || value.parse::<usize>().map_err(|_| syntax(l, vc, format!("expected a number for `{key}`")));
                match key {
                    "max-degree" => desc.options.max_degree = Some(num()?),
                    "resolution-length" => desc.options.resolution_length = Some(num()?),
                    "group-bound" => desc.options.group_bound = Some(num()?),
                    "order" => {
                        desc.options.order = Some(match value {
                            "deglex" => MonomialOrder::DegLex,
                            "degrevlex" => MonomialOrder::DegRevLex,
                            _ => return Err(syntax(l, vc, format!("unknown order `{value}`"))),
                        })
                    }
                    _ => return Err(syntax(l, c, format!("unknown option `{key}`"))),
                }
            }
            Block::Header => unreachable!(),
        }
    }
    if !relation_lines.is_empty() {
        let cspec = candidate_spec(&desc, &candidate_lines)?;
        for (line, l, c) in relation_lines {
            desc.candidate_relations.push(parse_equation(&line, &field, &cspec, l, c)?);
        }
    }
    Ok(desc)
}

fn candidate_spec(desc: &AlgebraDescription, lines: &[(usize, usize)]) -> Result<FreeSpec> {
    let mut gens = Vec::new();
    for ((name, p), (l, c)) in desc.candidates.iter().zip(lines) {
        match p.homogeneous_degree(&desc.spec) {
            Ok(Some(d)) if d > 0 => gens.push((name.clone(), d)),
            _ => {
                return Err(Error::DegreeMismatch(format!(
                    "candidate `{name}` at line {l}, column {c} is not homogeneous of positive degree"
                )))
            }
        }
    }
    FreeSpec::new(gens)
}

impl AlgebraDescription {
    pub fn candidate_spec(&self) -> Result<FreeSpec> {
        candidate_spec(self, &vec![(0, 0); self.candidates.len()])
    }

    /// Canonical text form; parsing it gives back an equal description.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let k = &self.field;
        if !(matches!(self.preset, Some(Preset::Named(_))) && *k == NumberField::cyclotomic3()) {
            writeln!(s, "field = \"{}\"", field_text(k)).unwrap();
        }
        match &self.preset {
            Some(p) => writeln!(s, "algebra = \"{}\"", preset_text(k, p)).unwrap(),
            None => {
                let g: Vec<String> =
                    self.spec.names().iter().zip(self.spec.degrees()).map(|(n, d)| format!("{n}:{d}")).collect();
                writeln!(s, "generators = \"{}\"", g.join(", ")).unwrap();
            }
        }
        if !self.relations.is_empty() {
            s.push_str("\n[relations]\n");
            for r in &self.relations {
                writeln!(s, "{}", r.display(&self.spec)).unwrap();
            }
        }
        if !self.differential.is_empty() {
            s.push_str("\n[differential]\n");
            for (g, p) in &self.differential {
                writeln!(s, "{} = {}", self.spec.names()[*g as usize], p.display(&self.spec)).unwrap();
            }
        }
        if !self.group.is_empty() {
            s.push_str("\n[group]\n");
            for (name, imgs) in &self.group {
                let parts: Vec<String> = imgs
                    .iter()
                    .enumerate()
                    .map(|(g, p)| format!("{} -> {}", self.spec.names()[g], p.display(&self.spec)))
                    .collect();
                writeln!(s, "{name} = {}", parts.join(", ")).unwrap();
            }
        }
        if !self.candidates.is_empty() {
            s.push_str("\n[candidates]\n");
            for (name, p) in &self.candidates {
                writeln!(s, "{name} = {}", p.display(&self.spec)).unwrap();
            }
        }
        if !self.candidate_relations.is_empty() {
            let cspec = self.candidate_spec().expect("validated at parse time");
            s.push_str("\n[candidate-relations]\n");
            for r in &self.candidate_relations {
                writeln!(s, "{}", r.display(&cspec)).unwrap();
            }
        }
        let o = &self.options;
        if *o != DescriptionOptions::default() {
            s.push_str("\n[options]\n");
            if let Some(v) = o.max_degree {
                writeln!(s, "max-degree = {v}").unwrap();
            }
            if let Some(v) = o.resolution_length {
                writeln!(s, "resolution-length = {v}").unwrap();
            }
            if let Some(v) = o.group_bound {
                writeln!(s, "group-bound = {v}").unwrap();
            }
            if let Some(v) = o.order {
                let name = match v {
                    MonomialOrder::DegLex => "deglex",
                    MonomialOrder::DegRevLex => "degrevlex",
                };
                writeln!(s, "order = \"{name}\"").unwrap();
            }
        }
        s
    }

    pub fn build(&self) -> Result<Session> {
        let k = &self.field;
        let mut diff = vec![NcPolynomial::zero(); self.spec.len()];
        for (g, p) in &self.differential {
            diff[*g as usize] = p.clone();
        }
        let mut crisscross = None;
        let mut dg = match &self.preset {
            Some(Preset::Named(n)) => preset(n)?,
            Some(Preset::DownUp { alpha, beta }) => {
                let alg = down_up_algebra(k, alpha, beta, MonomialOrder::DegLex);
                let nonzero = diff.iter().any(|p| !p.is_zero());
                if nonzero && down_up_case(k, alpha, beta) == DownUpCase::A {
                    return Err(Error::CaseMismatch(
                        "case (a) down-up algebras only carry the zero differential".into(),
                    ));
                }
                DgAlgebra::new(alg, diff)?
            }
            Some(Preset::DgFree(t)) => {
                crisscross = Some(t.clone());
                make_dg_free(t)?
            }
            None => DgAlgebra::new(
                PresentedAlgebra::new(k, self.spec.clone(), self.relations.clone(), MonomialOrder::DegLex)?,
                diff,
            )?,
        };
        if let Some(o) = self.options.order {
            dg = dg.with_order(o);
        }
        let group = self
            .group
            .iter()
            .map(|(n, imgs)| Ok((n.clone(), AlgebraMorphism::new(dg.algebra(), imgs.clone())?)))
            .collect::<Result<_>>()?;
        let candidates =
            self.candidates.iter().map(|(n, p)| CandidateGenerator { name: n.clone(), cocycle: p.clone() }).collect();
        Ok(Session { dg, group, candidates, candidate_relations: self.candidate_relations.clone(), crisscross })
    }
}

/// Text for `algebra = "..."` given a preset expression, e.g. `down-up(1, 1)`.
pub fn parse_preset_expression(value: &str, field: Option<&NumberField>) -> Result<Preset> {
    parse_preset(value, field, 1, 1)
}

fn field_text(k: &NumberField) -> String {
    if k.is_rational() {
        return "Q".into();
    }
    let coeffs: Vec<BigRational> = k.min_poly().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    Scalar::from_coeffs(coeffs).to_string()
}

fn preset_text(k: &NumberField, p: &Preset) -> String {
    match p {
        Preset::Named(n) => n.clone(),
        Preset::DownUp { alpha, beta } => format!("down-up({}, {})", k.display(alpha), k.display(beta)),
        Preset::DgFree(t) => {
            let mats: Vec<String> = t
                .matrices
                .iter()
                .map(|m| {
                    let rows: Vec<String> = (0..m.rows())
                        .map(|r| {
                            let e: Vec<String> = m.row(r).iter().map(|x| k.display(x).to_string()).collect();
                            format!("[{}]", e.join(", "))
                        })
                        .collect();
                    format!("[{}]", rows.join(", "))
                })
                .collect();
            format!("dg-free({}, {})", t.n(), mats.join(", "))
        }
    }
}

fn split_assignment(s: &str, line: usize, col: usize) -> Result<(&str, &str, usize)> {
    let eq = s.find('=').ok_or_else(|| syntax(line, col, "expected `name = value`"))?;
    let key = s[..eq].trim();
    if key.is_empty() {
        return Err(syntax(line, col, "missing name before `=`"));
    }
    let rest = &s[eq + 1..];
    let lead = rest.len() - rest.trim_start().len();
    Ok((key, rest.trim(), col + eq + 1 + lead))
}

fn unquote(v: &str, line: usize, col: usize) -> Result<String> {
    if let Some(inner) = v.strip_prefix('"') {
        inner.strip_suffix('"').map(str::to_string).ok_or_else(|| syntax(line, col, "unterminated string"))
    } else {
        Ok(v.to_string())
    }
}

fn parse_field(text: &str, line: usize, col: usize) -> Result<NumberField> {
    let t = text.trim();
    if t == "Q" || t == "QQ" || t == "rationals" {
        return Ok(NumberField::rationals());
    }
    let q = NumberField::rationals();
    let tspec = FreeSpec::new([("s", 1)])?;
    let mut p = Parser::new(t, &q, &tspec, line, col);
    p.var = Some("t");
    let poly = p.parse_all()?;
    let deg = poly.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (w, c) in poly.terms() {
        let r = c.as_rational().expect("rational coefficients");
        if !r.is_integer() {
            return Err(Error::FieldError(format!("minimal polynomial `{t}` must have integer coefficients")));
        }
        coeffs[w.len()] = r.to_integer();
    }
    make_field(&coeffs)
}

fn parse_generators(text: &str, line: usize, col: usize) -> Result<FreeSpec> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let c = col + offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, deg) = match part.split_once(':') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (part, "1"),
        };
        let d: usize =
            deg.parse().map_err(|_| syntax(line, c, format!("bad degree `{deg}` for generator `{name}`")))?;
        if d == 0 {
            return Err(Error::DegreeMismatch(format!("generator `{name}` at line {line}, column {c} has degree 0")));
        }
        gens.push((name.to_string(), d));
    }
    FreeSpec::new(gens).map_err(|e| match e {
        Error::InvalidGenerators(m) => syntax(line, col, m),
        e => e,
    })
}

fn parse_poly(text: &str, k: &NumberField, spec: &FreeSpec, line: usize, col: usize) -> Result<NcPolynomial> {
    let p = Parser::new(text, k, spec, line, col).parse_all()?;
    if !p.is_homogeneous(spec) {
        return Err(Error::DegreeMismatch(format!("inhomogeneous expression at line {line}, column {col}")));
    }
    Ok(p)
}

/// `lhs = rhs` becomes `lhs − rhs`; a bare expression is taken as is.
fn parse_equation(text: &str, k: &NumberField, spec: &FreeSpec, line: usize, col: usize) -> Result<NcPolynomial> {
    match text.find('=') {
        Some(eq) => {
            let lhs = parse_poly(&text[..eq], k, spec, line, col)?;
            let rhs = parse_poly(&text[eq + 1..], k, spec, line, col + eq + 1)?;
            let r = lhs.sub(&rhs);
            if !r.is_homogeneous(spec) {
                return Err(Error::DegreeMismatch(format!("sides of different degree at line {line}, column {col}")));
            }
            Ok(r)
        }
        None => parse_poly(text, k, spec, line, col),
    }
}

fn parse_images(text: &str, k: &NumberField, spec: &FreeSpec, line: usize, col: usize) -> Result<Vec<NcPolynomial>> {
    let mut images: Vec<Option<NcPolynomial>> = vec![None; spec.len()];
    let mut p = Parser::new(text, k, spec, line, col);
    loop {
        p.skip_ws();
        let c = p.column();
        let name = p.ident().ok_or_else(|| syntax(line, c, "expected a generator name"))?;
        let g = spec
            .index_of(&name)
            .ok_or_else(|| Error::UnknownGenerator(format!("`{name}` at line {line}, column {c}")))?;
        p.skip_ws();
        if !p.eat_str("->") {
            return Err(syntax(line, p.column(), "expected `->`"));
        }
        let img = p.expr()?;
        if images[g as usize].is_some() {
            return Err(syntax(line, c, format!("image of `{name}` given twice")));
        }
        images[g as usize] = Some(img);
        p.skip_ws();
        if p.at_end() {
            break;
        }
        if !p.eat(',') {
            return Err(syntax(line, p.column(), "expected `,`"));
        }
    }
    Ok(images.into_iter().enumerate().map(|(g, i)| i.unwrap_or_else(|| NcPolynomial::generator(g as u16))).collect())
}

fn parse_preset(text: &str, field: Option<&NumberField>, line: usize, col: usize) -> Result<Preset> {
    let t = text.trim();
    match t {
        "A1" | "A2" | "A3" => return Ok(Preset::Named(t.into())),
        _ => {}
    }
    let empty = FreeSpec::empty();
    if let Some(args) = t.strip_prefix("down-up") {
        let k = field.cloned().unwrap_or_else(NumberField::rationals);
        let mut p = Parser::new(args, &k, &empty, line, col + 7);
        p.skip_ws();
        p.expect('(')?;
        let alpha = p.scalar_expr()?;
        p.expect(',')?;
        let beta = p.scalar_expr()?;
        p.expect(')')?;
        p.finish()?;
        return Ok(Preset::DownUp { alpha, beta });
    }
    if let Some(args) = t.strip_prefix("dg-free") {
        let k = field.cloned().unwrap_or_else(NumberField::rationals);
        let mut p = Parser::new(args, &k, &empty, line, col + 7);
        p.skip_ws();
        p.expect('(')?;
        p.skip_ws();
        let c = p.column();
        let n = p.number().ok_or_else(|| syntax(line, c, "expected the number of generators"))?;
        let n: usize = n.to_string().parse().map_err(|_| syntax(line, c, "bad generator count"))?;
        let mut mats = Vec::new();
        for _ in 0..n {
            p.expect(',')?;
            mats.push(p.matrix(&k)?);
        }
        p.expect(')')?;
        p.finish()?;
        if n == 0 {
            return Err(syntax(line, c, "dg-free needs at least one generator"));
        }
        return CrisscrossTuple::new(mats).map(Preset::DgFree);
    }
    Err(Error::UnknownPreset(t.into()))
}

/// Recursive-descent parser for polynomial expressions.
struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a NumberField,
    spec: &'a FreeSpec,
    line: usize,
    col: usize,
    // alternative name for the single generator of `spec`, used for minimal polynomials
    var: Option<&'static str>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, field: &'a NumberField, spec: &'a FreeSpec, line: usize, col: usize) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, field, spec, line, col, var: None }
    }

    fn column(&self) -> usize {
        self.col + self.pos
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected `{}`", self.chars[self.pos])))
        }
    }

    fn parse_all(&mut self) -> Result<NcPolynomial> {
        let p = self.expr()?;
        self.finish()?;
        Ok(p)
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn expr(&mut self) -> Result<NcPolynomial> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            self.skip_ws();
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPolynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                acc = acc.mul(self.field, &self.factor()?);
            } else if self.eat('/') {
                let c = self.column();
                let d = self.factor()?;
                let s = constant_of(&d).ok_or_else(|| syntax(self.line, c, "division by a non-constant"))?;
                let inv = self.field.inv(&s).map_err(|_| syntax(self.line, c, "division by zero"))?;
                acc = acc.scale(self.field, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NcPolynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let e = self.number().ok_or_else(|| self.err("expected an exponent"))?;
            let e: u32 = e.to_string().parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(self.field, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPolynomial> {
        self.skip_ws();
        let c = self.column();
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.eat('-') {
            return Ok(self.atom()?.neg());
        }
        if let Some(n) = self.number() {
            return Ok(NcPolynomial::constant(Scalar::from_ratio(BigRational::from_integer(n))));
        }
        if let Some(name) = self.ident() {
            if self.var == Some(name.as_str()) {
                return Ok(NcPolynomial::generator(0));
            }
            if let Some(g) = self.spec.index_of(&name) {
                if self.var.is_none() {
                    return Ok(NcPolynomial::generator(g));
                }
            }
            if name == "t" {
                return Ok(NcPolynomial::constant(self.field.generator()));
            }
            return Err(Error::UnknownGenerator(format!("`{name}` at line {}, column {c}", self.line)));
        }
        match self.peek() {
            Some(ch) => Err(self.err(format!("unexpected `{ch}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn scalar_expr(&mut self) -> Result<Scalar> {
        let c = self.column();
        let p = self.expr()?;
        constant_of(&p).ok_or_else(|| syntax(self.line, c, "expected a scalar"))
    }

    fn matrix(&mut self, k: &NumberField) -> Result<ExactMatrix> {
        self.expect('[')?;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.scalar_expr()?];
            while self.eat(',') {
                row.push(self.scalar_expr()?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(self.err("matrix rows of different lengths"));
        }
        Ok(ExactMatrix::from_rows(k, cols, rows))
    }
}

fn constant_of(p: &NcPolynomial) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.num_terms() == 1 {
        let (w, c) = p.terms().next().unwrap();
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::validate_dg;

    const A1_TEXT: &str = r#"
field = "t^2 + t + 1"
generators = "x:1, y:1"

[relations]
x^2*y = (t - 1)*x*y*x + t*y*x^2
x*y^2 = (t - 1)*y*x*y + t*y^2*x

[differential]
x = y^2   # d(y) = 0

[group]
sigma = x -> t^2*x, y -> t*y

[candidates]
b = y
a = x*y + y*x

[candidate-relations]
t*b*a - a*b
b^2

[options]
max-degree = 10
"#;

    #[test]
    fn explicit_a1_matches_preset() {
        let d = parse_description(A1_TEXT).unwrap();
        let s = d.build().unwrap();
        assert!(validate_dg(&s.dg, 6).passed());
        let p = preset("A1").unwrap();
        assert_eq!(s.dg.algebra().hilbert(6), p.algebra().hilbert(6));
        assert_eq!(d.options.max_degree, Some(10));
        assert_eq!(s.group.len(), 1);
        assert_eq!(s.candidate_relations.len(), 2);
    }

    #[test]
    fn round_trip() {
        for text in [
            A1_TEXT,
            "algebra = \"A1\"\n",
            "generators = \"x, y\"\n",
            "field = \"Q\"\nalgebra = \"down-up(1, 1)\"\n[group]\nneg = x -> -x, y -> -y\n",
            "algebra = \"dg-free(2, [[0, 1], [0, 0]], [[0, 0], [0, 0]])\"\n[options]\norder = \"degrevlex\"\n",
        ] {
            let d = parse_description(text).unwrap();
            let s = d.serialize();
            assert_eq!(parse_description(&s).unwrap(), d, "{s}");
        }
    }

    #[test]
    fn preset_reference() {
        let d = parse_description("algebra = \"A1\"").unwrap();
        assert_eq!(d.preset, Some(Preset::Named("A1".into())));
        assert_eq!(d.field, NumberField::cyclotomic3());
    }

    #[test]
    fn free_algebra_has_no_relations() {
        let d = parse_description("generators = \"x:1, y:1\"").unwrap();
        assert!(d.relations.is_empty());
        assert_eq!(d.build().unwrap().dg.algebra().dim(2), 4);
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_description("generators = \"x, y\"\n[relations]\nx*z - y\n").unwrap_err();
        assert_eq!(e, Error::UnknownGenerator("`z` at line 3, column 3".into()));
        let e = parse_description("generators = \"x, y\"\n[relations]\nx*(y + \n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{e:?}");
        let e = parse_description("generators = \"x:1, y:2\"\n[relations]\nx^2 - y*x\n").unwrap_err();
        assert!(matches!(e, Error::DegreeMismatch(_)));
        let e = parse_description("field = \"t^2 - 1\"\ngenerators = \"x\"\n").unwrap_err();
        assert!(matches!(e, Error::ReducibleMinimalPolynomial(_) | Error::FieldError(_)), "{e:?}");
        let e = parse_description("algebra = \"A7\"").unwrap_err();
        assert_eq!(e, Error::UnknownPreset("A7".into()));
        let e = parse_description("generators = \"x\"\n[bogus]\n").unwrap_err();
        assert_eq!(e, Error::Syntax { line: 2, col: 2, msg: "unknown block `bogus`".into() });
    }

    #[test]
    fn case_a_rejects_differentials() {
        let d = parse_description("field = \"Q\"\nalgebra = \"down-up(1, 1)\"\n[differential]\nx = y^2\n").unwrap();
        assert!(matches!(d.build().unwrap_err(), Error::CaseMismatch(_)));
    }
}
