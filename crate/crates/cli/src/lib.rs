//! Subcommands, JSON reports and the on-disk report cache behind the `cochain` binary.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cochain::check::{Check, ValidationReport};
use cochain::cohomology::{check_presentation, cohomology, tensor_kunneth};
use cochain::description::{AlgebraDescription, Preset, Session};
use cochain::dg::validate_dg;
use cochain::error::Error;
use cochain::families::{crisscross_check, dg_free_unchecked};
use cochain::graded::GradedAlgebraData;
use cochain::hdet::{diagonal_scan, theorem_d_check, HdetContext};
use cochain::invariants::{
    check_representation, fixed_subalgebra, group_closure, validate_automorphism, verify_prop_equal, AlgebraMorphism,
    FiniteGroup, DEFAULT_GROUP_BOUND,
};
use cochain::resolution::{gorenstein_probe, GorensteinVerdict};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckDg,
    Hilbert,
    Cohomology,
    CheckPresentation,
    TensorKunneth,
    FixedSubalgebra,
    VerifyPropEqual,
    GorensteinProbe,
    Hdet,
    TheoremD,
    Crisscross,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckDg => "check-dg",
            Command::Hilbert => "hilbert",
            Command::Cohomology => "cohomology",
            Command::CheckPresentation => "check-presentation",
            Command::TensorKunneth => "tensor-kunneth",
            Command::FixedSubalgebra => "fixed-subalgebra",
            Command::VerifyPropEqual => "verify-prop-equal",
            Command::GorensteinProbe => "gorenstein-probe",
            Command::Hdet => "hdet",
            Command::TheoremD => "theorem-d",
            Command::Crisscross => "crisscross",
        }
    }
}

/// Effective options after merging flags, description options and defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunOptions {
    pub max_degree: usize,
    pub resolution_length: usize,
    pub group_bound: usize,
    pub scan: bool,
}

impl RunOptions {
    pub fn resolve(
        desc: &AlgebraDescription,
        max_degree: Option<usize>,
        resolution_length: Option<usize>,
        group_bound: Option<usize>,
        scan: bool,
    ) -> Self {
        RunOptions {
            max_degree: max_degree.or(desc.options.max_degree).unwrap_or(12),
            resolution_length: resolution_length.or(desc.options.resolution_length).unwrap_or(4),
            group_bound: group_bound.or(desc.options.group_bound).unwrap_or(DEFAULT_GROUP_BOUND),
            scan,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub engine_version: String,
    pub inputs_digest: String,
    pub options: RunOptions,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid_through: Option<usize>,
    pub checks: Vec<Check>,
    pub tables: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text rendering of the same tree.
    pub fn render(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, status_word(self.status));
        if let Some(v) = self.valid_through {
            s.push_str(&format!("valid through degree {v}\n"));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("error: {e}\n"));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => s.push_str(&format!("  [{mark}] {} ({d})\n", c.name)),
                None => s.push_str(&format!("  [{mark}] {}\n", c.name)),
            }
        }
        for (k, v) in &self.tables {
            s.push_str(&format!("{k}: {}\n", compact(v)));
        }
        s
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
        Status::InputError => "INPUT ERROR",
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

/// Exit-code class of an engine error.
pub fn error_status(e: &Error) -> Status {
    match e {
        Error::WindowExhausted(_) | Error::NotGorensteinWindow(_) | Error::TruncationTooSmall(_) => {
            Status::Inconclusive
        }
        Error::NotCrisscross { .. }
        | Error::DgValidationFailed(_)
        | Error::OrderBoundExceeded(_)
        | Error::NotAnHAutomorphism(_)
        | Error::LiftFailure(_)
        | Error::Internal(_) => Status::Fail,
        _ => Status::InputError,
    }
}

/// SHA-256 over the canonical description text, the command and the options.
pub fn inputs_digest(
    cmd: Command,
    desc: &AlgebraDescription,
    other: Option<&AlgebraDescription>,
    opts: &RunOptions,
) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update([0]);
    h.update(cmd.name().as_bytes());
    h.update([0]);
    h.update(desc.serialize().as_bytes());
    h.update([0]);
    if let Some(o) = other {
        h.update(o.serialize().as_bytes());
    }
    h.update([0]);
    h.update(serde_json::to_string(opts).unwrap().as_bytes());
    hex::encode(h.finalize())
}

struct Outcome {
    status: Status,
    valid_through: Option<usize>,
    checks: Vec<Check>,
    tables: BTreeMap<String, Value>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { status: Status::Pass, valid_through: None, checks: Vec::new(), tables: BTreeMap::new() }
    }

    fn table(&mut self, k: &str, v: impl Serialize) {
        self.tables.insert(k.to_string(), serde_json::to_value(v).unwrap());
    }

    fn absorb(&mut self, r: &ValidationReport) {
        self.checks.extend(r.checks.iter().cloned());
        if !r.passed() {
            self.status = Status::Fail;
        }
    }

    fn check(&mut self, c: Check) {
        if !c.passed {
            self.status = Status::Fail;
        }
        self.checks.push(c);
    }
}

fn input_error(msg: &str) -> Error {
    Error::Syntax { line: 0, col: 0, msg: msg.into() }
}

/// Runs `cmd` and always returns a report; engine errors become report entries.
pub fn run_command(
    cmd: Command,
    desc: &AlgebraDescription,
    other: Option<&AlgebraDescription>,
    opts: &RunOptions,
) -> Report {
    let digest = inputs_digest(cmd, desc, other, opts);
    let (status, valid_through, checks, tables, error) = match execute(cmd, desc, other, opts) {
        Ok(o) => (o.status, o.valid_through, o.checks, o.tables, None),
        Err(e) => (error_status(&e), None, Vec::new(), BTreeMap::new(), Some(e.to_string())),
    };
    Report {
        command: cmd.name().into(),
        engine_version: ENGINE_VERSION.into(),
        inputs_digest: digest,
        options: opts.clone(),
        status,
        valid_through,
        checks,
        tables,
        error,
    }
}

fn group_of(s: &Session, opts: &RunOptions) -> cochain::error::Result<FiniteGroup> {
    let gens: Vec<AlgebraMorphism> = s.group.iter().map(|(_, m)| m.clone()).collect();
    group_closure(&s.dg, &gens, opts.group_bound)
}

fn validate_group_generators(s: &Session, opts: &RunOptions, out: &mut Outcome) {
    for (name, m) in &s.group {
        let r = validate_automorphism(&s.dg, m, opts.max_degree);
        for c in r.checks {
            out.check(Check { name: format!("{name}: {}", c.name), ..c });
        }
    }
}

fn verdict_status(v: &GorensteinVerdict) -> Status {
    match v {
        GorensteinVerdict::ConsistentASGorenstein { .. } => Status::Pass,
        GorensteinVerdict::Refuted { .. } => Status::Fail,
        GorensteinVerdict::Inconclusive { .. } => Status::Inconclusive,
    }
}

fn execute(
    cmd: Command,
    desc: &AlgebraDescription,
    other: Option<&AlgebraDescription>,
    opts: &RunOptions,
) -> cochain::error::Result<Outcome> {
    let d = opts.max_degree;
    let mut out = Outcome::new();
    if cmd == Command::Crisscross {
        let Some(Preset::DgFree(t)) = &desc.preset else {
            return Err(input_error("crisscross needs an `algebra = \"dg-free(...)\"` description"));
        };
        let v = crisscross_check(t);
        let r = validate_dg(&dg_free_unchecked(t), 0);
        let d2 = r.checks.iter().filter(|c| c.name.starts_with("d²")).all(|c| c.passed);
        out.check(match v.witness {
            None => Check::new("crisscross identity", v.holds),
            Some(w) => Check::with_detail("crisscross identity", v.holds, format!("{w:?}")),
        });
        out.checks.push(Check::new("d² = 0 on generators", d2));
        out.check(Check::new("crisscross agrees with d²", v.holds == d2));
        return Ok(out);
    }
    let s = desc.build()?;
    let a = &s.dg;
    let k = a.field();
    match cmd {
        Command::CheckDg => {
            out.valid_through = Some(d);
            out.absorb(&validate_dg(a, d));
        }
        Command::Hilbert => {
            out.valid_through = Some(d);
            out.table("hilbert", a.algebra().hilbert(d).0);
        }
        Command::Cohomology => {
            let view = cohomology(a, d + 1)?;
            out.valid_through = Some(view.valid_through());
            out.table("dims", view.dims());
            let reps: Vec<Vec<String>> = (0..=view.valid_through())
                .map(|n| {
                    view.representatives(n)
                        .iter()
                        .map(|v| a.algebra().to_polynomial(v, n).display(a.algebra().spec()).to_string())
                        .collect()
                })
                .collect();
            out.table("representatives", reps);
        }
        Command::CheckPresentation => {
            if s.candidates.is_empty() {
                return Err(input_error("check-presentation needs a `[candidates]` block"));
            }
            let view = cohomology(a, d + 1)?;
            let r = check_presentation(&view, &s.candidates, &s.candidate_relations)?;
            out.valid_through = Some(view.valid_through());
            out.absorb(&r.report);
            out.table("cohomology_dims", &r.cohomology_dims);
            out.table("candidate_dims", &r.candidate_dims);
        }
        Command::TensorKunneth => {
            let b = match other {
                Some(o) => o.build()?.dg,
                None => a.clone(),
            };
            let (_, r) = tensor_kunneth(a, &b, d + 1)?;
            out.valid_through = Some(d);
            out.check(Check::new("Künneth: H(A⊗B) dims = convolution", r.passed));
            out.table("tensor_dims", &r.tensor);
            out.table("convolution", &r.convolution);
        }
        Command::FixedSubalgebra => {
            validate_group_generators(&s, opts, &mut out);
            let g = group_of(&s, opts)?;
            let f = fixed_subalgebra(a, &g, d + 1)?;
            out.valid_through = Some(d);
            out.absorb(&check_representation(a, &g, d));
            out.table("group_order", g.order());
            out.table("fixed_dims", &f.dims()[..=d]);
            out.table("fixed_cohomology_dims", f.cohomology().dims());
        }
        Command::VerifyPropEqual => {
            validate_group_generators(&s, opts, &mut out);
            let g = group_of(&s, opts)?;
            let r = verify_prop_equal(a, &g, d + 1)?;
            out.valid_through = Some(d);
            out.check(Check::new("H(G) group laws", r.group_laws));
            out.check(Check::new("dim H(A^G) = dim H(A)^{H(G)}", r.passed));
            out.table("group_order", g.order());
            out.table("rows", &r.rows);
        }
        Command::GorensteinProbe => {
            let view = cohomology(a, d + 1)?;
            let b = GradedAlgebraData::from_cohomology(&view)?;
            let p = gorenstein_probe(&b, opts.resolution_length, d)?;
            out.valid_through = Some(d);
            out.status = verdict_status(&p.verdict);
            let betti: Vec<&[usize]> = (0..=p.resolution.length()).map(|i| p.resolution.generator_degrees(i)).collect();
            out.table("betti_degrees", betti);
            out.table(
                "ext_support",
                p.ext.support().map(|e| json!({"i": e.i, "q": e.q, "dim": e.dim})).collect::<Vec<_>>(),
            );
            out.table("verdict", p.verdict.to_string());
        }
        Command::Hdet => {
            validate_group_generators(&s, opts, &mut out);
            let ctx = HdetContext::new(a, d, opts.resolution_length)?;
            let morphisms: Vec<(String, AlgebraMorphism)> = if s.group.is_empty() {
                vec![("identity".into(), AlgebraMorphism::identity(a.algebra()))]
            } else {
                s.group.clone()
            };
            let mut rows = Vec::new();
            for (name, m) in &morphisms {
                let r = ctx.hdet(m)?;
                for c in &r.certificates.checks {
                    out.check(Check { name: format!("{name}: {}", c.name), ..c.clone() });
                }
                rows.push(json!({
                    "name": name,
                    "hdet": k.display(&r.scalar).to_string(),
                    "inverse_convention": k.display(&r.inverse).to_string(),
                    "d": r.d,
                    "l": r.l,
                }));
            }
            out.valid_through = Some(d);
            out.table("hdet", rows);
        }
        Command::TheoremD => {
            let gens: Vec<AlgebraMorphism> = if opts.scan {
                let ctx = HdetContext::new(a, d, opts.resolution_length)?;
                diagonal_scan(a, &ctx, d.min(6))?
            } else {
                validate_group_generators(&s, opts, &mut out);
                s.group.iter().map(|(_, m)| m.clone()).collect()
            };
            let g = group_closure(a, &gens, opts.group_bound)?;
            let r = theorem_d_check(a, &g, d, opts.resolution_length)?;
            out.valid_through = Some(d);
            out.check(Check::new("Hdet multiplicative on G", r.multiplicative));
            out.check(Check::new("every Hdet equals 1", r.applies));
            if let Some(v) = &r.fixed_probe {
                let st = verdict_status(v);
                if st != Status::Pass && out.status == Status::Pass {
                    out.status = st;
                }
                out.table("fixed_probe", v.to_string());
            }
            out.table("group_order", g.order());
            out.table("hdets", &r.hdets);
            out.table("verdict", &r.verdict);
            out.table("fixed_cohomology_dims", &r.fixed_dims);
        }
        Command::Crisscross => unreachable!(),
    }
    Ok(out)
}

/// Content-addressed store of serialized reports.
pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, PartialEq, Eq)]
pub enum CacheLookup {
    Hit(String),
    Miss,
    Corrupt,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$COCHAIN_CACHE_DIR`, else `$XDG_CACHE_HOME/cochain`, else `~/.cache/cochain`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os("COCHAIN_CACHE_DIR") {
            return Some(d.into());
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Path::new(&d).join("cochain"));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("cochain"))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> CacheLookup {
        let Ok(text) = fs::read_to_string(self.path(key)) else { return CacheLookup::Miss };
        let Ok(v) = serde_json::from_str::<Value>(&text) else { return CacheLookup::Corrupt };
        match (v["key"].as_str(), v["checksum"].as_str(), v["report"].as_str()) {
            (Some(k), Some(sum), Some(report)) if k == key && sum == checksum(report) => {
                CacheLookup::Hit(report.to_string())
            }
            _ => CacheLookup::Corrupt,
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn store(&self, key: &str, report: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let blob = json!({"key": key, "checksum": checksum(report), "report": report});
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&blob).unwrap().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key))
    }
}

fn checksum(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Report for `cmd` as JSON text, served from `cache` when possible.
/// Returns the text, its exit status and whether it came from the cache.
pub fn run_cached(
    cmd: Command,
    desc: &AlgebraDescription,
    other: Option<&AlgebraDescription>,
    opts: &RunOptions,
    cache: Option<&Cache>,
) -> (Report, bool, Option<String>) {
    let key = inputs_digest(cmd, desc, other, opts);
    let mut warning = None;
    if let Some(c) = cache {
        match c.load(&key) {
            CacheLookup::Hit(text) => {
                if let Ok(r) = report_from_json(&text) {
                    return (r, true, None);
                }
                warning = Some("cache entry unreadable, recomputing".to_string());
            }
            CacheLookup::Corrupt => warning = Some("cache entry corrupt, recomputing".to_string()),
            CacheLookup::Miss => {}
        }
    }
    let report = run_command(cmd, desc, other, opts);
    if let Some(c) = cache {
        if report.status != Status::InputError {
            if let Err(e) = c.store(&key, &report.to_json()) {
                warning = Some(format!("could not write cache: {e}"));
            }
        }
    }
    (report, false, warning)
}

fn report_from_json(text: &str) -> Result<Report, serde_json::Error> {
    let v: Value = serde_json::from_str(text)?;
    let status = match v["status"].as_str() {
        Some("pass") => Status::Pass,
        Some("fail") => Status::Fail,
        Some("inconclusive") => Status::Inconclusive,
        _ => Status::InputError,
    };
    let opts = &v["options"];
    let checks = v["checks"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|c| Check {
                    name: c["name"].as_str().unwrap_or_default().to_string(),
                    passed: c["passed"].as_bool().unwrap_or(false),
                    detail: c["detail"].as_str().map(str::to_string),
                })
                .collect()
        })
        .unwrap_or_default();
    let tables =
        v["tables"].as_object().map(|m| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()).unwrap_or_default();
    Ok(Report {
        command: v["command"].as_str().unwrap_or_default().to_string(),
        engine_version: v["engine_version"].as_str().unwrap_or_default().to_string(),
        inputs_digest: v["inputs_digest"].as_str().unwrap_or_default().to_string(),
        options: RunOptions {
            max_degree: opts["max_degree"].as_u64().unwrap_or(0) as usize,
            resolution_length: opts["resolution_length"].as_u64().unwrap_or(0) as usize,
            group_bound: opts["group_bound"].as_u64().unwrap_or(0) as usize,
            scan: opts["scan"].as_bool().unwrap_or(false),
        },
        status,
        valid_through: v["valid_through"].as_u64().map(|x| x as usize),
        checks,
        tables,
        error: v["error"].as_str().map(str::to_string),
    })
}
