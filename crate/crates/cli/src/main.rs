use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cochain::description::{parse_description_with_field, AlgebraDescription};
use cochain::error::Error;
use cochain_cli::{error_status, run_cached, Cache, Command, RunOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
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

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::CheckDg => Command::CheckDg,
            Cmd::Hilbert => Command::Hilbert,
            Cmd::Cohomology => Command::Cohomology,
            Cmd::CheckPresentation => Command::CheckPresentation,
            Cmd::TensorKunneth => Command::TensorKunneth,
            Cmd::FixedSubalgebra => Command::FixedSubalgebra,
            Cmd::VerifyPropEqual => Command::VerifyPropEqual,
            Cmd::GorensteinProbe => Command::GorensteinProbe,
            Cmd::Hdet => Command::Hdet,
            Cmd::TheoremD => Command::TheoremD,
            Cmd::Crisscross => Command::Crisscross,
        }
    }
}

/// Exact computations with DG algebras and their cohomology.
#[derive(Parser, Debug)]
#[command(name = "cochain", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Description file, or a preset such as `A1` or `down-up(2, -1)`.
    input: String,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    resolution_length: Option<usize>,
    #[arg(long)]
    group_bound: Option<usize>,
    /// Minimal polynomial of the coefficient field, e.g. `t^2 + t + 1`, or `Q`.
    #[arg(long)]
    field: Option<String>,
    /// Second factor for `tensor-kunneth`.
    #[arg(long)]
    with: Option<String>,
    /// Search diagonal automorphisms instead of reading `[group]`.
    #[arg(long)]
    scan: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_cache: bool,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

enum LoadError {
    Read(String),
    Parse(Error),
}

impl LoadError {
    fn report(&self, prefix: &str) -> ExitCode {
        match self {
            LoadError::Read(m) => eprintln!("{prefix}{m}"),
            LoadError::Parse(e) => eprintln!("{prefix}{e}"),
        }
        let code = match self {
            LoadError::Read(_) => 2,
            LoadError::Parse(e) => error_status(e).exit_code(),
        };
        ExitCode::from(code as u8)
    }
}

fn load(input: &str, field: Option<&str>) -> Result<AlgebraDescription, LoadError> {
    let path = Path::new(input);
    let looks_like_path = !input.contains('(') && (path.extension().is_some() || input.contains('/'));
    let text = if path.is_file() || looks_like_path {
        std::fs::read_to_string(path).map_err(|e| LoadError::Read(format!("cannot read {input}: {e}")))?
    } else {
        format!("algebra = \"{}\"\n", input.replace('"', ""))
    };
    parse_description_with_field(&text, field).map_err(LoadError::Parse)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let desc = match load(&args.input, args.field.as_deref()) {
        Ok(d) => d,
        Err(e) => return e.report("error: "),
    };
    let other = match args.with.as_deref().map(|w| load(w, args.field.as_deref())).transpose() {
        Ok(o) => o,
        Err(e) => return e.report("error in --with: "),
    };
    let opts = RunOptions::resolve(&desc, args.max_degree, args.resolution_length, args.group_bound, args.scan);
    let cache = if args.no_cache { None } else { args.cache_dir.or_else(Cache::default_dir).map(Cache::new) };
    let (report, _, warning) = run_cached(args.command.into(), &desc, other.as_ref(), &opts, cache.as_ref());
    if let Some(w) = warning {
        eprintln!("warning: {w}");
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    ExitCode::from(report.status.exit_code() as u8)
}
