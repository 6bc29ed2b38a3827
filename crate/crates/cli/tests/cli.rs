use std::fs;
use std::path::Path;
use std::process::{Command as Proc, Output};

use cochain::description::parse_description;
use cochain_cli::{run_cached, run_command, Cache, CacheLookup, Command, RunOptions, Status};

const C3: &str = "field = \"t^2 + t + 1\"\nalgebra = \"A1\"\n[group]\ng = x -> t^2*x, y -> t*y\n";
const ZERO_TUPLE: &str = "dg-free(2, [[0,0],[0,0]], [[0,0],[0,0]])";

fn cochain(args: &[&str], cache: &Path) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_cochain")).args(args).env("COCHAIN_CACHE_DIR", cache).output().expect("binary runs")
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn opts(d: usize) -> RunOptions {
    RunOptions { max_degree: d, resolution_length: 4, group_bound: 64, scan: false }
}

#[test]
fn cohomology_a1_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = cochain(&["cohomology", "A1", "--max-degree", "10", "--json", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, golden("cohomology_a1_d10.json"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let dims: Vec<u64> = v["tables"]["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1]);
}

#[test]
fn crisscross_zero_tuple_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = cochain(&["crisscross", ZERO_TUPLE, "--json", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("crisscross_zero.json"));
}

#[test]
fn crisscross_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = cochain(&["crisscross", "dg-free(2, [[0,1],[0,0]], [[0,0],[0,0]])", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL] crisscross identity"));
    assert!(text.contains("[PASS] crisscross agrees with d²"));
}

#[test]
fn theorem_d_on_a1_with_c3() {
    let desc = parse_description(C3).unwrap();
    let r = run_command(Command::TheoremD, &desc, None, &opts(12));
    assert_eq!(r.status, Status::Pass, "{}", r.render());
    assert_eq!(r.tables["group_order"], 3);
    assert_eq!(r.tables["hdets"], serde_json::json!(["1", "1", "1"]));
    assert!(r.tables["verdict"].as_str().unwrap().contains("Gorenstein"));
    assert!(r.tables["fixed_probe"].as_str().unwrap().contains("d = 1, l = 2"));
}

#[test]
fn theorem_d_hypothesis_failure_is_reported() {
    let plane = "generators = \"x1:1, x2:1\"\n[relations]\nx1*x2 = x2*x1\n[group]\n";
    let desc = parse_description(&format!("{plane}s = x1 -> -x1, x2 -> x2\n")).unwrap();
    let r = run_command(Command::TheoremD, &desc, None, &RunOptions { resolution_length: 3, ..opts(6) });
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.tables["hdets"], serde_json::json!(["1", "-1"]));
    assert!(r.tables["verdict"].as_str().unwrap().starts_with("hypothesis fails"));

    let desc = parse_description(&format!("{plane}s = x1 -> 2*x1, x2 -> x2\n")).unwrap();
    let r = run_command(Command::TheoremD, &desc, None, &RunOptions { group_bound: 8, ..opts(6) });
    assert_eq!(r.status, Status::Fail);
    assert!(r.error.unwrap().contains("8"));
}

#[test]
fn exit_codes_by_class() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cochain");
    fs::write(&path, "generators = \"x:1, y:1\"\n[relations]\nx*z = 0\n").unwrap();
    let out = cochain(&["hilbert", path.to_str().unwrap(), "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`z` at line 3"));

    let out = cochain(&["hilbert", "B7", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = cochain(&["gorenstein-probe", "A1", "--max-degree", "6", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(3));

    let out = cochain(&["gorenstein-probe", "A1", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(0));

    let out = cochain(&["check-presentation", "A1", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_description_options() {
    let desc = parse_description("algebra = \"A1\"\n[options]\nmax-degree = 5\n").unwrap();
    assert_eq!(RunOptions::resolve(&desc, None, None, None, false).max_degree, 5);
    assert_eq!(RunOptions::resolve(&desc, Some(7), None, None, false).max_degree, 7);
    let bare = parse_description("algebra = \"A1\"\n").unwrap();
    assert_eq!(RunOptions::resolve(&bare, None, None, None, false), opts(12));
}

#[test]
fn reports_are_deterministic() {
    let desc = parse_description(C3).unwrap();
    let a = run_command(Command::FixedSubalgebra, &desc, None, &opts(8)).to_json();
    let b = run_command(Command::FixedSubalgebra, &desc, None, &opts(8)).to_json();
    assert_eq!(a, b);
}

#[test]
fn cache_hit_miss_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let desc = parse_description("algebra = \"A1\"\n").unwrap();

    let (first, hit, warn) = run_cached(Command::Cohomology, &desc, None, &opts(8), Some(&cache));
    assert!(!hit && warn.is_none());
    let (second, hit, _) = run_cached(Command::Cohomology, &desc, None, &opts(8), Some(&cache));
    assert!(hit);
    assert_eq!(first.to_json(), second.to_json());
    let fresh = run_command(Command::Cohomology, &desc, None, &opts(8));
    assert_eq!(fresh.to_json(), second.to_json());

    let (_, hit, _) = run_cached(Command::Cohomology, &desc, None, &opts(9), Some(&cache));
    assert!(!hit);

    let blob = dir.path().join(format!("{}.json", first.inputs_digest));
    fs::write(&blob, "{\"key\": \"garbage\"").unwrap();
    assert_eq!(cache.load(&first.inputs_digest), CacheLookup::Corrupt);
    let (third, hit, warn) = run_cached(Command::Cohomology, &desc, None, &opts(8), Some(&cache));
    assert!(!hit);
    assert!(warn.unwrap().contains("corrupt"));
    assert_eq!(third.to_json(), first.to_json());
    assert!(matches!(cache.load(&first.inputs_digest), CacheLookup::Hit(_)));

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&blob).unwrap()).unwrap();
    v["report"] = serde_json::Value::String(v["report"].as_str().unwrap().replace("\"pass\"", "\"fail\""));
    fs::write(&blob, v.to_string()).unwrap();
    assert_eq!(cache.load(&first.inputs_digest), CacheLookup::Corrupt);
}

#[test]
fn binary_cache_rerun_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cohomology", "A1", "--max-degree", "7", "--json"];
    let a = cochain(&args, dir.path());
    let b = cochain(&args, dir.path());
    let mut no_cache = args.to_vec();
    no_cache.push("--no-cache");
    let c = cochain(&no_cache, dir.path());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn input_errors_are_not_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let desc = parse_description("algebra = \"A1\"\n").unwrap();
    let (r, _, _) = run_cached(Command::CheckPresentation, &desc, None, &opts(6), Some(&cache));
    assert_eq!(r.status, Status::InputError);
    assert!(!dir.path().join(format!("{}.json", r.inputs_digest)).exists());
}

#[test]
fn hdet_and_kunneth_commands() {
    let desc = parse_description(
        "generators = \"x1:1, x2:1\"\n[relations]\nx1*x2 = x2*x1\n[group]\nswap = x1 -> x2, x2 -> x1\nscale = x1 -> 2*x1, x2 -> -1/3*x2\n",
    )
    .unwrap();
    let r = run_command(Command::Hdet, &desc, None, &RunOptions { resolution_length: 3, ..opts(6) });
    assert_eq!(r.status, Status::Pass, "{}", r.render());
    let rows = r.tables["hdet"].as_array().unwrap();
    assert_eq!(rows[0]["hdet"], "-1");
    assert_eq!(rows[1]["hdet"], "-2/3");

    let a1 = parse_description("algebra = \"A1\"\n").unwrap();
    let r = run_command(Command::TensorKunneth, &a1, None, &opts(6));
    assert_eq!(r.status, Status::Pass, "{}", r.render());
    assert_eq!(r.tables["tensor_dims"], r.tables["convolution"]);
}

#[test]
fn check_presentation_of_a3() {
    let desc =
        parse_description("algebra = \"A3\"\n[candidates]\nw = (x*y + y*x)^3\n[options]\nmax-degree = 12\n").unwrap();
    let r = run_command(Command::CheckPresentation, &desc, None, &RunOptions::resolve(&desc, None, None, None, false));
    assert_eq!(r.status, Status::Pass, "{}", r.render());
    assert_eq!(r.tables["cohomology_dims"], serde_json::json!([1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1]));

    let desc = parse_description("algebra = \"A3\"\n[candidates]\nw = x*y + y*x\n").unwrap();
    let r = run_command(Command::CheckPresentation, &desc, None, &opts(6));
    assert_eq!(r.status, Status::Fail);
}
