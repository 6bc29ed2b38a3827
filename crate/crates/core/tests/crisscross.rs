mod common;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cochain::dg::validate_dg;
use cochain::families::{crisscross_check, dg_free_unchecked, make_dg_free, CrisscrossTuple};
use cochain::field::NumberField;

use common::{d_squared_vanishes, random_tuple, ratio, tuple};

fn engine_d_squared(t: &CrisscrossTuple) -> bool {
    validate_dg(&dg_free_unchecked(t), 0).checks.iter().filter(|c| c.name.starts_with("d²")).all(|c| c.passed)
}

#[test]
fn exhaustive_sign_tuples_in_two_variables() {
    let k = NumberField::rationals();
    let mut agree = 0;
    let mut holds = 0;
    for code in 0..3usize.pow(8) {
        let mut c = code;
        let mut entry = || {
            let v = (c % 3) as i64 - 1;
            c /= 3;
            ratio(v, 1)
        };
        let m: Vec<Vec<Vec<BigRational>>> =
            (0..2).map(|_| (0..2).map(|_| (0..2).map(|_| entry()).collect()).collect()).collect();
        let t = tuple(&k, &m);
        let v = crisscross_check(&t);
        let oracle = d_squared_vanishes(&m);
        assert_eq!(v.holds, oracle, "tuple {m:?}");
        assert_eq!(v.holds, v.witness.is_none());
        agree += 1;
        holds += oracle as usize;
    }
    assert_eq!(agree, 6561);
    assert!(holds > 1 && holds < 6561);
}

#[test]
fn random_rational_tuples_agree_with_d_squared() {
    let k = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..1200 {
        let n = if round < 1000 { 2 } else { 3 };
        let m = random_tuple(&mut rng, n);
        let t = tuple(&k, &m);
        let oracle = d_squared_vanishes(&m);
        assert_eq!(crisscross_check(&t).holds, oracle, "tuple {m:?}");
        assert_eq!(engine_d_squared(&t), oracle, "tuple {m:?}");
        assert_eq!(make_dg_free(&t).is_ok(), oracle);
    }
}

#[test]
fn known_crisscross_families() {
    let k = NumberField::rationals();
    // d(x) = x², d(y) = xy + yx is a DG free algebra
    let m = vec![
        vec![vec![ratio(1, 1), ratio(0, 1)], vec![ratio(0, 1), ratio(0, 1)]],
        vec![vec![ratio(0, 1), ratio(1, 1)], vec![ratio(1, 1), ratio(0, 1)]],
    ];
    assert!(d_squared_vanishes(&m));
    assert!(crisscross_check(&tuple(&k, &m)).holds);
    // d(x) = xy is not
    let m = vec![
        vec![vec![ratio(0, 1), ratio(1, 1)], vec![ratio(0, 1), ratio(0, 1)]],
        vec![vec![ratio(0, 1), ratio(0, 1)], vec![ratio(0, 1), ratio(0, 1)]],
    ];
    assert!(!d_squared_vanishes(&m));
    assert!(crisscross_check(&tuple(&k, &m)).witness.is_some());
}
