use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cochain::families::CrisscrossTuple;
use cochain::field::{NumberField, Scalar};
use cochain::linalg::ExactMatrix;

/// `d²(x_i)` for `d(x_i) = Σ M^i_{pq} x_p x_q`, expanded by hand in the free algebra.
pub fn d_squared_vanishes(m: &[Vec<Vec<BigRational>>]) -> bool {
    let n = m.len();
    for i in 0..n {
        let mut acc: HashMap<[usize; 3], BigRational> = HashMap::new();
        for p in 0..n {
            for q in 0..n {
                let c = &m[i][p][q];
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    for s in 0..n {
                        // d(x_p) x_q
                        *acc.entry([r, s, q]).or_insert_with(BigRational::zero) += c * &m[p][r][s];
                        // − x_p d(x_q)
                        *acc.entry([p, r, s]).or_insert_with(BigRational::zero) -= c * &m[q][r][s];
                    }
                }
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}

pub fn tuple(k: &NumberField, m: &[Vec<Vec<BigRational>>]) -> CrisscrossTuple {
    let n = m.len();
    let mats = m
        .iter()
        .map(|mi| {
            let rows = mi.iter().map(|r| r.iter().map(|x| Scalar::from_ratio(x.clone())).collect()).collect();
            ExactMatrix::from_rows(k, n, rows)
        })
        .collect();
    CrisscrossTuple::new(mats).unwrap()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_tuple(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Vec<BigRational>>> {
    // sparse entries make d² = 0 common enough to exercise both answers
    let density = rng.gen_range(0.1..0.9);
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}
