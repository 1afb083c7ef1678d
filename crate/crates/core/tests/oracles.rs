//! Exhaustive and brute-force cross-checks against independent oracles.

mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use signrank::exactnum::{rational_from_f64, rational_round, Rational};
use signrank::pattern::{is_mr1, is_mr2, is_sns, max_sns_submatrix, term_rank, SignPattern};
use signrank::{QuadElem, QuadField, Sign};

fn all_3x3() -> impl Iterator<Item = SignPattern> {
    (0..19683u32).map(|mut code| {
        SignPattern::from_fn(3, 3, |_, _| {
            let s = [Sign::Neg, Sign::Zero, Sign::Pos][(code % 3) as usize];
            code /= 3;
            s
        })
    })
}

#[test]
fn mr2_agrees_with_tiny_oracle_on_every_3x3_pattern() {
    for a in all_3x3() {
        // for three rows: mr <= 1 by sign vectors, mr = 3 iff sign nonsingular
        let zero = a.zero_count() == 9;
        let expected = !zero && !mr_le1_oracle(&a) && !sns_oracle(&a);
        assert_eq!(is_mr2(&a).unwrap(), expected, "{a:?}");
        assert_eq!(is_mr1(&a), !zero && mr_le1_oracle(&a), "{a:?}");
    }
}

#[test]
fn sns_and_term_rank_on_every_3x3_pattern() {
    for a in all_3x3() {
        assert_eq!(is_sns(&a).unwrap(), sns_oracle(&a), "{a:?}");
        assert_eq!(term_rank(&a), term_rank_oracle(&a), "{a:?}");
    }
}

fn max_sns_oracle(a: &SignPattern) -> usize {
    let (m, n) = a.shape();
    let mut best = 0;
    for rmask in 1u32..(1 << m) {
        for cmask in 1u32..(1 << n) {
            if rmask.count_ones() != cmask.count_ones() || (rmask.count_ones() as usize) <= best {
                continue;
            }
            let rows: Vec<usize> = (0..m).filter(|i| rmask >> i & 1 == 1).collect();
            let cols: Vec<usize> = (0..n).filter(|j| cmask >> j & 1 == 1).collect();
            if sns_oracle(&a.submatrix(&rows, &cols)) {
                best = rows.len();
            }
        }
    }
    best
}

#[test]
fn max_sns_matches_brute_force() {
    let mut rng = rng(11);
    for _ in 0..300 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = random_pattern(&mut rng, m, n, 0.4);
        let got = max_sns_submatrix(&a, 5);
        assert_eq!(got.size, max_sns_oracle(&a), "{a:?}");
        if got.size > 0 {
            assert!(sns_oracle(&a.submatrix(&got.rows, &got.cols)));
        }
    }
}

/// Best approximation by scanning every denominator.
fn round_oracle(x: f64, max_den: i64) -> Rational {
    let exact = rational_from_f64(x).unwrap();
    let mut best: Option<(Rational, Rational)> = None;
    for q in 1..=max_den {
        let qq = BigInt::from(q);
        let scaled = &exact * Rational::from_integer(qq.clone());
        let floor = scaled.floor().to_integer();
        for p in [floor.clone(), floor + 1] {
            let cand = Rational::new(p, qq.clone());
            let err = (&cand - &exact).abs();
            let better = match &best {
                None => true,
                // strict: on ties the earlier (smaller) denominator stays
                Some((_, e)) => err < *e,
            };
            if better {
                best = Some((cand, err));
            }
        }
    }
    best.unwrap().0
}

#[test]
fn rational_round_is_best_approximation() {
    let mut rng = rng(12);
    for _ in 0..400 {
        let x: f64 = rng.gen_range(-20.0..20.0);
        let n = rng.gen_range(1..=1000);
        assert_eq!(rational_round(x, n as u128).unwrap(), round_oracle(x, n), "x = {x}, n = {n}");
    }
    for x in [std::f64::consts::PI, std::f64::consts::E, 0.5, -0.5, 1.0 / 3.0] {
        assert_eq!(rational_round(x, 1000).unwrap(), round_oracle(x, 1000));
    }
}

/// floor(sqrt(d) * 10^60) by integer square root.
fn sqrt_scaled(d: u64) -> BigInt {
    (BigInt::from(d) * BigInt::from(10u32).pow(120)).sqrt()
}

/// Sign of r + s*sqrt(d) from a 60-digit approximation, or None when the
/// approximation cannot separate it from zero.
fn sign_oracle(x: &QuadElem, d: u64) -> Option<Sign> {
    let scale = BigInt::from(10u32).pow(60);
    let (a, b) = (x.r.numer().clone(), x.r.denom().clone());
    let (c, e) = (x.s.numer().clone(), x.s.denom().clone());
    // sign(a/b + c/e sqrt d) = sign(a e + c b sqrt d) since b, e > 0
    let t = &a * &e * &scale + &c * &b * sqrt_scaled(d);
    let slack = (&c * &b).abs();
    if t.abs() <= slack {
        return None;
    }
    Some(if t.is_positive() { Sign::Pos } else { Sign::Neg })
}

#[test]
fn quadratic_sign_matches_high_precision_evaluation() {
    let mut rng = rng(13);
    for &d in &[2u64, 3, 5, 7, 13, 21] {
        let f = QuadField::new(d).unwrap();
        for _ in 0..300 {
            let x = QuadElem::new(small_rational(&mut rng, 50), small_rational(&mut rng, 50));
            if x.is_zero() {
                assert_eq!(f.sign(&x), Sign::Zero);
                continue;
            }
            assert_eq!(Some(f.sign(&x)), sign_oracle(&x, d), "{x:?} d = {d}");
        }
        // near cancellation: p - q sqrt(d) for continued-fraction convergents
        let (mut p0, mut q0, mut p1, mut q1) = (BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::from(1));
        let s = sqrt_scaled(d);
        let scale = BigInt::from(10u32).pow(60);
        let (mut n, mut den) = (s, scale);
        for _ in 0..20 {
            if den.is_zero() {
                break;
            }
            let a = &n / &den;
            let p2 = &a * &p0 + &p1;
            let q2 = &a * &q0 + &q1;
            p1 = std::mem::replace(&mut p0, p2);
            q1 = std::mem::replace(&mut q0, q2);
            let rem = &n - &a * &den;
            n = std::mem::replace(&mut den, rem);
            let x = QuadElem::new(Rational::from_integer(p0.clone()), Rational::from_integer(-q0.clone()));
            if let Some(s) = sign_oracle(&x, d) {
                assert_eq!(f.sign(&x), s, "convergent {p0}/{q0} of sqrt {d}");
            }
        }
    }
}
