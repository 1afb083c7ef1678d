#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use signrank::exactnum::{int, rat, Rational};
use signrank::geometry::{Configuration, OrientedHyperplane, Point};
use signrank::pattern::{EquivalenceWitness, SignPattern};
use signrank::Sign;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_sign(rng: &mut ChaCha8Rng, zero_weight: f64) -> Sign {
    if rng.gen_bool(zero_weight) {
        Sign::Zero
    } else if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub fn random_pattern(rng: &mut ChaCha8Rng, m: usize, n: usize, zero_weight: f64) -> SignPattern {
    SignPattern::from_fn(m, n, |_, _| random_sign(rng, zero_weight))
}

pub fn random_transform(rng: &mut ChaCha8Rng, m: usize, n: usize) -> EquivalenceWitness {
    let mut row_perm: Vec<usize> = (0..m).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    row_perm.shuffle(rng);
    col_perm.shuffle(rng);
    let pm = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
    EquivalenceWitness {
        row_perm,
        col_perm,
        row_signs: (0..m).map(|_| pm(rng)).collect(),
        col_signs: (0..n).map(|_| pm(rng)).collect(),
    }
}

pub fn small_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    loop {
        let x = small_rational(rng, span);
        if x != int(0) {
            return x;
        }
    }
}

/// Normal-form pair: U m x r with a ones column first, V r x n with a ones row last.
pub fn random_normal_form(rng: &mut ChaCha8Rng, m: usize, n: usize, r: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let u = (0..m)
        .map(|_| (0..r).map(|k| if k == 0 { int(1) } else { small_rational(rng, 3) }).collect())
        .collect();
    let v = (0..r)
        .map(|k| (0..n).map(|_| if k == r - 1 { int(1) } else { small_rational(rng, 3) }).collect())
        .collect();
    (u, v)
}

/// Term rank by brute force: pad to a square and maximize nonzero diagonal
/// terms over every permutation.
pub fn term_rank_oracle(a: &SignPattern) -> usize {
    let k = a.rows().max(a.cols());
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best = 0;
    permutations(&mut perm, 0, &mut |p| {
        let count = (0..a.rows())
            .filter(|&i| p[i] < a.cols() && !a.get(i, p[i]).is_zero())
            .count();
        best = best.max(count);
    });
    best
}

pub fn permutations(p: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Rank at most one, by brute force over sign vectors x, y with a_ij = x_i y_j.
pub fn mr_le1_oracle(a: &SignPattern) -> bool {
    let signs = [Sign::Neg, Sign::Zero, Sign::Pos];
    let vectors = |len: usize| -> Vec<Vec<Sign>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| signs.iter().map(move |&s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                }))
                .collect();
        }
        out
    };
    let xs = vectors(a.rows());
    let ys = vectors(a.cols());
    xs.iter().any(|x| ys.iter().any(|y| (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == x[i] * y[j]))))
}

/// Sign nonsingular by expanding the determinant: some term is nonzero and
/// all nonzero terms share a sign.
pub fn sns_oracle(a: &SignPattern) -> bool {
    assert_eq!(a.rows(), a.cols());
    let mut perm: Vec<usize> = (0..a.rows()).collect();
    let mut seen = [false; 2];
    permutations(&mut perm, 0, &mut |p| {
        let mut s = if parity(p) { Sign::Neg } else { Sign::Pos };
        for (i, &j) in p.iter().enumerate() {
            s = s * a.get(i, j);
        }
        match s {
            Sign::Pos => seen[0] = true,
            Sign::Neg => seen[1] = true,
            Sign::Zero => {}
        }
    });
    seen[0] != seen[1]
}

fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

pub fn rational_config(points: &[(Rational, Rational)], lines: &[[Rational; 3]]) -> Configuration {
    Configuration::new(
        2,
        signrank::QuadField::RATIONALS,
        points.iter().map(|(x, y)| Point::rational(&[x.clone(), y.clone()])).collect(),
        lines.iter().map(|l| OrientedHyperplane::rational(l)).collect(),
    )
    .expect("valid configuration")
}

/// Random planar configuration with 5 points and 7 non-vertical lines; each
/// line goes through at most two points. Returned with its encoding.
pub fn random_sparse_incidence(rng: &mut ChaCha8Rng) -> (Configuration, SignPattern) {
    loop {
        let points: Vec<(Rational, Rational)> = (0..5)
            .map(|_| (int(rng.gen_range(-9..=9)), int(rng.gen_range(-9..=9))))
            .collect();
        let mut lines = Vec::new();
        for _ in 0..7 {
            let through = rng.gen_range(0..=2usize);
            let mut idx: Vec<usize> = (0..5).collect();
            idx.shuffle(rng);
            let line = match through {
                2 => {
                    let (p, q) = (&points[idx[0]], &points[idx[1]]);
                    // (y - py)(qx - px) - (x - px)(qy - py) = 0, normalized later
                    let c1 = -(&q.1 - &p.1);
                    let c2 = &q.0 - &p.0;
                    let c0 = -(&c1 * &p.0 + &c2 * &p.1);
                    [c0, c1, c2]
                }
                1 => {
                    let p = &points[idx[0]];
                    let slope = small_rational(rng, 4);
                    let c0 = &slope * &p.0 - &p.1;
                    [c0, -slope, int(1)]
                }
                _ => [small_rational(rng, 12), small_rational(rng, 4), int(1)],
            };
            if line[2] == int(0) {
                break;
            }
            let c2 = line[2].clone();
            lines.push([&line[0] / &c2, &line[1] / &c2, int(1)]);
        }
        if lines.len() < 7 {
            continue;
        }
        let c = rational_config(&points, &lines);
        let Ok(a) = signrank::geometry::encode_configuration(&c) else {
            continue;
        };
        if (0..a.cols()).all(|j| a.col_zero_count(j) <= 2) {
            return (c, a);
        }
    }
}
