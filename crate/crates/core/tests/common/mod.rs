#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use gosc_core::lll::{gram_schmidt_exact, Basis};
use gosc_core::ZeroTable;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub const MAIN_TABLE: &str = "zeros_2001_d3011.txt";
pub const DEEP_TABLE: &str = "zeros_650_d4817.txt";

pub fn main_table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| ZeroTable::load(fixture(MAIN_TABLE), 0).expect("main fixture"))
}

pub fn deep_table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| ZeroTable::load(fixture(DEEP_TABLE), 0).expect("deep fixture"))
}

/// A random full-rank basis with `count` vectors of length `dim`, entries
/// in [-bound, bound], optionally skewed by a random unimodular transform.
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize, count: usize, bound: i64, skew: bool) -> Basis {
    loop {
        let cols: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let mut basis = Basis::from_columns_i64(&cols).unwrap();
        if gram_schmidt_exact(&basis).is_err() {
            continue;
        }
        if skew {
            basis = random_unimodular_mix(rng, &basis, 3 * count);
        }
        return basis;
    }
}

/// Applies `steps` random elementary column operations b_i += k·b_j.
pub fn random_unimodular_mix(rng: &mut ChaCha8Rng, basis: &Basis, steps: usize) -> Basis {
    let mut cols = basis.columns().to_vec();
    let n = cols.len();
    if n < 2 {
        return basis.clone();
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k: i64 = rng.gen_range(-3..=3);
        let src = cols[j].clone();
        for (t, s) in cols[i].iter_mut().zip(&src) {
            *t += Integer::from(s * k);
        }
    }
    Basis::from_columns(cols).unwrap()
}

/// Squared length of the shortest nonzero lattice vector, by exact
/// Fincke–Pohst enumeration over rational Gram–Schmidt data.
pub fn shortest_norm_sq(basis: &Basis) -> Integer {
    let n = basis.len();
    let gs = gram_schmidt_exact(basis).expect("independent basis");
    // B_i = d_{i+1}/d_i, mu_ij = lambda_ij / d_{j+1}
    let b: Vec<Rational> = (0..n)
        .map(|i| Rational::from((gs.d[i + 1].clone(), gs.d[i].clone())))
        .collect();
    let mu: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..i)
                .map(|j| Rational::from((gs.lambda[i][j].clone(), gs.d[j + 1].clone())))
                .collect()
        })
        .collect();
    let mut best = (0..n).map(|j| basis.norm_sq(j)).min().unwrap();
    let mut x = vec![Integer::new(); n];
    enumerate(n, &b, &mu, &mut x, Rational::new(), &mut best, basis);
    best
}

fn enumerate(
    level: usize,
    b: &[Rational],
    mu: &[Vec<Rational>],
    x: &mut Vec<Integer>,
    partial: Rational,
    best: &mut Integer,
    basis: &Basis,
) {
    if level == 0 {
        if x.iter().all(|v| *v == 0) {
            return;
        }
        let mut v = vec![Integer::new(); basis.dim()];
        for (coef, col) in x.iter().zip(basis.columns()) {
            for (t, s) in v.iter_mut().zip(col) {
                *t += Integer::from(coef * s);
            }
        }
        let norm: Integer = v.iter().map(|t| Integer::from(t.square_ref())).sum();
        if norm < *best {
            *best = norm;
        }
        return;
    }
    let i = level - 1;
    // centre c = -Σ_{j>i} x_j μ_ji
    let mut c = Rational::new();
    for j in level..x.len() {
        c -= Rational::from(&mu[j][i] * &x[j]);
    }
    let room = Rational::from(&*best) - &partial;
    if room < 0 {
        return;
    }
    // (x_i - c)² B_i ≤ room
    let span_sq = Rational::from(&room / &b[i]);
    let span = span_sq.to_f64().sqrt() + 1.0;
    let lo = (c.to_f64() - span).floor() as i64;
    let hi = (c.to_f64() + span).ceil() as i64;
    for xi in lo..=hi {
        let diff = Rational::from(xi) - &c;
        let term = Rational::from(diff.square_ref()) * &b[i];
        let next = Rational::from(&partial + &term);
        if next > *best {
            continue;
        }
        x[i] = Integer::from(xi);
        enumerate(level - 1, b, mu, x, next, best, basis);
    }
    x[i] = Integer::new();
}
