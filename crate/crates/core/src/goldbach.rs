//! Desk-scale empirical harness for the explicit formula of Σ_{n≤x} R(n),
//! where R(n) = Σ_{a+b=n} Λ(a)Λ(b).
//!
//! Nothing here is certified; it is a numerical cross-check of the main
//! term and the truncated zero sum against brute force.

use std::fmt::Write as _;

use rug::Float;
use thiserror::Error;

use crate::gfunc::{evaluate_g, BoundError};
use crate::zeros::ZeroTable;

/// Working precision of the harness.
pub const GOLDBACH_PREC: u32 = 128;
/// Default cap on x.
pub const DEFAULT_MAX_X: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum GoldbachError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("x = {x} exceeds the configured limit {limit}")]
    TooLarge { x: u64, limit: u64 },
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// For every n ≤ limit, the prime p if n = p^k (k ≥ 1), else 0.
#[derive(Clone, Debug)]
pub struct PrimePowerSieve {
    base: Vec<u32>,
    logs: Vec<Option<Float>>,
    prec: u32,
}

impl PrimePowerSieve {
    /// Linear sieve up to `limit` inclusive.
    pub fn new(limit: u32, prec: u32) -> Self {
        let len = limit as usize + 1;
        let mut smallest = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..len {
            if smallest[i] == 0 {
                smallest[i] = i as u32;
                primes.push(i as u32);
            }
            let spf = smallest[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > spf || j >= len {
                    break;
                }
                smallest[j] = p;
            }
        }
        // n is a prime power iff n / spf(n) is 1 or again a power of spf(n).
        let mut base = vec![0u32; len];
        for n in 2..len {
            let p = smallest[n];
            let rest = n / p as usize;
            if rest == 1 || base[rest] == p {
                base[n] = p;
            }
        }
        let mut logs = vec![None; len];
        for &p in &primes {
            logs[p as usize] = Some(Float::with_val(prec, p).ln());
        }
        PrimePowerSieve { base, logs, prec }
    }

    pub fn limit(&self) -> u32 {
        (self.base.len() - 1) as u32
    }

    /// Λ(n) for 1 ≤ n ≤ limit.
    pub fn lambda(&self, n: u32) -> Option<&Float> {
        match self.base.get(n as usize) {
            Some(&p) if p != 0 => self.logs[p as usize].as_ref(),
            _ => None,
        }
    }

    /// The n ≤ limit with Λ(n) ≠ 0, ascending.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.base
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(n, _)| n as u32)
    }
}

/// Λ(n): log p if n is a power of the prime p, otherwise 0.
pub fn von_mangoldt(n: u64, prec: u32) -> Float {
    if n < 2 {
        return Float::new(prec);
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 {
                Float::with_val(prec, p).ln()
            } else {
                Float::new(prec)
            };
        }
        p += 1;
    }
    Float::with_val(prec, m).ln()
}

/// R(n) = Σ_{a=1}^{n−1} Λ(a)Λ(n−a).
pub fn r_of_n(n: u64, prec: u32) -> Float {
    let mut sum = Float::new(prec);
    for a in 1..n {
        let la = von_mangoldt(a, prec);
        if la.is_zero() {
            continue;
        }
        let lb = von_mangoldt(n - a, prec);
        if !lb.is_zero() {
            sum += la * lb;
        }
    }
    sum
}

/// The singular series with its tail bound.
#[derive(Clone, Debug)]
pub struct SingularSeries {
    pub value: Float,
    /// Bound on |S(n) − value| from truncating the product at the cutoff.
    pub truncation_error: Float,
}

/// S(n) = Π_{p|n} (1 + 1/(p−1)) · Π_{p∤n} (1 − 1/(p−1)²), the second
/// product truncated at `prime_cutoff`.
///
/// The omitted factors all lie in (1 − 1/(p−1)², 1], and
/// Π_{p>P}(1 − 1/(p−1)²) ≥ 1 − Σ_{m≥P} 1/m² ≥ 1 − 1/(P−1), so the truncated
/// value overshoots S(n) by at most value/(P−1).
pub fn singular_series(n: u64, prime_cutoff: u64, prec: u32) -> Result<SingularSeries, GoldbachError> {
    if n < 2 {
        return Err(GoldbachError::Precondition("n must be at least 2".into()));
    }
    if prime_cutoff < 3 {
        return Err(GoldbachError::Precondition("prime cutoff must be at least 3".into()));
    }
    if n % 2 == 1 {
        return Ok(SingularSeries {
            value: Float::new(prec),
            truncation_error: Float::new(prec),
        });
    }
    let limit = prime_cutoff.max(n_max_prime_factor(n)) as u32;
    let sieve = PrimePowerSieve::new(limit, 16);
    let mut value = Float::with_val(prec, 1);
    for p in sieve.support() {
        let p = p as u64;
        if sieve.base[p as usize] as u64 != p {
            continue;
        }
        let pm1 = Float::with_val(prec, p - 1);
        if n.is_multiple_of(p) {
            value *= Float::with_val(prec, 1) + Float::with_val(prec, pm1.recip_ref());
        } else if p <= prime_cutoff {
            let sq = Float::with_val(prec, pm1.square_ref());
            value *= Float::with_val(prec, 1) - Float::with_val(prec, sq.recip_ref());
        }
    }
    let truncation_error = Float::with_val(prec, &value / (prime_cutoff - 1));
    Ok(SingularSeries {
        value,
        truncation_error,
    })
}

fn n_max_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            best = p;
            n /= p;
        }
        p += 1;
    }
    best.max(n)
}

/// Σ_{n≤x} R(n) = Σ_{a<x} Λ(a) ψ(x − a), using prefix sums of Λ.
pub fn sum_r_sieve(x: u32, sieve: &PrimePowerSieve) -> Float {
    assert!(x <= sieve.limit(), "sieve too short");
    let prec = sieve.prec;
    let mut psi = Vec::with_capacity(x as usize + 1);
    let mut acc = Float::new(prec);
    psi.push(acc.clone());
    for n in 1..=x {
        if let Some(l) = sieve.lambda(n) {
            acc += l;
        }
        psi.push(acc.clone());
    }
    let mut sum = Float::new(prec);
    for a in sieve.support().take_while(|&a| a < x) {
        let l = sieve.lambda(a).expect("support element");
        sum += Float::with_val(prec, l * &psi[(x - a) as usize]);
    }
    sum
}

/// Σ_{a+b≤x} Λ(a)Λ(b) by a plain double loop over prime powers.
pub fn sum_r_direct(x: u32, sieve: &PrimePowerSieve) -> Float {
    assert!(x <= sieve.limit(), "sieve too short");
    let prec = sieve.prec;
    let support: Vec<u32> = sieve.support().take_while(|&a| a <= x).collect();
    let mut sum = Float::new(prec);
    for &a in &support {
        let la = sieve.lambda(a).expect("support element");
        for &b in &support {
            if a + b > x {
                break;
            }
            sum += Float::with_val(prec, la * sieve.lambda(b).expect("support element"));
        }
    }
    sum
}

#[derive(Clone, Debug)]
pub struct RSummary {
    pub x: u64,
    pub sum_r: Float,
    /// x²/2.
    pub main_term: Float,
    /// −4 x^{3/2} · (G(x) truncated at T).
    pub zero_term: Float,
    /// sum_r − main_term − zero_term.
    pub residual: Float,
}

impl RSummary {
    /// |residual| / main_term.
    pub fn relative_residual(&self) -> Float {
        Float::with_val(self.sum_r.prec(), &*self.residual.as_abs() / &self.main_term)
    }
}

/// Compares Σ_{n≤x} R(n) with x²/2 − 4x^{3/2}·G(x) truncated at height T.
pub fn compare_explicit_formula(
    x: u64,
    table: &ZeroTable,
    t: &Float,
    max_x: u64,
    prec: u32,
) -> Result<RSummary, GoldbachError> {
    if x < 100 {
        return Err(GoldbachError::Precondition(format!("x = {x} is below 100")));
    }
    if x > max_x || x > u32::MAX as u64 {
        return Err(GoldbachError::TooLarge { x, limit: max_x });
    }
    let sieve = PrimePowerSieve::new(x as u32, prec);
    let sum_r = sum_r_sieve(x as u32, &sieve);
    let xf = Float::with_val(prec, x);
    let main_term = Float::with_val(prec, xf.square_ref()) / 2u32;
    let g = evaluate_g(table, &xf, t, prec)?;
    let x32 = Float::with_val(prec, xf.sqrt_ref()) * &xf;
    let zero_term = -(x32 * g.partial * 4u32);
    let residual = Float::with_val(prec, &sum_r - &main_term) - &zero_term;
    Ok(RSummary {
        x,
        sum_r,
        main_term,
        zero_term,
        residual,
    })
}

/// CSV with header `x,sum_R,main_term,zero_term,residual`.
pub fn summaries_to_csv(rows: &[RSummary], digits: usize) -> String {
    let mut out = String::from("x,sum_R,main_term,zero_term,residual\n");
    let fmt = |v: &Float| v.to_string_radix(10, Some(digits));
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.x,
            fmt(&r.sum_r),
            fmt(&r.main_term),
            fmt(&r.zero_term),
            fmt(&r.residual)
        );
    }
    out
}
