//! L²-style reduction: exact basis and Gram matrix, floating-point r/μ.
//!
//! Row κ of the Gram–Schmidt data is recomputed from the exact Gram matrix on
//! every size-reduction pass, so floating-point error never accumulates
//! across passes. A failed Lovász test moves b_κ down to the first position
//! where the condition holds.

use std::cmp::Ordering;

use rug::{Integer, Rational};

use super::fp::FpCtx;
use super::{dot, Basis, LllError, ReductionParams};

pub(crate) enum Failure {
    /// Precision too low for this basis; the partially reduced basis is still valid.
    Stalled { iterations: u64 },
    Fatal(LllError),
}

pub(crate) struct Run {
    pub iterations: u64,
    pub insertions: u64,
}

fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64()
}

pub(crate) fn reduce<C: FpCtx>(
    basis: &mut Basis,
    params: &ReductionParams,
    ctx: &C,
    budget: u64,
) -> Result<Run, Failure> {
    let n = basis.len();
    let cols = &mut basis.columns;

    // Internal thresholds are slightly stricter than the requested ones so
    // that floating-point slack does not push the exact result over them.
    let delta = rational_to_f64(params.delta());
    let eta = rational_to_f64(params.eta());
    let delta_bar = ctx.from_f64(delta + (1.0 - delta) / 8.0);
    let eta_bar = ctx.from_f64(eta - (eta - 0.5) / 2.0 + if eta == 0.5 { 1e-9 } else { 0.0 });
    let half = ctx.from_f64(0.5);

    let mut gram: Vec<Vec<Integer>> = vec![vec![Integer::new(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let g = dot(&cols[i], &cols[j]);
            gram[j][i] = g.clone();
            gram[i][j] = g;
        }
    }
    for (i, row) in gram.iter().enumerate() {
        if row[i] == 0 {
            return Err(Failure::Fatal(LllError::Dependent { index: i }));
        }
    }

    let mut r: Vec<Vec<C::F>> = vec![vec![ctx.zero(); n]; n];
    let mut mu: Vec<Vec<C::F>> = vec![vec![ctx.zero(); n]; n];
    let mut s: Vec<C::F> = vec![ctx.zero(); n + 1];
    if n == 0 {
        return Ok(Run {
            iterations: 0,
            insertions: 0,
        });
    }
    r[0][0] = ctx.from_int(&gram[0][0]);

    let mut run = Run {
        iterations: 0,
        insertions: 0,
    };
    let mut kappa = 1usize;
    while kappa < n {
        run.iterations += 1;
        if run.iterations > budget {
            return Err(Failure::Stalled {
                iterations: run.iterations - 1,
            });
        }

        // Lazy size reduction of b_κ against b_0..b_{κ-1}.
        let mut passes = 0u32;
        let mut last_max: Option<f64> = None;
        let mut stuck = 0u32;
        loop {
            for j in 0..kappa {
                let mut acc = ctx.from_int(&gram[kappa][j]);
                for i in 0..j {
                    acc = ctx.sub(&acc, &ctx.mul(&mu[j][i], &r[kappa][i]));
                }
                mu[kappa][j] = ctx.div(&acc, &r[j][j]);
                r[kappa][j] = acc;
            }
            let mut max_mu = ctx.zero();
            for j in 0..kappa {
                let a = ctx.abs(&mu[kappa][j]);
                if !ctx.is_finite(&a) {
                    return Err(Failure::Stalled {
                        iterations: run.iterations,
                    });
                }
                if ctx.cmp(&a, &max_mu) == Ordering::Greater {
                    max_mu = a;
                }
            }
            if ctx.cmp(&max_mu, &eta_bar) != Ordering::Greater {
                break;
            }
            // Progress check: the largest coefficient must keep shrinking
            // once it is small enough for rounding to be the bottleneck.
            let lg = ctx.log2_abs(&max_mu).unwrap_or(f64::NEG_INFINITY);
            if let Some(prev) = last_max {
                if lg >= prev - 0.5 && lg < 8.0 {
                    stuck += 1;
                } else {
                    stuck = 0;
                }
            }
            last_max = Some(lg);
            passes += 1;
            if stuck >= 3 || passes > 500 {
                return Err(Failure::Stalled {
                    iterations: run.iterations,
                });
            }

            let mut xs: Vec<(usize, Integer)> = Vec::new();
            for j in (0..kappa).rev() {
                if ctx.cmp(&ctx.abs(&mu[kappa][j]), &half) != Ordering::Greater {
                    continue;
                }
                let x = ctx.round(&mu[kappa][j]);
                if x == 0 {
                    continue;
                }
                let xf = ctx.from_int(&x);
                for i in 0..j {
                    mu[kappa][i] = ctx.sub(&mu[kappa][i], &ctx.mul(&xf, &mu[j][i]));
                }
                xs.push((j, x));
            }
            if xs.is_empty() {
                return Err(Failure::Stalled {
                    iterations: run.iterations,
                });
            }
            apply_size_reduction(cols, &mut gram, kappa, &xs);
            if gram[kappa][kappa] == 0 {
                return Err(Failure::Fatal(LllError::Dependent { index: kappa }));
            }
        }

        // s_j = squared norm of b_κ projected orthogonally to b_0..b_{j-1}.
        s[0] = ctx.from_int(&gram[kappa][kappa]);
        for j in 1..=kappa {
            s[j] = ctx.sub(&s[j - 1], &ctx.mul(&mu[kappa][j - 1], &r[kappa][j - 1]));
        }
        let source = kappa;
        let mut target = kappa;
        while target >= 1
            && ctx.cmp(&ctx.mul(&delta_bar, &r[target - 1][target - 1]), &s[target - 1])
                == Ordering::Greater
        {
            target -= 1;
        }
        if !ctx.is_positive(&s[target]) || !ctx.is_finite(&s[target]) {
            return Err(Failure::Stalled {
                iterations: run.iterations,
            });
        }
        if target != source {
            run.insertions += 1;
            let row_mu = mu[source].clone();
            let row_r = r[source].clone();
            for i in 0..target {
                mu[target][i] = row_mu[i].clone();
                r[target][i] = row_r[i].clone();
            }
            move_vector(cols, &mut gram, source, target);
        }
        r[target][target] = s[target].clone();
        kappa = target + 1;
    }
    Ok(run)
}

/// b_κ ← b_κ − Σ x_j b_j, with the matching exact Gram update.
fn apply_size_reduction(
    cols: &mut [Vec<Integer>],
    gram: &mut [Vec<Integer>],
    kappa: usize,
    xs: &[(usize, Integer)],
) {
    let n = cols.len();
    for (j, x) in xs {
        let (target, source) = if *j < kappa {
            let (lo, hi) = cols.split_at_mut(kappa);
            (&mut hi[0], &lo[*j])
        } else {
            unreachable!("size reduction only uses earlier vectors")
        };
        for (t, s) in target.iter_mut().zip(source.iter()) {
            *t -= x * s;
        }
    }
    for i in 0..n {
        if i == kappa {
            continue;
        }
        let mut g = gram[kappa][i].clone();
        for (j, x) in xs {
            g -= x * &gram[*j][i];
        }
        gram[kappa][i] = g.clone();
        gram[i][kappa] = g;
    }
    gram[kappa][kappa] = dot(&cols[kappa], &cols[kappa]);
}

/// Moves vector `from` to position `to` (< from), shifting the others up.
fn move_vector(cols: &mut [Vec<Integer>], gram: &mut [Vec<Integer>], from: usize, to: usize) {
    cols[to..=from].rotate_right(1);
    gram[to..=from].rotate_right(1);
    for row in gram.iter_mut() {
        row[to..=from].rotate_right(1);
    }
}
