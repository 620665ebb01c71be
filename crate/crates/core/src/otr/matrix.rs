use rug::ops::Pow;
use rug::{Float, Integer};

use super::{ApproxProblem, OtrError};
use crate::ball::Ball;
use crate::lll::Basis;
use crate::zeros::ZeroTable;

/// Nearest integer to every point of `x`, ties away from zero; fails if the
/// ball straddles a rounding boundary.
fn round_certified(x: &Ball, needed: u32, available: u32) -> Result<Integer, OtrError> {
    let lo = x.lower().round().to_integer();
    let hi = x.upper().round().to_integer();
    match (lo, hi) {
        (Some(lo), Some(hi)) if lo == hi => Ok(lo),
        _ => Err(OtrError::InsufficientPrecision { available, needed }),
    }
}

/// Ordinate γ_k as a ball whose radius covers the table's decimal rounding.
pub(crate) fn gamma_ball(table: &ZeroTable, k: usize, prec: u32) -> Ball {
    let g = table.gamma(k);
    Ball::with_error_bits(g.clone(), table.precision_bits() - 1).with_prec(prec)
}

/// The (N+2)-dimensional lattice whose short vectors encode simultaneous
/// approximations of γ_1 y, …, γ_N y to odd (or even) multiples of π.
///
/// Columns, in order:
/// * ⌊2^{b+1}π⌉ e_k for k = 1..N,
/// * e_{N+1} − Σ_k ⌊2^{b−c} γ_k⌉ e_k,
/// * 2^b N^d e_{N+2} + ⌊2^b π⌉ Σ_k e_k.
pub fn build_matrix(problem: &ApproxProblem, table: &ZeroTable) -> Result<Basis, OtrError> {
    problem.validate(table)?;
    let n = problem.n;
    let b = problem.b;
    let needed = b + super::TABLE_GUARD_BITS;
    let available = table.precision_bits();
    let prec = b + 128;

    let pi = Ball::pi(prec);
    let two_b = Float::with_val(prec, 1) << b;
    let pi_b = pi.mul(&Ball::exact(two_b.clone()));
    let round_pi_b = round_certified(&pi_b, needed, available)?;
    let round_pi_b1 = round_certified(&pi_b.mul_i64(2), needed, available)?;
    let scale = Ball::exact(Float::with_val(prec, 1) << (b - problem.c));

    let dim = n + 2;
    let mut columns = Vec::with_capacity(dim);
    for k in 0..n {
        let mut col = vec![Integer::new(); dim];
        col[k] = round_pi_b1.clone();
        columns.push(col);
    }
    let mut middle = vec![Integer::new(); dim];
    for (k, entry) in middle.iter_mut().enumerate().take(n) {
        let g = gamma_ball(table, k + 1, prec).mul(&scale);
        *entry = -round_certified(&g, needed, available)?;
    }
    middle[n] = Integer::from(1);
    columns.push(middle);

    let mut last = vec![round_pi_b; dim];
    last[n] = Integer::new();
    last[n + 1] = weight(problem);
    columns.push(last);

    Ok(Basis::from_columns(columns)?)
}

/// 2^b · N^d, the last entry of the final column.
pub(crate) fn weight(problem: &ApproxProblem) -> Integer {
    Integer::from(problem.n).pow(problem.d) << problem.b
}
