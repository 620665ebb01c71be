use rug::Integer;

use super::certify::verify_witness;
use super::matrix::weight;
use super::{ApproxProblem, OtrError, Witness, WitnessKind};
use crate::lll::Basis;
use crate::zeros::ZeroTable;

fn check_shape(reduced: &Basis, problem: &ApproxProblem) -> Result<(), OtrError> {
    let dim = problem.n + 2;
    if reduced.dim() != dim {
        return Err(OtrError::Problem(format!(
            "basis has dimension {}, expected {dim}",
            reduced.dim()
        )));
    }
    Ok(())
}

/// Certifies the inhomogeneous witness y = |s|/2^c read off the reduced
/// vector whose last coordinate is ±2^b N^d. If several vectors qualify,
/// the one with the largest certified bound is kept.
pub fn extract_inhomogeneous(
    reduced: &Basis,
    problem: &ApproxProblem,
    table: &ZeroTable,
    prec: u32,
) -> Result<Witness, OtrError> {
    problem.validate(table)?;
    check_shape(reduced, problem)?;
    let n = problem.n;
    let w = weight(problem);
    let mut best: Option<Witness> = None;
    for col in reduced.columns() {
        let last = &col[n + 1];
        if *last.as_abs() != w {
            continue;
        }
        // Normalise the last coordinate to +2^b N^d before reading s.
        let s = if *last < 0 {
            Integer::from(-&col[n])
        } else {
            col[n].clone()
        };
        if s == 0 {
            continue;
        }
        let witness = verify_witness(&s, problem.c, WitnessKind::Inhomogeneous, n, table, prec)?;
        if best.as_ref().is_none_or(|b| witness.bound > b.bound) {
            best = Some(witness);
        }
    }
    best.ok_or(OtrError::NoInhomogeneousVector)
}

/// All homogeneous candidates z = |t|/2^c from reduced vectors
/// (r_1, …, r_N, t, 0) with t ≠ 0, each certified.
pub fn extract_homogeneous_candidates(
    reduced: &Basis,
    problem: &ApproxProblem,
    table: &ZeroTable,
    prec: u32,
) -> Result<Vec<Witness>, OtrError> {
    problem.validate(table)?;
    check_shape(reduced, problem)?;
    let n = problem.n;
    let mut seen: Vec<Integer> = Vec::new();
    let mut out = Vec::new();
    for col in reduced.columns() {
        if col[n + 1] != 0 || col[n] == 0 {
            continue;
        }
        let t = Integer::from(col[n].abs_ref());
        if seen.contains(&t) {
            continue;
        }
        seen.push(t);
        out.push(verify_witness(&col[n], problem.c, WitnessKind::Homogeneous, n, table, prec)?);
    }
    Ok(out)
}

/// The homogeneous candidate with the most negative certified bound.
pub fn extract_homogeneous(
    reduced: &Basis,
    problem: &ApproxProblem,
    table: &ZeroTable,
    prec: u32,
) -> Result<Witness, OtrError> {
    extract_homogeneous_candidates(reduced, problem, table, prec)?
        .into_iter()
        .reduce(|best, w| if w.bound < best.bound { w } else { best })
        .ok_or(OtrError::NoHomogeneousVector)
}
