//! Big-integer LLL lattice basis reduction.
//!
//! The reduction itself runs the L² strategy: exact integer basis and Gram
//! matrix, floating-point Gram–Schmidt coefficients. The floating-point
//! backend starts as an extended-exponent double and escalates to MPFR at
//! growing precision when it stalls. Every result is verified in exact
//! integer arithmetic before it is returned; if the floating-point route
//! cannot produce a verifiable basis, the exact integral LLL takes over.

mod exact;
mod fp;
mod hnf;
mod l2;

use std::fmt;

use rug::{Integer, Rational};
use thiserror::Error;

pub use exact::{exact_lll, gram_schmidt_exact, verify_reduced, ExactGramSchmidt, Violation};
pub use fp::{FpCtx, MpfrCtx, XDouble, XDoubleCtx};
pub use hnf::{determinant, hermite_normal_form, hermite_normal_form_naive, same_lattice};

#[derive(Debug, Error)]
pub enum LllError {
    #[error("basis vectors are linearly dependent (vector {index})")]
    Dependent { index: usize },
    #[error("malformed basis: {0}")]
    Malformed(String),
    #[error("invalid reduction parameters: {0}")]
    Params(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("resource limit reached: {0}")]
    ResourceExhausted(String),
}

/// A lattice basis, stored as integer column vectors of equal length.
#[derive(Clone, PartialEq, Eq)]
pub struct Basis {
    columns: Vec<Vec<Integer>>,
    dim: usize,
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Basis")
            .field("dim", &self.dim)
            .field("vectors", &self.columns.len())
            .field("max_bits", &self.max_bits())
            .finish()
    }
}

impl Basis {
    pub fn from_columns(columns: Vec<Vec<Integer>>) -> Result<Self, LllError> {
        let dim = columns
            .first()
            .map(Vec::len)
            .ok_or_else(|| LllError::Malformed("no vectors".into()))?;
        if dim == 0 {
            return Err(LllError::Malformed("zero-length vectors".into()));
        }
        if let Some(bad) = columns.iter().position(|c| c.len() != dim) {
            return Err(LllError::Malformed(format!(
                "vector {bad} has length {}, expected {dim}",
                columns[bad].len()
            )));
        }
        Ok(Basis { columns, dim })
    }

    /// Builds a basis from row-major small entries; column `j` is `rows[·][j]`.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self, LllError> {
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LllError::Malformed("ragged rows".into()));
        }
        let columns = (0..ncols)
            .map(|j| rows.iter().map(|r| Integer::from(r[j])).collect())
            .collect();
        Basis::from_columns(columns)
    }

    pub fn from_columns_i64(columns: &[Vec<i64>]) -> Result<Self, LllError> {
        Basis::from_columns(
            columns
                .iter()
                .map(|c| c.iter().map(|&v| Integer::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|j| (0..n).map(|i| Integer::from((i == j) as i32)).collect())
            .collect();
        Basis { columns, dim: n }
    }

    /// Length of each vector.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis vectors.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<Integer>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Integer] {
        &self.columns[j]
    }

    pub fn into_columns(self) -> Vec<Vec<Integer>> {
        self.columns
    }

    /// Bit length of the largest entry magnitude.
    pub fn max_bits(&self) -> u32 {
        self.columns
            .iter()
            .flatten()
            .map(|v| v.significant_bits())
            .max()
            .unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> Basis {
        Basis {
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|v| Integer::from(v * k)).collect())
                .collect(),
            dim: self.dim,
        }
    }

    /// Squared Euclidean norm of column `j`.
    pub fn norm_sq(&self, j: usize) -> Integer {
        dot(&self.columns[j], &self.columns[j])
    }
}

pub(crate) fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut acc = Integer::new();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Reduction quality parameters (δ, η).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    delta: Rational,
    eta: Rational,
}

impl ReductionParams {
    /// Requires 1/4 < δ < 1 and 1/2 ≤ η < √δ.
    pub fn new(delta: Rational, eta: Rational) -> Result<Self, LllError> {
        if !(delta > Rational::from((1, 4)) && delta < 1) {
            return Err(LllError::Params(format!("delta {delta} outside (1/4, 1)")));
        }
        if eta < Rational::from((1, 2)) || Rational::from(eta.square_ref()) >= delta {
            return Err(LllError::Params(format!("eta {eta} outside [1/2, sqrt(delta))")));
        }
        Ok(ReductionParams { delta, eta })
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }
}

impl Default for ReductionParams {
    /// δ = 0.99, η = 0.501.
    fn default() -> Self {
        ReductionParams {
            delta: Rational::from((99, 100)),
            eta: Rational::from((501, 1000)),
        }
    }
}

/// Resource guard for one reduction.
#[derive(Clone, Debug)]
pub struct ReductionLimits {
    /// Cap on main-loop iterations, summed over all precision levels.
    pub max_iterations: u64,
    /// Number of MPFR precision levels tried after the double-exponent pass.
    pub max_escalations: u32,
    /// Largest dim·bits product handed to the exact fallback.
    pub exact_fallback_budget: u64,
}

impl Default for ReductionLimits {
    fn default() -> Self {
        ReductionLimits {
            max_iterations: 50_000_000,
            max_escalations: 4,
            exact_fallback_budget: 20_000,
        }
    }
}

/// Which arithmetic produced the returned basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    XDouble,
    Mpfr(u32),
    Exact,
}

#[derive(Clone, Debug)]
pub struct ReductionStats {
    pub iterations: u64,
    pub insertions: u64,
    pub backend: Backend,
    pub escalations: u32,
}

/// LLL-reduces `basis` with default limits.
pub fn lll_reduce(basis: &Basis, params: &ReductionParams) -> Result<Basis, LllError> {
    lll_reduce_with(basis, params, &ReductionLimits::default()).map(|(b, _)| b)
}

/// LLL-reduces `basis`; the result is verified (δ, η)-reduced in exact arithmetic.
pub fn lll_reduce_with(
    basis: &Basis,
    params: &ReductionParams,
    limits: &ReductionLimits,
) -> Result<(Basis, ReductionStats), LllError> {
    if basis.len() > basis.dim() {
        return Err(LllError::Dependent { index: basis.dim() });
    }
    let mut stats = ReductionStats {
        iterations: 0,
        insertions: 0,
        backend: Backend::XDouble,
        escalations: 0,
    };
    let mut work = basis.clone();
    let mut budget = limits.max_iterations;

    let mut attempt = l2::reduce(&mut work, params, &XDoubleCtx, budget);
    let mut level = 0u32;
    loop {
        match attempt {
            Ok(run) => {
                stats.iterations += run.iterations;
                stats.insertions += run.insertions;
                budget = budget.saturating_sub(run.iterations);
                if verify_reduced(&work, params).is_ok() {
                    return Ok((work, stats));
                }
                log::debug!("floating-point pass at level {level} failed verification");
            }
            Err(l2::Failure::Stalled { iterations }) => {
                stats.iterations += iterations;
                budget = budget.saturating_sub(iterations);
                log::debug!("floating-point pass at level {level} stalled");
            }
            Err(l2::Failure::Fatal(e)) => return Err(e),
        }
        if budget == 0 {
            return Err(LllError::ResourceExhausted(format!(
                "{} iterations without a verified reduction",
                limits.max_iterations
            )));
        }
        if level >= limits.max_escalations {
            break;
        }
        level += 1;
        stats.escalations = level;
        let prec = (2 * work.len() as u32 + 64) << (level - 1);
        stats.backend = Backend::Mpfr(prec);
        attempt = l2::reduce(&mut work, params, &MpfrCtx { prec }, budget);
    }

    let cost = work.len() as u64 * work.max_bits() as u64;
    if cost > limits.exact_fallback_budget {
        return Err(LllError::ResourceExhausted(format!(
            "floating-point reduction failed after {} escalations; exact fallback too large ({cost})",
            limits.max_escalations
        )));
    }
    stats.backend = Backend::Exact;
    let reduced = exact_lll(&work, params)?;
    verify_reduced(&reduced, params).map_err(|v| {
        LllError::ResourceExhausted(format!("exact reduction failed verification: {v}"))
    })?;
    Ok((reduced, stats))
}
