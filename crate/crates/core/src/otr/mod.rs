//! Simultaneous approximation witnesses via lattice reduction.
//!
//! For the first N ordinates, a reduced basis of the lattice built by
//! [`build_matrix`] contains, with high probability,
//!
//! * one vector `(r_1, …, r_N, s, ±2^b N^d)` whose `s` gives y = s/2^c with
//!   every γ_k y close to an odd multiple of π, and
//! * about N + 1 vectors `(r_1, …, r_N, t, 0)` whose `t` gives z = t/2^c with
//!   every γ_k z close to an even multiple of π.
//!
//! Each candidate is certified independently of how it was found: the error
//! ε and the resulting bound on G are recomputed from the zero table in ball
//! arithmetic, so a returned [`Witness`] is valid regardless of the
//! reduction's behaviour.

mod certify;
mod extract;
mod figure1;
mod matrix;
mod pipeline;
mod witness;

use thiserror::Error;

use crate::gfunc::BoundError;
use crate::lll::LllError;
use crate::zeros::{ZeroTable, ZeroTableError};

pub use certify::verify_witness;
pub use extract::{extract_homogeneous, extract_homogeneous_candidates, extract_inhomogeneous};
pub use figure1::{figure1_witnesses, parse_figure1, Figure1Witnesses};
pub use matrix::build_matrix;
pub use pipeline::{run_pipeline, PipelineOptions, PipelineOutcome};
pub use witness::{from_base36, to_base36, Witness, WitnessKind, WitnessRecord, WITNESS_DECIMALS};

/// Default scale exponent: y = s/2^c.
pub const DEFAULT_C: u32 = 10;
/// Default weight exponent of the last column, 2^b N^d.
pub const DEFAULT_D: u32 = 4;
/// Guard bits required of the zero table beyond b.
pub const TABLE_GUARD_BITS: u32 = 64;

#[derive(Debug, Error)]
pub enum OtrError {
    #[error("invalid problem: {0}")]
    Problem(String),
    #[error(transparent)]
    Table(#[from] ZeroTableError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Lattice(#[from] LllError),
    #[error("ordinate precision {available} bits is insufficient; {needed} bits needed")]
    InsufficientPrecision { available: u32, needed: u32 },
    #[error("reduced basis has no vector with last coordinate ±2^b·N^d")]
    NoInhomogeneousVector,
    #[error("reduced basis has no vector of the form (r, t, 0) with t ≠ 0")]
    NoHomogeneousVector,
    #[error("witness value is zero")]
    ZeroWitness,
    #[error("parse error: {0}")]
    Parse(String),
}

/// One instance of the approximation problem over the first `n` ordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxProblem {
    pub n: usize,
    /// Bits of precision in the lattice entries.
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub table_id: String,
}

impl ApproxProblem {
    pub fn new(n: usize, b: u32, c: u32, d: u32, table: &ZeroTable) -> Result<Self, OtrError> {
        let problem = ApproxProblem {
            n,
            b,
            c,
            d,
            table_id: table.id().to_string(),
        };
        problem.validate(table)?;
        Ok(problem)
    }

    /// Problem with the conventional c = 10, d = 4.
    pub fn with_defaults(n: usize, b: u32, table: &ZeroTable) -> Result<Self, OtrError> {
        ApproxProblem::new(n, b, DEFAULT_C, DEFAULT_D, table)
    }

    pub fn validate(&self, table: &ZeroTable) -> Result<(), OtrError> {
        if self.n == 0 {
            return Err(OtrError::Problem("N must be at least 1".into()));
        }
        if self.b < 64 {
            return Err(OtrError::Problem(format!("b = {} is below 64", self.b)));
        }
        if self.c == 0 || self.d == 0 {
            return Err(OtrError::Problem("c and d must be positive".into()));
        }
        if self.c >= self.b {
            return Err(OtrError::Problem("c must be smaller than b".into()));
        }
        if table.id() != self.table_id {
            return Err(OtrError::Problem(format!(
                "problem was set up for table {}, got {}",
                self.table_id,
                table.id()
            )));
        }
        let needed = self.b + TABLE_GUARD_BITS;
        if table.precision_bits() < needed {
            return Err(OtrError::InsufficientPrecision {
                available: table.precision_bits(),
                needed,
            });
        }
        if table.count() < self.n + 1 {
            return Err(ZeroTableError::Insufficient {
                count: table.count(),
                needed: self.n + 1,
            }
            .into());
        }
        Ok(())
    }
}
