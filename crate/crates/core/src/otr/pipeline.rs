use std::time::Instant;

use rug::Float;

use super::{build_matrix, extract_homogeneous, extract_inhomogeneous, ApproxProblem, OtrError, Witness};
use crate::gfunc::DEFAULT_PREC;
use crate::lll::{lll_reduce_with, ReductionLimits, ReductionParams, ReductionStats};
use crate::report::{BoundKind, BoundParams, BoundReport};
use crate::zeros::ZeroTable;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub params: ReductionParams,
    pub limits: ReductionLimits,
    /// ε above which the outcome carries a retry advisory.
    pub eps_threshold: f64,
    pub prec: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            params: ReductionParams::default(),
            limits: ReductionLimits::default(),
            eps_threshold: 0.01,
            prec: DEFAULT_PREC,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub problem: ApproxProblem,
    pub inhomogeneous: Witness,
    pub homogeneous: Witness,
    pub positive: BoundReport,
    pub negative: BoundReport,
    pub stats: ReductionStats,
    pub reduction_seconds: f64,
    /// Set when either ε exceeds the threshold; b should be raised.
    pub advisory: Option<String>,
}

/// Builds the lattice, reduces it, and certifies both witnesses.
///
/// The pipeline runs exactly once; a large ε only produces an advisory.
pub fn run_pipeline(
    problem: &ApproxProblem,
    table: &ZeroTable,
    options: &PipelineOptions,
) -> Result<PipelineOutcome, OtrError> {
    let basis = build_matrix(problem, table)?;
    log::info!(
        "reducing {}-dimensional basis ({} bits)",
        basis.dim(),
        basis.max_bits()
    );
    let start = Instant::now();
    let (reduced, stats) = lll_reduce_with(&basis, &options.params, &options.limits)?;
    let reduction_seconds = start.elapsed().as_secs_f64();
    log::info!(
        "reduction done in {reduction_seconds:.1}s ({} iterations, backend {:?})",
        stats.iterations,
        stats.backend
    );

    let inhomogeneous = extract_inhomogeneous(&reduced, problem, table, options.prec)?;
    let homogeneous = extract_homogeneous(&reduced, problem, table, options.prec)?;

    let threshold = Float::with_val(64, options.eps_threshold);
    let mut notes = Vec::new();
    for w in [&inhomogeneous, &homogeneous] {
        if w.eps > threshold {
            notes.push(format!(
                "{} eps {} exceeds {}",
                w.kind.as_str(),
                w.eps_decimal(6),
                options.eps_threshold
            ));
        }
    }
    let advisory = (!notes.is_empty()).then(|| {
        format!(
            "{}; insufficient precision, retry with a larger b than {}",
            notes.join(", "),
            problem.b
        )
    });

    let report = |w: &Witness, kind: BoundKind| BoundReport {
        kind,
        value: w.bound.clone(),
        params: BoundParams {
            n: Some(problem.n),
            eps: Some(w.eps_decimal(12)),
            b: Some(problem.b),
            c: Some(problem.c),
            d: Some(problem.d),
            precision_bits: options.prec,
            ..BoundParams::default()
        },
        zero_table_id: table.id().to_string(),
    };
    let positive = report(&inhomogeneous, BoundKind::WitnessPositive);
    let negative = report(&homogeneous, BoundKind::WitnessNegative);

    Ok(PipelineOutcome {
        problem: problem.clone(),
        inhomogeneous,
        homogeneous,
        positive,
        negative,
        stats,
        reduction_seconds,
        advisory,
    })
}
