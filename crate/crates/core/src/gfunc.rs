//! Evaluation of the zero sum
//!
//! ```text
//! G(x) = Re Σ_{γ>0} x^{iγ} / ((1/2 + iγ)(3/2 + iγ))
//!      = Σ_{γ>0} ((3/4 − γ²) cos(γ log x) + 2γ sin(γ log x)) / ((γ² + 1/4)(γ² + 9/4))
//! ```
//!
//! with certified truncation error, and the analytic bounds built on it: the
//! unconditional upper bound on |G| and the lower bounds that follow from a
//! solution of the simultaneous approximation problems at tolerance ε.
//!
//! All sums run over the table in ascending order at a fixed precision, so
//! results are reproducible bit for bit.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

use crate::report::{BoundKind, BoundParams, BoundReport};
use crate::zeros::{ZeroTable, ZeroTableError};

/// Working precision for the analytic bounds.
pub const DEFAULT_PREC: u32 = 256;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error(transparent)]
    Table(#[from] ZeroTableError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("zero count mismatch: {found} ordinates below T, expected {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error("table precision {available} bits cannot resolve γ·log x; {needed} bits needed")]
    InsufficientPrecision { available: u32, needed: u32 },
}

/// Direction of oscillation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Positive,
    Negative,
}

/// Truncated evaluation of G at a point.
#[derive(Clone, Debug)]
pub struct GValue {
    /// log x; kept instead of x, which overflows for witness-sized arguments.
    pub log_x: Float,
    /// Truncation height.
    pub t: Float,
    /// G₁ + G₂: the sum over γ ≤ T.
    pub partial: Float,
    /// Certified bound on |G₃|, the sum over γ > T.
    pub tail_radius: Float,
}

/// 2πe, the smallest height at which the tail estimates hold.
pub fn two_pi_e(prec: u32) -> Float {
    let pi = Float::with_val(prec, Constant::Pi);
    let e = Float::with_val(prec, 1).exp();
    Float::with_val(prec, pi * e) * 2u32
}

/// Σ_{γ>0} 1/(γ² + 1/4) = 1 + C/2 − log(4π)/2, with C Euler's constant.
pub fn euler_zero_sum_identity(prec: u32) -> Float {
    let euler = Float::with_val(prec, Constant::Euler);
    let four_pi = Float::with_val(prec, Constant::Pi) * 4u32;
    let log_four_pi = Float::with_val(prec, four_pi.ln_ref());
    Float::with_val(prec, 1) + euler / 2u32 - log_four_pi / 2u32
}

/// Maximum over x of one term of G:
/// √(γ⁴ + 5γ²/2 + 9/16) / ((γ² + 1/4)(γ² + 9/4)).
pub fn h_envelope(gamma: &Float, prec: u32) -> Float {
    let g2 = Float::with_val(prec, gamma.square_ref());
    let g4 = Float::with_val(prec, g2.square_ref());
    let numer = Float::with_val(prec, &g2 * 2.5f64) + &g4 + 0.5625f64;
    let denom = Float::with_val(prec, &g2 + 0.25f64) * Float::with_val(prec, &g2 + 2.25f64);
    numer.sqrt() / denom
}

/// Tail estimate Σ_{γ>T} γ^{−n} < log(T)/T^{n−1} for T ≥ 2πe, n ≥ 2.
pub fn lehman_tail(t: &Float, n: u32, prec: u32) -> Result<Float, BoundError> {
    if n < 2 {
        return Err(BoundError::Precondition(format!("exponent n = {n} must be at least 2")));
    }
    if *t < two_pi_e(prec) {
        return Err(BoundError::Precondition(format!(
            "T = {} is below 2πe",
            t.to_string_radix(10, Some(12))
        )));
    }
    let t = Float::with_val(prec, t);
    let log_t = Float::with_val(prec, t.ln_ref());
    let power = t.pow(n as i32 - 1);
    Ok(log_t / power)
}

/// Bound on |G₃(x, T)|, the tail of G above height T:
/// (1/(2πT))·(log T + 1 − log 2π + (2π/T)(1 + 4 log T)).
pub fn b3_tail(t: &Float, prec: u32) -> Result<Float, BoundError> {
    if *t <= two_pi_e(prec) {
        return Err(BoundError::Precondition(format!(
            "T = {} must exceed 2πe",
            t.to_string_radix(10, Some(12))
        )));
    }
    let t = Float::with_val(prec, t);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let log_t = Float::with_val(prec, t.ln_ref());
    let log_two_pi = Float::with_val(prec, two_pi.ln_ref());
    let correction = Float::with_val(prec, &two_pi / &t) * (Float::with_val(prec, &log_t * 4u32) + 1u32);
    let bracket = log_t + 1u32 - log_two_pi + correction;
    Ok(bracket / (two_pi * t))
}

fn require_coverage(table: &ZeroTable, t: &Float) -> Result<(), BoundError> {
    if t > table.last() {
        return Err(ZeroTableError::OutOfRange {
            height: t.to_string_radix(10, Some(20)),
            last: table.last().to_string_radix(10, Some(20)),
        }
        .into());
    }
    Ok(())
}

/// Unconditional bound on sup |G(x)|:
///
/// 1 + C/2 − log(4π)/2 − Σ_{γ≤T₁} γ⁻⁴ + 2 Σ_{γ≤T₂} γ⁻⁶ + log(T₂)/T₂⁵.
pub fn upper_bound_g(
    table: &ZeroTable,
    t1: &Float,
    t2: &Float,
    prec: u32,
) -> Result<BoundReport, BoundError> {
    if *t1 <= 0 {
        return Err(BoundError::Precondition("T1 must be positive".into()));
    }
    require_coverage(table, t1)?;
    require_coverage(table, t2)?;
    let tail = lehman_tail(t2, 6, prec)?;

    let n1 = table.count_up_to(t1)?;
    let n2 = table.count_up_to(t2)?;
    let mut quartic = Float::new(prec);
    for g in &table.ordinates()[..n1] {
        let g = Float::with_val(prec, g);
        quartic += Float::with_val(prec, g.pow(-4i32));
    }
    let mut sextic = Float::new(prec);
    for g in &table.ordinates()[..n2] {
        let g = Float::with_val(prec, g);
        sextic += Float::with_val(prec, g.pow(-6i32));
    }
    let value = euler_zero_sum_identity(prec) - quartic + sextic * 2u32 + tail;
    Ok(BoundReport {
        kind: BoundKind::UnconditionalUpper,
        value,
        params: BoundParams {
            t1: Some(t1.to_string_radix(10, Some(12))),
            t2: Some(t2.to_string_radix(10, Some(12))),
            precision_bits: prec,
            ..BoundParams::default()
        },
        zero_table_id: table.id().to_string(),
    })
}

/// Lower bound on the oscillation of G given a solution of the approximation
/// problem over the first `n` zeros with tolerance `eps`:
///
/// (1 − ε²/2) Σ 1/(γ²+1/4) − Σ (3 cos ε + 2γ sin ε)/((γ²+1/4)(γ²+9/4)) − B₃(T)
///
/// at T = T*(n). The negative direction is the exact negation.
pub fn conditional_bound(
    table: &ZeroTable,
    n: usize,
    eps: &Float,
    direction: Direction,
    prec: u32,
) -> Result<BoundReport, BoundError> {
    if !(*eps > 0 && *eps < 1) {
        return Err(BoundError::Precondition("ε must lie in (0, 1)".into()));
    }
    let t = table.t_star(n, prec)?;
    let found = table.count_below(&t)?;
    if found != n {
        return Err(BoundError::CountMismatch { expected: n, found });
    }
    let b3 = b3_tail(&t, prec)?;
    let value = conditional_core(&table.ordinates()[..n], eps, &b3, prec);
    let (kind, value) = match direction {
        Direction::Positive => (BoundKind::ConditionalPositive, value),
        Direction::Negative => (BoundKind::ConditionalNegative, -value),
    };
    Ok(BoundReport {
        kind,
        value,
        params: BoundParams {
            n: Some(n),
            t: Some(t.to_string_radix(10, Some(20))),
            eps: Some(eps.to_string_radix(10, Some(12))),
            precision_bits: prec,
            ..BoundParams::default()
        },
        zero_table_id: table.id().to_string(),
    })
}

fn conditional_core(gammas: &[Float], eps: &Float, b3: &Float, prec: u32) -> Float {
    let eps = Float::with_val(prec, eps);
    let cos_e = Float::with_val(prec, eps.cos_ref());
    let sin_e = Float::with_val(prec, eps.sin_ref());
    let mut main = Float::new(prec);
    let mut cross = Float::new(prec);
    for g in gammas {
        let g = Float::with_val(prec, g);
        let g2 = Float::with_val(prec, g.square_ref());
        let a = Float::with_val(prec, &g2 + 0.25f64);
        let b = Float::with_val(prec, &g2 + 2.25f64);
        main += Float::with_val(prec, a.recip_ref());
        let numer = Float::with_val(prec, &cos_e * 3u32) + Float::with_val(prec, &g * &sin_e) * 2u32;
        cross += numer / (a * b);
    }
    let shrink = Float::with_val(prec, 1) - Float::with_val(prec, eps.square_ref()) / 2u32;
    shrink * main - cross - b3
}

/// One term of G: ((3/4 − γ²) cos θ + 2γ sin θ)/((γ²+1/4)(γ²+9/4)) for θ = γ log x.
pub fn zero_term(gamma: &Float, cos_theta: &Float, sin_theta: &Float, prec: u32) -> Float {
    let g2 = Float::with_val(prec, gamma.square_ref());
    let numer = Float::with_val(prec, 0.75f64 - &g2) * cos_theta
        + Float::with_val(prec, gamma * sin_theta) * 2u32;
    let denom = Float::with_val(prec, &g2 + 0.25f64) * Float::with_val(prec, &g2 + 2.25f64);
    numer / denom
}

/// G(x) truncated at height T, with the certified tail radius B₃(T).
pub fn evaluate_g(
    table: &ZeroTable,
    x: &Float,
    t: &Float,
    prec: u32,
) -> Result<GValue, BoundError> {
    if *x <= 0 {
        return Err(BoundError::Precondition("x must be positive".into()));
    }
    let log_x = Float::with_val(prec.max(x.prec()), x.ln_ref());
    evaluate_g_at_log(table, &log_x, t, prec)
}

/// Same as [`evaluate_g`], parameterised by log x.
pub fn evaluate_g_at_log(
    table: &ZeroTable,
    log_x: &Float,
    t: &Float,
    prec: u32,
) -> Result<GValue, BoundError> {
    require_coverage(table, t)?;
    let tail_radius = b3_tail(t, prec)?;
    let n = table.count_up_to(t)?;

    // γ·log x must be accurate to `prec` bits after the point.
    let int_bits = log_x.get_exp().unwrap_or(0).max(0) as u32 + 11;
    let needed = prec + int_bits;
    if table.precision_bits() < needed {
        return Err(BoundError::InsufficientPrecision {
            available: table.precision_bits(),
            needed,
        });
    }
    let angle_prec = needed + 64;
    let two_pi = Float::with_val(angle_prec, Constant::Pi) * 2u32;
    let mut partial = Float::new(prec);
    for g in &table.ordinates()[..n] {
        let mut theta = Float::with_val(angle_prec, g * log_x);
        theta %= &two_pi;
        let theta = Float::with_val(prec, theta);
        let (s, c) = theta.sin_cos(Float::new(prec));
        let g = Float::with_val(prec, g);
        partial += zero_term(&g, &c, &s, prec);
    }
    Ok(GValue {
        log_x: log_x.clone(),
        t: t.clone(),
        partial,
        tail_radius,
    })
}

/// Σ_{γ ≤ T} h(γ), the envelope bound on |G₁ + G₂|.
pub fn envelope_sum(table: &ZeroTable, t: &Float, prec: u32) -> Result<Float, BoundError> {
    require_coverage(table, t)?;
    let n = table.count_up_to(t)?;
    let mut sum = Float::new(prec);
    for g in &table.ordinates()[..n] {
        sum += h_envelope(g, prec);
    }
    Ok(sum)
}
