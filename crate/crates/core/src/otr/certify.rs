use rug::float::Constant;
use rug::{Float, Integer};

use super::matrix::gamma_ball;
use super::{OtrError, Witness, WitnessKind};
use crate::ball::Ball;
use crate::gfunc::{b3_tail, BoundError};
use crate::zeros::{ZeroTable, ZeroTableError};

/// Guard bits the table must carry beyond the integer part of the witness.
const VALUE_GUARD_BITS: u32 = 64;

/// Certifies the candidate numerator/2^c against the first `n` ordinates.
///
/// Recomputes the nearest m_k, an upper bound on
/// ε = max_k |γ_k·v − (2m_k+1)π| (inhomogeneous) or max_k |γ_k·v − 2m_kπ|
/// (homogeneous), and the one-sided bound on G(e^v) obtained from the first
/// n zeros plus the tail estimate at T*(n). A negative numerator is replaced
/// by its absolute value, which leaves ε unchanged.
pub fn verify_witness(
    numerator: &Integer,
    c: u32,
    kind: WitnessKind,
    n: usize,
    table: &ZeroTable,
    prec: u32,
) -> Result<Witness, OtrError> {
    if n == 0 {
        return Err(OtrError::Problem("depth must be at least 1".into()));
    }
    if *numerator == 0 {
        return Err(OtrError::ZeroWitness);
    }
    if table.count() < n + 1 {
        return Err(ZeroTableError::Insufficient {
            count: table.count(),
            needed: n + 1,
        }
        .into());
    }
    let negated = *numerator < 0;
    let numerator = Integer::from(numerator.abs_ref());
    let num_bits = numerator.significant_bits();
    let value_bits = num_bits.saturating_sub(c);
    let needed = value_bits + VALUE_GUARD_BITS;
    if table.precision_bits() < needed {
        return Err(OtrError::InsufficientPrecision {
            available: table.precision_bits(),
            needed,
        });
    }

    let value = Float::with_val(num_bits.max(64), &numerator) >> c;
    let ap = value_bits + prec + 96;
    let value_ball = Ball::exact(value.clone());
    let pi = Ball::pi(ap);
    let two_pi_mid = Float::with_val(ap, Constant::Pi) * 2u32;

    let t_star = table.t_star(n, prec)?;
    let below = table.count_below(&t_star)?;
    if below != n {
        return Err(BoundError::CountMismatch {
            expected: n,
            found: below,
        }
        .into());
    }
    let b3 = b3_tail(&t_star, prec)?;
    let b3_rad = Float::with_val(64, &*b3.as_abs()) >> (prec - 8);
    let b3 = Ball::with_radius(b3, b3_rad);

    let mut m = Vec::with_capacity(n);
    let mut eps = Float::new(prec);
    let mut partial = Ball::exact(Float::new(prec));
    for k in 1..=n {
        let theta = gamma_ball(table, k, ap).mul(&value_ball);
        let (mk, multiple) = match kind {
            WitnessKind::Inhomogeneous => {
                let q = Float::with_val(ap, theta.mid() - pi.mid()) / &two_pi_mid;
                let mk = q.round().to_integer().expect("finite angle");
                let odd = Integer::from(&mk * 2u32) + 1u32;
                (mk, odd)
            }
            WitnessKind::Homogeneous => {
                let q = Float::with_val(ap, theta.mid() / &two_pi_mid);
                let mk = q.round().to_integer().expect("finite angle");
                let even = Integer::from(&mk * 2u32);
                (mk, even)
            }
        };
        let residual = theta
            .sub(&pi.mul(&Ball::exact(Float::with_val(ap, &multiple))))
            .with_prec(prec);
        let err = residual.abs_upper();
        if err > eps {
            eps = err;
        }

        let (mut cos_t, mut sin_t) = (residual.cos(), residual.sin());
        if kind == WitnessKind::Inhomogeneous {
            cos_t = cos_t.neg();
            sin_t = sin_t.neg();
        }
        let g = gamma_ball(table, k, prec);
        partial = partial.add(&zero_term_ball(&g, &cos_t, &sin_t));
        m.push(mk);
    }

    let bound = match kind {
        WitnessKind::Inhomogeneous => partial.sub(&b3).lower(),
        WitnessKind::Homogeneous => partial.add(&b3).upper(),
    };
    Ok(Witness {
        kind,
        n,
        numerator,
        c,
        value,
        m,
        eps,
        partial: partial.mid().clone(),
        bound,
        negated,
        precision_bits: ap,
    })
}

/// ((3/4 − γ²) cos θ + 2γ sin θ)/((γ²+1/4)(γ²+9/4)) in ball arithmetic.
fn zero_term_ball(g: &Ball, cos_t: &Ball, sin_t: &Ball) -> Ball {
    let g2 = g.sqr();
    let numer = g2.neg().add_f(0.75).mul(cos_t).add(&g.mul(sin_t).mul_i64(2));
    let denom = g2.add_f(0.25).mul(&g2.add_f(2.25));
    numer.div(&denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfunc::{conditional_bound, evaluate_g_at_log, Direction};

    fn table() -> ZeroTable {
        let text = "ZEROS 3 60\n\
            14.134725141734693790457251983562470270784257115699243175685567\n\
            21.022039638771554992628479593896902777334340524902781754629520\n\
            25.010857580145688763213790992562821818659549672557996672496542\n";
        ZeroTable::parse(text, 0).unwrap()
    }

    #[test]
    fn single_zero_homogeneous() {
        let table = table();
        // t = ⌊2^10 · 2π/γ₁⌉ makes γ₁ z close to 2π.
        let two_pi = Float::with_val(200, Constant::Pi) * 2u32;
        let z: Float = Float::with_val(200, &two_pi / table.gamma(1)) << 10;
        let t = z.round().to_integer().unwrap();
        let w = verify_witness(&t, 10, WitnessKind::Homogeneous, 1, &table, 128).unwrap();
        assert_eq!(w.m, vec![Integer::from(1)]);
        // The residue is at most γ₁/2^11.
        assert!(w.eps < 14.14 / 2048.0);
        assert!(w.eps > 0);
        assert!(!w.negated);

        let neg = verify_witness(&Integer::from(-&t), 10, WitnessKind::Homogeneous, 1, &table, 128)
            .unwrap();
        assert!(neg.negated);
        assert_eq!(neg.eps, w.eps);
        assert_eq!(neg.bound, w.bound);
    }

    #[test]
    fn partial_sum_matches_direct_evaluation() {
        let table = table();
        let t = Integer::from(123_456_789u64);
        let t_star = table.t_star(2, 128).unwrap();
        for kind in [WitnessKind::Inhomogeneous, WitnessKind::Homogeneous] {
            let w = verify_witness(&t, 10, kind, 2, &table, 128).unwrap();
            let direct = evaluate_g_at_log(&table, &w.value, &t_star, 100).unwrap();
            let diff = Float::with_val(128, &direct.partial - &w.partial).abs();
            assert!(diff < 1e-25, "{kind:?}: {diff}");
            let b3 = direct.tail_radius;
            match kind {
                WitnessKind::Inhomogeneous => {
                    assert!(w.bound <= Float::with_val(128, &w.partial - &b3));
                }
                WitnessKind::Homogeneous => {
                    assert!(w.bound >= Float::with_val(128, &w.partial + &b3));
                }
            }
        }
    }

    #[test]
    fn bound_respects_conditional_bound_at_own_eps() {
        let table = table();
        let y: Float = Float::with_val(200, Float::with_val(200, Constant::Pi) / table.gamma(1)) << 10;
        let s = y.round().to_integer().unwrap();
        let w = verify_witness(&s, 10, WitnessKind::Inhomogeneous, 1, &table, 128).unwrap();
        let cond = conditional_bound(&table, 1, &w.eps, Direction::Positive, 128).unwrap();
        assert!(w.bound >= Float::with_val(128, &cond.value - 1e-9));
    }

    #[test]
    fn rejects_insufficient_precision() {
        let table = table();
        let huge = Integer::from(1) << 400;
        assert!(matches!(
            verify_witness(&huge, 10, WitnessKind::Homogeneous, 1, &table, 128),
            Err(OtrError::InsufficientPrecision { .. })
        ));
        assert!(matches!(
            verify_witness(&Integer::new(), 10, WitnessKind::Homogeneous, 1, &table, 128),
            Err(OtrError::ZeroWitness)
        ));
        assert!(verify_witness(&Integer::from(5), 10, WitnessKind::Homogeneous, 0, &table, 128).is_err());
        assert!(verify_witness(&Integer::from(5), 10, WitnessKind::Homogeneous, 3, &table, 128).is_err());
    }
}
