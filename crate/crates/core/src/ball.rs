//! Mid-radius ball arithmetic on top of MPFR.
//!
//! A [`Ball`] encloses a real number in `[mid - rad, mid + rad]`. Midpoints are
//! rounded to nearest at the working precision; every rounding error is
//! folded into the radius, which is itself rounded upward. This is the same
//! representation Arb uses, restricted to the handful of operations needed to
//! certify witness errors and oscillation bounds.

use std::cmp::Ordering;

use rug::float::{Constant, Round};
use rug::ops::{AddAssignRound, MulAssignRound};
use rug::Float;

const RAD_PREC: u32 = 64;

#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

fn rad_zero() -> Float {
    Float::new(RAD_PREC)
}

/// |x|·2^(1−prec), an upper bound for the error of rounding `x` to nearest.
fn rounding_error(x: &Float) -> Float {
    if x.is_zero() {
        return rad_zero();
    }
    let mut e = Float::with_val_round(RAD_PREC, &*x.as_abs(), Round::Up).0;
    e >>= x.prec() - 1;
    e
}

fn add_up(a: &Float, b: &Float) -> Float {
    let mut r = Float::with_val_round(RAD_PREC, a, Round::Up).0;
    r.add_assign_round(b, Round::Up);
    r
}

fn mul_up(a: &Float, b: &Float) -> Float {
    let mut r = Float::with_val_round(RAD_PREC, &*a.as_abs(), Round::Up).0;
    r.mul_assign_round(&*b.as_abs(), Round::Up);
    r
}

impl Ball {
    /// An exact point value.
    pub fn exact(mid: Float) -> Self {
        Ball {
            mid,
            rad: rad_zero(),
        }
    }

    pub fn with_radius(mid: Float, rad: Float) -> Self {
        assert!(rad >= 0, "negative radius");
        let rad = Float::with_val_round(RAD_PREC, &rad, Round::Up).0;
        Ball { mid, rad }
    }

    /// A value known to within 2^-bits of `mid`.
    pub fn with_error_bits(mid: Float, bits: u32) -> Self {
        let rad = Float::with_val(RAD_PREC, 1) >> bits;
        Ball { mid, rad }
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Ball::exact(Float::with_val(prec, v))
    }

    pub fn pi(prec: u32) -> Self {
        let mid = Float::with_val(prec, Constant::Pi);
        let rad = rounding_error(&mid);
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Lower endpoint, rounded down.
    pub fn lower(&self) -> Float {
        let mut lo = Float::with_val_round(self.mid.prec(), &self.mid, Round::Down).0;
        lo.add_assign_round(-self.rad.clone(), Round::Down);
        lo
    }

    /// Upper endpoint, rounded up.
    pub fn upper(&self) -> Float {
        let mut hi = Float::with_val_round(self.mid.prec(), &self.mid, Round::Up).0;
        hi.add_assign_round(&self.rad, Round::Up);
        hi
    }

    /// Upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> Float {
        let mut hi = Float::with_val_round(self.mid.prec(), &*self.mid.as_abs(), Round::Up).0;
        hi.add_assign_round(&self.rad, Round::Up);
        hi
    }

    /// Lower bound on |x| over the ball (zero if the ball straddles zero).
    pub fn abs_lower(&self) -> Float {
        let mut lo = Float::with_val_round(self.mid.prec(), &*self.mid.as_abs(), Round::Down).0;
        lo.add_assign_round(-self.rad.clone(), Round::Down);
        if lo < 0 {
            lo = Float::new(self.mid.prec());
        }
        lo
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.as_abs().cmp_abs(&self.rad) != Some(Ordering::Greater)
    }

    /// Sets the working precision for subsequent results, absorbing the rounding.
    pub fn with_prec(&self, prec: u32) -> Ball {
        let mid = Float::with_val(prec, &self.mid);
        let err = if prec < self.mid.prec() {
            rounding_error(&mid)
        } else {
            rad_zero()
        };
        Ball {
            mid,
            rad: add_up(&self.rad, &err),
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: Float::with_val(self.mid.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let mid = Float::with_val(prec, &self.mid + &other.mid);
        let rad = add_up(&add_up(&self.rad, &other.rad), &rounding_error(&mid));
        Ball { mid, rad }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let mid = Float::with_val(prec, &self.mid * &other.mid);
        let mut rad = mul_up(&self.mid, &other.rad);
        rad = add_up(&rad, &mul_up(&other.mid, &self.rad));
        rad = add_up(&rad, &mul_up(&self.rad, &other.rad));
        rad = add_up(&rad, &rounding_error(&mid));
        Ball { mid, rad }
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul(&Ball::from_i64(self.prec(), k))
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    /// Division; panics if the divisor ball contains zero.
    pub fn div(&self, other: &Ball) -> Ball {
        assert!(!other.contains_zero(), "division by a ball containing zero");
        let prec = self.prec().max(other.prec());
        let mid = Float::with_val(prec, &self.mid / &other.mid);
        // |a/b - ma/mb| <= (|ma| rb + |mb| ra) / (|mb| (|mb| - rb))
        let num = add_up(&mul_up(&self.mid, &other.rad), &mul_up(&other.mid, &self.rad));
        let gap = Float::with_val_round(RAD_PREC, &*other.mid.as_abs() - &other.rad, Round::Down).0;
        let den = Float::with_val_round(RAD_PREC, &*other.mid.as_abs() * &gap, Round::Down).0;
        let quot = Float::with_val_round(RAD_PREC, &num / &den, Round::Up).0;
        let rad = add_up(&quot, &rounding_error(&mid));
        Ball { mid, rad }
    }

    pub fn add_f(&self, q: f64) -> Ball {
        self.add(&Ball::exact(Float::with_val(self.prec(), q)))
    }

    pub fn cos(&self) -> Ball {
        // cos is 1-Lipschitz and bounded by 1
        let mid = Float::with_val(self.prec(), self.mid.cos_ref());
        let ulp = Float::with_val(RAD_PREC, 1) >> (self.prec() - 1);
        Ball {
            rad: add_up(&self.rad, &ulp),
            mid,
        }
    }

    pub fn sin(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.sin_ref());
        let ulp = Float::with_val(RAD_PREC, 1) >> (self.prec() - 1);
        Ball {
            rad: add_up(&self.rad, &ulp),
            mid,
        }
    }

    /// Natural logarithm; the ball must lie in (0, ∞).
    pub fn ln(&self) -> Ball {
        let gap = Float::with_val_round(RAD_PREC, &self.mid - &self.rad, Round::Down).0;
        assert!(gap > 0, "logarithm of a ball reaching zero");
        let mid = Float::with_val(self.prec(), self.mid.ln_ref());
        // |log x - log m| <= r / (m - r)
        let spread = Float::with_val_round(RAD_PREC, &self.rad / &gap, Round::Up).0;
        let rad = add_up(&spread, &rounding_error(&mid));
        Ball { mid, rad }
    }

    pub fn sqrt(&self) -> Ball {
        let gap = Float::with_val_round(RAD_PREC, &self.mid - &self.rad, Round::Down).0;
        assert!(gap > 0, "square root of a ball reaching zero");
        let mid = Float::with_val(self.prec(), self.mid.sqrt_ref());
        // |sqrt x - sqrt m| <= r / sqrt(m - r)
        let root = Float::with_val_round(RAD_PREC, gap.sqrt_ref(), Round::Down).0;
        let spread = Float::with_val_round(RAD_PREC, &self.rad / &root, Round::Up).0;
        let rad = add_up(&spread, &rounding_error(&mid));
        Ball { mid, rad }
    }

    /// True if `self` and `other` may denote the same real.
    pub fn overlaps(&self, other: &Ball) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_encloses_reference() {
        let pi = Ball::pi(100);
        let reference = Float::with_val(400, Constant::Pi);
        assert!(pi.contains(&reference));
        assert!(pi.rad() < &(Float::with_val(64, 1) >> 96));
    }

    #[test]
    fn cancellation_tracks_radius() {
        let x = Ball::with_error_bits(Float::with_val(64, 3), 20);
        let d = x.sub(&x);
        assert!(d.contains_zero());
        assert!(d.abs_upper() >= (Float::with_val(64, 1) >> 19));
    }

    #[test]
    fn transcendental_enclosures() {
        let x = Ball::with_error_bits(Float::with_val(128, 1.25), 100);
        let hi = Float::with_val(512, 1.25);
        for (b, reference) in [
            (x.cos(), Float::with_val(512, hi.cos_ref())),
            (x.sin(), Float::with_val(512, hi.sin_ref())),
            (x.ln(), Float::with_val(512, hi.ln_ref())),
            (x.sqrt(), Float::with_val(512, hi.sqrt_ref())),
            (x.div(&x.add_f(1.0)), Float::with_val(512, &hi / (hi.clone() + 1))),
        ] {
            assert!(b.contains(&reference));
            assert!(b.rad() < &(Float::with_val(64, 1) >> 95));
        }
    }

    #[test]
    fn endpoints_are_ordered() {
        let x = Ball::with_radius(Float::with_val(80, -2.5), Float::with_val(64, 0.25));
        assert!(x.lower() <= -2.75);
        assert!(x.upper() >= -2.25);
        assert!(x.abs_lower() <= 2.25 && x.abs_lower() > 2.2);
        assert!(x.abs_upper() >= 2.75);
        assert!(!x.contains_zero());
    }
}
