//! Floating-point backends for the Gram–Schmidt approximations.
//!
//! [`XDoubleCtx`] pairs an `f64` mantissa with a separate exponent so that
//! squared norms of multi-thousand-bit vectors stay representable; it is the
//! fast path. [`MpfrCtx`] is an arbitrary-precision fallback.

use std::cmp::Ordering;
use std::fmt::Debug;

use rug::{Float, Integer};

pub trait FpCtx {
    type F: Clone + Debug;

    fn precision(&self) -> u32;
    fn zero(&self) -> Self::F;
    fn from_int(&self, v: &Integer) -> Self::F;
    fn from_f64(&self, v: f64) -> Self::F;
    fn add(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn sub(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn mul(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn div(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn abs(&self, a: &Self::F) -> Self::F;
    fn cmp(&self, a: &Self::F, b: &Self::F) -> Ordering;
    fn is_positive(&self, a: &Self::F) -> bool;
    fn is_finite(&self, a: &Self::F) -> bool;
    /// Nearest integer, ties away from zero.
    fn round(&self, a: &Self::F) -> Integer;
    /// log₂|a|, or `None` for zero.
    fn log2_abs(&self, a: &Self::F) -> Option<f64>;
}

/// m·2^e with m ∈ [0.5, 1) or m = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XDouble {
    m: f64,
    e: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        // subnormal
        let (m, e) = frexp(x * f64::from_bits(0x4350_0000_0000_0000)); // 2^54
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

fn ldexp(m: f64, e: i64) -> f64 {
    if e > 1023 {
        return m * f64::INFINITY;
    }
    if e < -1074 {
        return m * 0.0;
    }
    let mut m = m;
    let mut e = e;
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

impl XDouble {
    pub const ZERO: XDouble = XDouble { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> XDouble {
        if m == 0.0 {
            return XDouble::ZERO;
        }
        let (m, de) = frexp(m);
        XDouble { m, e: e + de }
    }

    pub fn from_f64(v: f64) -> XDouble {
        XDouble::norm(v, 0)
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.m, self.e)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct XDoubleCtx;

impl FpCtx for XDoubleCtx {
    type F = XDouble;

    fn precision(&self) -> u32 {
        53
    }

    fn zero(&self) -> XDouble {
        XDouble::ZERO
    }

    fn from_int(&self, v: &Integer) -> XDouble {
        if *v == 0 {
            return XDouble::ZERO;
        }
        let (m, e) = v.to_f64_exp();
        XDouble::norm(m, e as i64)
    }

    fn from_f64(&self, v: f64) -> XDouble {
        XDouble::from_f64(v)
    }

    fn add(&self, a: &XDouble, b: &XDouble) -> XDouble {
        if a.m == 0.0 {
            return *b;
        }
        if b.m == 0.0 {
            return *a;
        }
        let (hi, lo) = if a.e >= b.e { (a, b) } else { (b, a) };
        let shift = hi.e - lo.e;
        if shift > 60 {
            return *hi;
        }
        XDouble::norm(hi.m + ldexp(lo.m, -shift), hi.e)
    }

    fn sub(&self, a: &XDouble, b: &XDouble) -> XDouble {
        self.add(a, &XDouble { m: -b.m, e: b.e })
    }

    fn mul(&self, a: &XDouble, b: &XDouble) -> XDouble {
        XDouble::norm(a.m * b.m, a.e + b.e)
    }

    fn div(&self, a: &XDouble, b: &XDouble) -> XDouble {
        XDouble::norm(a.m / b.m, a.e - b.e)
    }

    fn abs(&self, a: &XDouble) -> XDouble {
        XDouble { m: a.m.abs(), e: a.e }
    }

    fn cmp(&self, a: &XDouble, b: &XDouble) -> Ordering {
        let d = self.sub(a, b);
        d.m.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn is_positive(&self, a: &XDouble) -> bool {
        a.m > 0.0
    }

    fn is_finite(&self, a: &XDouble) -> bool {
        a.m.is_finite()
    }

    fn round(&self, a: &XDouble) -> Integer {
        if a.m == 0.0 || a.e < 0 {
            return Integer::new();
        }
        if a.e <= 52 {
            let v = ldexp(a.m, a.e).round();
            return Integer::from_f64(v).expect("finite");
        }
        // integral already: m·2^53 is an exact integer
        let mant = Integer::from_f64(ldexp(a.m, 53)).expect("finite");
        mant << (a.e - 53) as u32
    }

    fn log2_abs(&self, a: &XDouble) -> Option<f64> {
        if a.m == 0.0 {
            None
        } else {
            Some(a.m.abs().log2() + a.e as f64)
        }
    }
}

/// MPFR floats at a fixed precision.
#[derive(Clone, Copy, Debug)]
pub struct MpfrCtx {
    pub prec: u32,
}

impl FpCtx for MpfrCtx {
    type F = Float;

    fn precision(&self) -> u32 {
        self.prec
    }

    fn zero(&self) -> Float {
        Float::new(self.prec)
    }

    fn from_int(&self, v: &Integer) -> Float {
        Float::with_val(self.prec, v)
    }

    fn from_f64(&self, v: f64) -> Float {
        Float::with_val(self.prec, v)
    }

    fn add(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a + b)
    }

    fn sub(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a - b)
    }

    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a * b)
    }

    fn div(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a / b)
    }

    fn abs(&self, a: &Float) -> Float {
        Float::with_val(self.prec, &*a.as_abs())
    }

    fn cmp(&self, a: &Float, b: &Float) -> Ordering {
        a.partial_cmp(b).unwrap_or(Ordering::Equal)
    }

    fn is_positive(&self, a: &Float) -> bool {
        a.is_sign_positive() && !a.is_zero()
    }

    fn is_finite(&self, a: &Float) -> bool {
        a.is_finite()
    }

    fn round(&self, a: &Float) -> Integer {
        Float::with_val(self.prec, a.round_ref())
            .to_integer()
            .unwrap_or_default()
    }

    fn log2_abs(&self, a: &Float) -> Option<f64> {
        if a.is_zero() {
            None
        } else {
            let (m, e) = a.to_f64_exp();
            Some(m.abs().log2() + e as f64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xdouble_round_trip_of_huge_integers() {
        let ctx = XDoubleCtx;
        let v = Integer::from(3) << 5000u32;
        let x = ctx.from_int(&v);
        assert_eq!(ctx.round(&x), v);
        let y = ctx.div(&ctx.mul(&x, &x), &x);
        assert_eq!(ctx.round(&y), v);
        assert!((ctx.log2_abs(&x).unwrap() - (5000.0 + 3f64.log2())).abs() < 1e-9);
    }

    #[test]
    fn xdouble_arithmetic_matches_f64() {
        let ctx = XDoubleCtx;
        let vals = [1.5, -2.25, 1e-3, 7e10, -3.3e-7];
        for &a in &vals {
            for &b in &vals {
                let (xa, xb) = (ctx.from_f64(a), ctx.from_f64(b));
                assert!((ctx.add(&xa, &xb).to_f64() - (a + b)).abs() <= 1e-15 * (a.abs() + b.abs()));
                assert!((ctx.mul(&xa, &xb).to_f64() - a * b).abs() <= 1e-15 * (a * b).abs());
                assert!((ctx.div(&xa, &xb).to_f64() - a / b).abs() <= 1e-15 * (a / b).abs());
                assert_eq!(ctx.cmp(&xa, &xb), a.partial_cmp(&b).unwrap());
            }
        }
        assert_eq!(ctx.round(&ctx.from_f64(2.5)), 3);
        assert_eq!(ctx.round(&ctx.from_f64(-2.5)), -3);
        assert_eq!(ctx.round(&ctx.from_f64(0.49)), 0);
    }

    #[test]
    fn mpfr_rounding_ties_away() {
        let ctx = MpfrCtx { prec: 100 };
        assert_eq!(ctx.round(&ctx.from_f64(2.5)), 3);
        assert_eq!(ctx.round(&ctx.from_f64(-0.5)), -1);
    }
}
