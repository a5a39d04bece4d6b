//! Mid-rad interval ("ball") arithmetic on top of MPFR floats.
//!
//! A ball is a multiple-precision midpoint plus a low-precision upper bound
//! on the distance to the represented exact value. Every operation satisfies
//! the containment contract: the output set contains the exact image of the
//! input sets. Midpoints are rounded at the working precision and the
//! rounding error is absorbed into the radius.

mod complex;
mod matrix;
mod real;

pub use complex::{ArgBranch, ComplexBall};
pub use matrix::BallMatrix;
pub use real::RealBall;

use rug::float::Round;
use rug::ops::AssignRound;
use rug::Float;
use std::cmp::Ordering;

/// Precision of radius floats. Radii only need a couple of digits; what
/// matters is the huge exponent range MPFR gives them.
pub const RAD_PREC: u32 = 30;

/// Minimum working precision accepted by ball operations.
pub const MIN_PREC: u32 = 2;

pub(crate) fn clamp_prec(prec: u32) -> u32 {
    prec.max(MIN_PREC)
}

/// Radius-precision zero.
pub(crate) fn rad_zero() -> Float {
    Float::with_val(RAD_PREC, 0)
}

/// Radius-precision +infinity ("no information").
pub(crate) fn rad_inf() -> Float {
    Float::with_val(RAD_PREC, rug::float::Special::Infinity)
}

/// Round an assignable value up at radius precision.
pub(crate) fn rad_up<T>(v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let mut f = Float::new(RAD_PREC);
    f.assign_round(v, Round::Up);
    fix_rad(f)
}

/// Round an assignable value down at radius precision, clamped at zero.
pub(crate) fn rad_down_nonneg<T>(v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let mut f = Float::new(RAD_PREC);
    f.assign_round(v, Round::Down);
    if f.is_sign_negative() || f.is_nan() {
        rad_zero()
    } else {
        f
    }
}

/// Replace NaN radii (e.g. from `0 * inf`) by +infinity; radii are never
/// allowed to be negative or NaN.
pub(crate) fn fix_rad(f: Float) -> Float {
    if f.is_nan() {
        rad_inf()
    } else {
        debug_assert!(!f.is_sign_negative() || f.is_zero());
        f
    }
}

/// 2^k at radius precision.
pub(crate) fn rad_two_pow(k: i64) -> Float {
    let k = k.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    Float::with_val(RAD_PREC, 1) << k
}

/// Upper bound on the rounding error of a midpoint produced with
/// round-to-nearest at precision `prec`: one ulp of the result (a generous
/// bound for the true half-ulp). Exact results contribute nothing.
pub(crate) fn rounding_rad(mid: &Float, ord: Ordering, prec: u32) -> Float {
    if ord == Ordering::Equal {
        return rad_zero();
    }
    match mid.get_exp() {
        Some(e) => rad_two_pow(e as i64 - prec as i64),
        // Nonzero rounding of a zero result cannot happen within MPFR's
        // exponent range at the precisions we use.
        None => rad_inf(),
    }
}
