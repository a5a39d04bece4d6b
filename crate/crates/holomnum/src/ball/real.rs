use std::cmp::Ordering;

use rug::float::Round;
use rug::ops::{DivAssignRound, Pow};
use rug::{Assign, Float, Integer, Rational};

use super::{clamp_prec, fix_rad, rad_inf, rad_up, rad_zero, rounding_rad, RAD_PREC};
use crate::error::{Error, Result};

/// A real ball `{t : |t - mid| <= rad}`.
///
/// The midpoint carries the working precision; the radius is a low-precision
/// nonnegative float (possibly +infinity, meaning "no information").
///
/// Radius arithmetic is always rounded upward, midpoint arithmetic to
/// nearest with the rounding error added to the radius, so containment is
/// preserved by every operation.
#[derive(Clone, Debug)]
pub struct RealBall {
    mid: Float,
    rad: Float,
}

fn flip(r: Round) -> Round {
    match r {
        Round::Down => Round::Up,
        Round::Up => Round::Down,
        other => other,
    }
}

impl RealBall {
    pub fn new(mid: Float, rad: Float) -> Self {
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn zero(prec: u32) -> Self {
        RealBall { mid: Float::new(clamp_prec(prec)), rad: rad_zero() }
    }

    pub fn one(prec: u32) -> Self {
        RealBall { mid: Float::with_val(clamp_prec(prec), 1), rad: rad_zero() }
    }

    /// Exact dyadic midpoint, zero radius.
    pub fn from_float_exact(mid: Float) -> Self {
        RealBall { mid, rad: rad_zero() }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_rad(&mid, ord, prec);
        RealBall { mid, rad }
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_rad(&mid, ord, prec);
        RealBall { mid, rad }
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_rad(&mid, ord, prec);
        RealBall { mid, rad }
    }

    /// Ball containing `[lo, hi]`, where `lo` and `hi` are already directed
    /// bounds of the represented set.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        let (sum, _) = Float::with_val_round(prec, lo + hi, Round::Nearest);
        let (mid, _) = Float::with_val_round(prec, &sum / 2u32, Round::Nearest);
        let r1 = rad_up(hi - &mid);
        let r2 = rad_up(&mid - lo);
        let rad = if r1 >= r2 { r1 } else { r2 };
        RealBall { mid, rad: fix_rad(rad) }
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

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        !(*self.mid.as_abs() > self.rad)
    }

    /// Certainly positive: mid - rad > 0.
    pub fn is_positive(&self) -> bool {
        self.mid.is_sign_positive() && *self.mid.as_abs() > self.rad
    }

    /// Certainly negative: mid + rad < 0.
    pub fn is_negative(&self) -> bool {
        self.mid.is_sign_negative() && *self.mid.as_abs() > self.rad
    }

    /// Upper bound on |x| over the ball, at radius precision.
    pub fn mag_upper(&self) -> Float {
        rad_up(&*self.mid.as_abs() + &self.rad)
    }

    /// Lower bound on |x| over the ball (0 if the ball contains 0).
    pub fn mag_lower(&self) -> Float {
        super::rad_down_nonneg(&*self.mid.as_abs() - &self.rad)
    }

    /// Exact rational lower endpoint mid - rad.
    pub fn lo_rational(&self) -> Rational {
        self.mid.to_rational().unwrap() - self.rad.to_rational().unwrap()
    }

    /// Exact rational upper endpoint mid + rad.
    pub fn hi_rational(&self) -> Rational {
        self.mid.to_rational().unwrap() + self.rad.to_rational().unwrap()
    }

    /// Directed lower bound mid - rad as a float at `prec`.
    pub fn lower_float(&self, prec: u32) -> Float {
        let (lo, _) = Float::with_val_round(clamp_prec(prec), &self.mid - &self.rad, Round::Down);
        lo
    }

    /// Directed upper bound mid + rad as a float at `prec`.
    pub fn upper_float(&self, prec: u32) -> Float {
        let (hi, _) = Float::with_val_round(clamp_prec(prec), &self.mid + &self.rad, Round::Up);
        hi
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        if !self.rad.is_finite() {
            return true;
        }
        if !self.mid.is_finite() {
            return false;
        }
        let m = self.mid.to_rational().unwrap();
        let r = self.rad.to_rational().unwrap();
        (m - v).abs() <= r
    }

    /// Exact test: do the two balls overlap?
    pub fn intersects(&self, other: &RealBall) -> bool {
        if !self.rad.is_finite() || !other.rad.is_finite() {
            return true;
        }
        let d = (self.mid.to_rational().unwrap() - other.mid.to_rational().unwrap()).abs();
        let r = self.rad.to_rational().unwrap() + other.rad.to_rational().unwrap();
        d <= r
    }

    /// Exact test: does `self` contain all of `other`?
    pub fn contains_ball(&self, other: &RealBall) -> bool {
        if !self.rad.is_finite() {
            return true;
        }
        if !other.rad.is_finite() {
            return false;
        }
        let d = (self.mid.to_rational().unwrap() - other.mid.to_rational().unwrap()).abs();
        d + other.rad.to_rational().unwrap() <= self.rad.to_rational().unwrap()
    }

    /// Overlap test against an interval `value ± tol` (exact arithmetic).
    pub fn overlaps_interval(&self, value: &Rational, tol: &Rational) -> bool {
        if !self.rad.is_finite() {
            return true;
        }
        if !self.mid.is_finite() {
            return false;
        }
        let d = (self.mid.to_rational().unwrap() - value).abs();
        let r = self.rad.to_rational().unwrap() + tol.clone();
        d <= r
    }

    /// Overlap with a decimal literal, read with an uncertainty of half a
    /// unit in its last place. The golden-test helper.
    pub fn overlaps_decimal(&self, s: &str) -> bool {
        let (v, half_ulp) = parse_decimal_with_ulp(s);
        self.overlaps_interval(&v, &half_ulp)
    }

    pub fn add_error(&mut self, extra: &Float) {
        self.rad = fix_rad(rad_up(&self.rad + extra));
    }

    /// Convex hull of two balls.
    pub fn union(&self, other: &RealBall, prec: u32) -> RealBall {
        let p = clamp_prec(prec).max(self.prec()).max(other.prec());
        let lo1 = self.lower_float(p);
        let lo2 = other.lower_float(p);
        let hi1 = self.upper_float(p);
        let hi2 = other.upper_float(p);
        let lo = if lo1 < lo2 { lo1 } else { lo2 };
        let hi = if hi1 > hi2 { hi1 } else { hi2 };
        RealBall::from_endpoints(&lo, &hi, prec)
    }

    pub fn neg(&self) -> RealBall {
        let mut mid = self.mid.clone();
        mid = -mid;
        RealBall { mid, rad: self.rad.clone() }
    }

    pub fn add(&self, other: &RealBall, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let rad = rad_up(&self.rad + &other.rad);
        let rad = rad_up(&rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn sub(&self, other: &RealBall, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid - &other.mid, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let rad = rad_up(&self.rad + &other.rad);
        let rad = rad_up(&rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn mul(&self, other: &RealBall, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        // |a| rb + |b| ra + ra rb + rounding
        let am = rad_up(&*self.mid.as_abs());
        let bm = rad_up(&*other.mid.as_abs());
        let t1 = rad_up(&am * &other.rad);
        let t2 = rad_up(&bm * &self.rad);
        let t3 = rad_up(&self.rad * &other.rad);
        let rad = rad_up(&t1 + &t2);
        let rad = rad_up(&rad + &t3);
        let rad = rad_up(&rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    /// Multiplication by an exact machine integer.
    pub fn mul_i64(&self, k: i64, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid * k, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let ka = Float::with_val(RAD_PREC, k.unsigned_abs());
        let t = rad_up(&ka * &self.rad);
        let rad = rad_up(&t + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn checked_div(&self, other: &RealBall, prec: u32) -> Result<RealBall> {
        if other.contains_zero() || !other.rad.is_finite() {
            return Err(Error::DivisionByZeroBall);
        }
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        // |a/b - am/bm| <= (ra |bm| + |am| rb) / (|bm| (|bm| - rb))
        let am = rad_up(&*self.mid.as_abs());
        let bm_up = rad_up(&*other.mid.as_abs());
        let bm_lo = super::rad_down_nonneg(&*other.mid.as_abs());
        let n1 = rad_up(&self.rad * &bm_up);
        let n2 = rad_up(&am * &other.rad);
        let num = rad_up(&n1 + &n2);
        let den_inner = super::rad_down_nonneg(&bm_lo - &other.rad);
        let den = super::rad_down_nonneg(&bm_lo * &den_inner);
        if den.is_zero() {
            return Err(Error::DivisionByZeroBall);
        }
        let mut q = Float::new(RAD_PREC);
        q.assign(&num);
        q.div_assign_round(&den, Round::Up);
        let rad = rad_up(&q + &rr);
        Ok(RealBall { mid, rad: fix_rad(rad) })
    }

    /// Division; a denominator containing zero yields an infinite radius.
    pub fn div(&self, other: &RealBall, prec: u32) -> RealBall {
        match self.checked_div(other, prec) {
            Ok(b) => b,
            Err(_) => {
                let (mid, _) =
                    Float::with_val_round(clamp_prec(prec), &self.mid / &other.mid, Round::Nearest);
                RealBall { mid, rad: rad_inf() }
            }
        }
    }

    /// Ball of |x|.
    pub fn abs(&self) -> RealBall {
        if !self.rad.is_finite() {
            return self.clone();
        }
        if self.contains_zero() {
            // hull [0, mag]
            let m = self.mag_upper();
            let mut mid = Float::with_val(self.mid.prec().max(RAD_PREC), &m);
            mid /= 2u32; // exact
            let mut half = m;
            half /= 2u32; // exact at RAD_PREC
            RealBall { mid, rad: fix_rad(half) }
        } else {
            RealBall { mid: self.mid.clone().abs(), rad: self.rad.clone() }
        }
    }

    pub fn square(&self, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        if !self.rad.is_finite() {
            let (mid, _) = Float::with_val_round(prec, self.mid.square_ref(), Round::Nearest);
            return RealBall { mid, rad: rad_inf() };
        }
        // monotone in |x|
        let lo_m = self.mag_lower();
        let hi_m = self.mag_upper();
        let (lo, _) = Float::with_val_round(prec, &lo_m * &lo_m, Round::Down);
        let (hi, _) = Float::with_val_round(prec, &hi_m * &hi_m, Round::Up);
        RealBall::from_endpoints(&lo, &hi, prec)
    }

    /// Endpoint evaluation of a monotonically increasing function.
    fn monotone_inc(&self, prec: u32, f: impl Fn(&mut Float, Round)) -> RealBall {
        let prec = clamp_prec(prec);
        let mut lo = self.lower_float(prec);
        f(&mut lo, Round::Down);
        let mut hi = self.upper_float(prec);
        f(&mut hi, Round::Up);
        RealBall::from_endpoints(&lo, &hi, prec)
    }

    pub fn exp(&self, prec: u32) -> RealBall {
        if !self.rad.is_finite() {
            let (mid, _) = Float::with_val_round(clamp_prec(prec), self.mid.exp_ref(), Round::Nearest);
            return RealBall { mid, rad: rad_inf() };
        }
        self.monotone_inc(prec, |x, r| {
            x.exp_round(r);
        })
    }

    pub fn ln(&self, prec: u32) -> Result<RealBall> {
        if !self.is_positive() || !self.rad.is_finite() {
            return Err(Error::BranchCut("log"));
        }
        Ok(self.monotone_inc(prec, |x, r| {
            x.ln_round(r);
        }))
    }

    pub fn sqrt(&self, prec: u32) -> Result<RealBall> {
        if self.is_negative() || !self.rad.is_finite() {
            return Err(Error::BranchCut("sqrt"));
        }
        let prec = clamp_prec(prec);
        let mut lo = self.lower_float(prec);
        if lo.is_sign_negative() {
            // the represented set is >= 0; clamp the directed bound
            lo = Float::new(prec);
        }
        lo.sqrt_round(Round::Down);
        let mut hi = self.upper_float(prec);
        hi.sqrt_round(Round::Up);
        Ok(RealBall::from_endpoints(&lo, &hi, prec))
    }

    /// x^e for certainly-positive x and exact rational e.
    pub fn pow_rational(&self, e: &Rational, prec: u32) -> Result<RealBall> {
        if e.cmp0() == Ordering::Equal {
            return Ok(RealBall::one(prec));
        }
        if !self.is_positive() || !self.rad.is_finite() {
            return Err(Error::BranchCut("pow"));
        }
        let prec = clamp_prec(prec);
        let e_pos = e.cmp0() == Ordering::Greater;
        let pow_at = |x: &Float, d: Round| -> Float {
            // x^e = exp(e ln x); each stage rounded so the final value is a
            // directed bound in direction d.
            let mut l = x.clone();
            l.ln_round(if e_pos { d } else { flip(d) });
            let (mut t, _) = Float::with_val_round(prec, &l * e, d);
            t.exp_round(d);
            t
        };
        let (lo, hi) = if e_pos {
            (
                pow_at(&self.lower_float(prec), Round::Down),
                pow_at(&self.upper_float(prec), Round::Up),
            )
        } else {
            (
                pow_at(&self.upper_float(prec), Round::Down),
                pow_at(&self.lower_float(prec), Round::Up),
            )
        };
        Ok(RealBall::from_endpoints(&lo, &hi, prec))
    }

    /// sin with Lipschitz-1 radius propagation.
    pub fn sin(&self, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, self.mid.sin_ref(), Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let rad = rad_up(&self.rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn cos(&self, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, self.mid.cos_ref(), Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let rad = rad_up(&self.rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }

    pub fn const_pi(prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, rug::float::Constant::Pi, Round::Nearest);
        let rad = rounding_rad(&mid, ord, prec);
        RealBall { mid, rad }
    }

    pub fn const_euler(prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, rug::float::Constant::Euler, Round::Nearest);
        let rad = rounding_rad(&mid, ord, prec);
        RealBall { mid, rad }
    }

    /// Re-round the midpoint to `prec`, absorbing the error in the radius.
    pub fn round_to(&self, prec: u32) -> RealBall {
        let prec = clamp_prec(prec);
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let rr = rounding_rad(&mid, ord, prec);
        let rad = rad_up(&self.rad + &rr);
        RealBall { mid, rad: fix_rad(rad) }
    }
}

/// Parse a plain decimal literal (optional exponent) into an exact rational
/// plus half a unit in its last place.
pub(crate) fn parse_decimal_with_ulp(s: &str) -> (Rational, Rational) {
    let s = s.trim();
    let (mant, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().expect("exponent")),
        None => (s, 0i64),
    };
    let (digits, frac_digits) = match mant.find('.') {
        Some(i) => {
            let frac = &mant[i + 1..];
            (format!("{}{}", &mant[..i], frac), frac.len() as i64)
        }
        None => (mant.to_string(), 0),
    };
    let int: Integer = digits.parse().expect("decimal literal");
    let scale = exp10 - frac_digits;
    let pow = Integer::from(10).pow(scale.unsigned_abs() as u32);
    let v = if scale >= 0 {
        Rational::from(int * pow)
    } else {
        Rational::from((int, pow))
    };
    let ulp_scale = frac_digits - exp10;
    let ulp_pow = Integer::from(10).pow(ulp_scale.unsigned_abs() as u32);
    let half_ulp = if ulp_scale >= 0 {
        Rational::from((1, 2)) / ulp_pow
    } else {
        Rational::from((1, 2)) * ulp_pow
    };
    (v, half_ulp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_exact_ones() {
        let a = RealBall::from_i64(1, 64);
        let b = RealBall::from_i64(1, 64);
        let c = a.add(&b, 64);
        assert!(c.contains_rational(&Rational::from(2)));
        assert!(c.is_exact());
    }

    #[test]
    fn mul_inflated_ball_contains_endpoints() {
        // [1 ± 1/8]^2 contains [(7/8)^2, (9/8)^2]
        let mut a = RealBall::from_i64(1, 64);
        a.add_error(&Float::with_val(RAD_PREC, 0.125));
        let c = a.mul(&a.clone(), 64);
        assert!(c.contains_rational(&Rational::from((49, 64))));
        assert!(c.contains_rational(&Rational::from((81, 64))));
    }

    #[test]
    fn div_by_zero_ball_rejected() {
        let a = RealBall::from_i64(1, 64);
        let mut b = RealBall::zero(64);
        b.add_error(&Float::with_val(RAD_PREC, 0.5));
        assert!(a.checked_div(&b, 64).is_err());
        assert!(!a.div(&b, 64).rad().is_finite());
    }

    #[test]
    fn exp_one_contains_e() {
        let a = RealBall::from_i64(1, 160);
        let e = a.exp(160);
        assert!(e.overlaps_decimal("2.71828182845904523536028747135266249775725"));
        assert!(e.rad().clone() < 1e-40);
    }

    #[test]
    fn ln_two() {
        let a = RealBall::from_i64(2, 64);
        let l = a.ln(64).unwrap();
        assert!(l.overlaps_decimal("0.69314718056"));
    }

    #[test]
    fn pi_digits() {
        let p = RealBall::const_pi(64);
        assert!(p.overlaps_decimal("3.1415926535897932"));
    }

    #[test]
    fn rational_exactness() {
        let half = RealBall::from_rational(&Rational::from((3, 2)), 64);
        assert!(half.is_exact());
        let third = RealBall::from_rational(&Rational::from((1, 3)), 64);
        assert!(!third.is_exact());
        assert!(third.contains_rational(&Rational::from((1, 3))));
    }

    #[test]
    fn sqrt_of_quarter() {
        let q = RealBall::from_rational(&Rational::from((1, 4)), 64);
        let s = q.sqrt(64).unwrap();
        assert!(s.contains_rational(&Rational::from((1, 2))));
    }

    #[test]
    fn pow_rational_directions() {
        let x = RealBall::from_i64(4, 64);
        let y = x.pow_rational(&Rational::from((1, 2)), 64).unwrap();
        assert!(y.contains_rational(&Rational::from(2)));
        let z = x.pow_rational(&Rational::from((-1, 2)), 64).unwrap();
        assert!(z.contains_rational(&Rational::from((1, 2))));
        let h = RealBall::from_rational(&Rational::from((1, 4)), 64);
        let w = h.pow_rational(&Rational::from((3, 2)), 64).unwrap();
        assert!(w.contains_rational(&Rational::from((1, 8))));
    }

    #[test]
    fn refinement_shrinks_radius() {
        for p in [64u32, 128, 256, 512] {
            let a = RealBall::from_i64(1, p).exp(p);
            let b = RealBall::from_i64(1, 2 * p).exp(2 * p);
            assert!(b.rad().clone() <= a.rad().clone());
            assert!(a.intersects(&b));
        }
    }

    #[test]
    fn abs_of_straddling_ball() {
        let mut a = RealBall::from_i64(0, 64);
        a.add_error(&Float::with_val(RAD_PREC, 2));
        let b = a.abs();
        assert!(b.contains_rational(&Rational::from(0)));
        assert!(b.contains_rational(&Rational::from(2)));
        assert!(!b.contains_rational(&Rational::from(-1)));
    }

    #[test]
    fn decimal_parsing() {
        let (v, u) = parse_decimal_with_ulp("0.5");
        assert_eq!(v, Rational::from((1, 2)));
        assert_eq!(u, Rational::from((1, 20)));
        let (v, _) = parse_decimal_with_ulp("1e-3");
        assert_eq!(v, Rational::from((1, 1000)));
        let (v, _) = parse_decimal_with_ulp("-2.5e2");
        assert_eq!(v, Rational::from(-250));
    }
}
