use rug::float::Round;
use rug::{Float, Rational};

use super::real::RealBall;
use super::{clamp_prec, rad_up, rounding_rad};
use crate::error::{Error, Result};

/// Branch convention for arguments, logarithms and fractional powers.
///
/// Ordinary analytic continuation never consults this; it only matters when
/// a series expansion lives at a singular point and `log(z - x0)` or
/// `(z - x0)^nu` must be given a concrete value. The convention is chosen
/// from the direction of the path segment adjacent to the singular point so
/// that the segment stays away from the cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgBranch {
    /// arg in (-pi, pi], cut on the negative real axis.
    Principal,
    /// arg in (0, 2*pi), cut on the positive real axis; agrees with
    /// `Principal` on the upper half plane.
    PositiveCutUp,
    /// arg in (-2*pi, 0), cut on the positive real axis; agrees with
    /// `Principal` on the lower half plane.
    PositiveCutDown,
}

impl ArgBranch {
    /// Convention whose cut is opposite the direction `(re, im)`.
    pub fn for_direction(re_sign: f64, im_sign: f64) -> ArgBranch {
        if re_sign >= 0.0 {
            ArgBranch::Principal
        } else if im_sign >= 0.0 {
            ArgBranch::PositiveCutUp
        } else {
            ArgBranch::PositiveCutDown
        }
    }
}

/// Rectangular complex ball: independent real balls for the real and
/// imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: RealBall::zero(prec), im: RealBall::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall { re: RealBall::one(prec), im: RealBall::zero(prec) }
    }

    pub fn from_real(re: RealBall) -> Self {
        let prec = re.prec();
        ComplexBall { re, im: RealBall::zero(prec) }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        ComplexBall::from_real(RealBall::from_i64(v, prec))
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        ComplexBall::from_real(RealBall::from_rational(v, prec))
    }

    pub fn from_rational_pair(re: &Rational, im: &Rational, prec: u32) -> Self {
        ComplexBall {
            re: RealBall::from_rational(re, prec),
            im: RealBall::from_rational(im, prec),
        }
    }

    pub fn i(prec: u32) -> Self {
        ComplexBall { re: RealBall::zero(prec), im: RealBall::one(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn intersects(&self, other: &ComplexBall) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn contains_ball(&self, other: &ComplexBall) -> bool {
        self.re.contains_ball(&other.re) && self.im.contains_ball(&other.im)
    }

    pub fn contains_rational_pair(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    /// Upper bound on |z| (hypot of component magnitudes).
    pub fn mag_upper(&self) -> Float {
        let a = self.re.mag_upper();
        let b = self.im.mag_upper();
        let h = rad_up(&a * &a);
        let h2 = rad_up(&b * &b);
        let mut s = rad_up(&h + &h2);
        s.sqrt_round(Round::Up);
        s
    }

    /// Lower bound on |z| (0 if the ball contains 0).
    pub fn mag_lower(&self) -> Float {
        let a = self.re.mag_lower();
        let b = self.im.mag_lower();
        let h = super::rad_down_nonneg(&a * &a);
        let h2 = super::rad_down_nonneg(&b * &b);
        let mut s = super::rad_down_nonneg(&h + &h2);
        s.sqrt_round(Round::Down);
        if s.is_sign_negative() {
            super::rad_zero()
        } else {
            s
        }
    }

    /// Max of the two component radii.
    pub fn rad_upper(&self) -> Float {
        let a = self.re.rad();
        let b = self.im.rad();
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn add_error(&mut self, extra: &Float) {
        self.re.add_error(extra);
        self.im.add_error(extra);
    }

    pub fn union(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        ComplexBall {
            re: self.re.union(&other.re, prec),
            im: self.im.union(&other.im, prec),
        }
    }

    pub fn round_to(&self, prec: u32) -> ComplexBall {
        ComplexBall { re: self.re.round_to(prec), im: self.im.round_to(prec) }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        ComplexBall {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        ComplexBall {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        let ac = self.re.mul(&other.re, prec);
        let bd = self.im.mul(&other.im, prec);
        let ad = self.re.mul(&other.im, prec);
        let bc = self.im.mul(&other.re, prec);
        ComplexBall { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
    }

    pub fn mul_real(&self, other: &RealBall, prec: u32) -> ComplexBall {
        ComplexBall {
            re: self.re.mul(other, prec),
            im: self.im.mul(other, prec),
        }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> ComplexBall {
        ComplexBall { re: self.re.mul_i64(k, prec), im: self.im.mul_i64(k, prec) }
    }

    /// Multiply by i (exact rotation).
    pub fn mul_i(&self) -> ComplexBall {
        ComplexBall { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn square(&self, prec: u32) -> ComplexBall {
        self.mul(self, prec)
    }

    pub fn checked_div(&self, other: &ComplexBall, prec: u32) -> Result<ComplexBall> {
        // z/w = z conj(w) / |w|^2
        let d1 = other.re.square(prec);
        let d2 = other.im.square(prec);
        let den = d1.add(&d2, prec);
        if den.contains_zero() {
            return Err(Error::DivisionByZeroBall);
        }
        let num = self.mul(&other.conj(), prec);
        Ok(ComplexBall {
            re: num.re.checked_div(&den, prec)?,
            im: num.im.checked_div(&den, prec)?,
        })
    }

    pub fn recip(&self, prec: u32) -> Result<ComplexBall> {
        ComplexBall::one(prec).checked_div(self, prec)
    }

    /// Ball of |z| as a real ball.
    pub fn abs(&self, prec: u32) -> RealBall {
        let r2 = self.re.square(prec).add(&self.im.square(prec), prec);
        // r2 is certainly >= 0 up to rounding; sqrt clamps
        r2.sqrt(prec).unwrap_or_else(|_| {
            RealBall::new(Float::new(clamp_prec(prec)), super::rad_inf())
        })
    }

    pub fn exp(&self, prec: u32) -> ComplexBall {
        let m = self.re.exp(prec);
        let c = self.im.cos(prec);
        let s = self.im.sin(prec);
        ComplexBall { re: m.mul(&c, prec), im: m.mul(&s, prec) }
    }

    /// arg(z) under the given branch convention.
    ///
    /// Errors if the ball straddles the convention's cut or may contain 0.
    pub fn arg(&self, branch: ArgBranch, prec: u32) -> Result<RealBall> {
        match branch {
            ArgBranch::Principal => self.arg_principal(prec),
            ArgBranch::PositiveCutUp => {
                // arg(z) = arg(-z) + pi, cut on the positive real axis
                if self.im.is_exact_zero() && self.re.is_positive() {
                    return Err(Error::BranchCut("arg"));
                }
                let a = self.neg().arg_principal(prec)?;
                Ok(a.add(&RealBall::const_pi(prec), prec))
            }
            ArgBranch::PositiveCutDown => {
                if self.im.is_exact_zero() && self.re.is_positive() {
                    return Err(Error::BranchCut("arg"));
                }
                let a = self.neg().arg_principal(prec)?;
                Ok(a.sub(&RealBall::const_pi(prec), prec))
            }
        }
    }

    fn arg_principal(&self, prec: u32) -> Result<RealBall> {
        let prec = clamp_prec(prec);
        if self.contains_zero() {
            return Err(Error::BranchCut("arg"));
        }
        if self.im.is_exact_zero() {
            // On the real axis the convention is exact: 0 on the positive
            // side, +pi on the cut (limit from above). Avoids MPFR's signed
            // zero deciding the sign of atan2 on the cut.
            if self.re.is_positive() {
                return Ok(RealBall::zero(prec));
            }
            if self.re.is_negative() {
                return Ok(RealBall::const_pi(prec));
            }
            return Err(Error::BranchCut("arg"));
        }
        // Straddle check: the cut is {x <= 0, y = 0}.
        if self.im.contains_zero() && !self.re.is_positive() {
            return Err(Error::BranchCut("arg"));
        }
        let (mid, ord) = Float::with_val_round(
            prec,
            self.im.mid().atan2_ref(self.re.mid()),
            Round::Nearest,
        );
        let rr = rounding_rad(&mid, ord, prec);
        // |grad atan2|_2 <= 1/|z|; |delta|_2 <= rad_re + rad_im
        let lo = self.mag_lower();
        if lo.is_zero() {
            return Err(Error::BranchCut("arg"));
        }
        let num = rad_up(self.re.rad() + self.im.rad());
        let mut prop = num;
        {
            use rug::ops::DivAssignRound;
            prop.div_assign_round(&lo, Round::Up);
        }
        let rad = rad_up(&prop + &rr);
        Ok(RealBall::new(mid, rad))
    }

    /// log(z) with the given branch of the argument.
    pub fn ln_branch(&self, branch: ArgBranch, prec: u32) -> Result<ComplexBall> {
        let a = self.arg(branch, prec)?;
        let m = self.abs(prec).ln(prec)?;
        Ok(ComplexBall { re: m, im: a })
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64, prec: u32) -> Result<ComplexBall> {
        if n == 0 {
            return Ok(ComplexBall::one(prec));
        }
        let mut base = if n < 0 { self.recip(prec)? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ComplexBall::one(prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            k >>= 1;
            if k > 0 {
                base = base.square(prec);
            }
        }
        Ok(acc)
    }

    /// z^e for exact rational e, under the given branch convention.
    pub fn pow_rational(&self, e: &Rational, branch: ArgBranch, prec: u32) -> Result<ComplexBall> {
        if e.is_integer() {
            let n = e.numer().to_i64().ok_or_else(|| {
                Error::Invalid("integer exponent too large".into())
            })?;
            return self.powi(n, prec);
        }
        // Positive real shortcut keeps real data real and tight.
        if self.im.is_exact_zero() && self.re.is_positive() {
            return Ok(ComplexBall::from_real(self.re.pow_rational(e, prec)?));
        }
        let l = self.ln_branch(branch, prec)?;
        let eb = RealBall::from_rational(e, prec);
        Ok(l.mul_real(&eb, prec).exp(prec))
    }

    /// Principal square root.
    pub fn sqrt(&self, prec: u32) -> Result<ComplexBall> {
        self.pow_rational(&Rational::from((1, 2)), ArgBranch::Principal, prec)
    }

    pub fn overlaps_decimal_pair(&self, re: &str, im: &str) -> bool {
        self.re.overlaps_decimal(re) && self.im.overlaps_decimal(im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb(re: i64, im: i64, prec: u32) -> ComplexBall {
        ComplexBall {
            re: RealBall::from_i64(re, prec),
            im: RealBall::from_i64(im, prec),
        }
    }

    #[test]
    fn mul_i_squared_is_minus_one() {
        let i = ComplexBall::i(64);
        let m = i.mul(&i, 64);
        assert!(m.contains_rational_pair(&Rational::from(-1), &Rational::from(0)));
    }

    #[test]
    fn div_round_trip() {
        let a = cb(3, 4, 64);
        let b = cb(1, -2, 64);
        let q = a.checked_div(&b, 64).unwrap();
        let back = q.mul(&b, 64);
        assert!(back.contains_rational_pair(&Rational::from(3), &Rational::from(4)));
    }

    #[test]
    fn arg_of_negative_real_needs_shifted_cut() {
        let z = cb(-1, 0, 64);
        let a = z.arg(ArgBranch::Principal, 64).unwrap();
        assert!(a.overlaps_decimal("3.1415926535897932"));
        let up = z.arg(ArgBranch::PositiveCutUp, 64).unwrap();
        assert!(up.overlaps_decimal("3.1415926535897932"));
        let down = z.arg(ArgBranch::PositiveCutDown, 64).unwrap();
        assert!(down.overlaps_decimal("-3.1415926535897932"));
    }

    #[test]
    fn arg_straddle_rejected() {
        let mut z = cb(-1, 0, 64);
        z.im.add_error(&Float::with_val(RAD_PREC, 0.25));
        assert!(z.arg(ArgBranch::Principal, 64).is_err());
        assert!(z.arg(ArgBranch::PositiveCutUp, 64).is_ok());
    }

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let z = cb(-1, 0, 64);
        let s = z.sqrt(64).unwrap();
        assert!(s.contains_rational_pair(&Rational::from(0), &Rational::from(1)));
    }

    #[test]
    fn exp_i_pi_is_minus_one() {
        let pi = RealBall::const_pi(128);
        let z = ComplexBall { re: RealBall::zero(128), im: pi };
        let e = z.exp(128);
        assert!(e.contains_rational_pair(&Rational::from(-1), &Rational::from(0)));
        assert!(e.rad_upper() < 1e-30);
    }

    #[test]
    fn half_power_of_negative_real_from_below() {
        // (x - x0)^(1/2) just left of x0, approached from below the axis
        let z = cb(-4, 0, 64);
        let s = z
            .pow_rational(&Rational::from((1, 2)), ArgBranch::PositiveCutDown, 64)
            .unwrap();
        assert!(s.contains_rational_pair(&Rational::from(0), &Rational::from(-2)));
    }
}
