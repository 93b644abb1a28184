//! Midpoint–radius real and complex balls over [`Dyadic`] midpoints.
//!
//! Every operation returns a ball that contains the exact image of every
//! point of its inputs. Midpoints are rounded to the ball's working precision
//! and the rounding error is folded into the radius; radii are kept to a
//! short mantissa and always rounded up.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dyadic::Round;
use super::{Dyadic, GaussRat, Int, Rat};

/// Significant bits kept in radii.
const RAD_BITS: u32 = 30;

/// Three-valued outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certified {
    True,
    False,
    Undecided,
}

impl Certified {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }

    pub fn decided(self) -> Option<bool> {
        match self {
            Self::True => Some(true),
            Self::False => Some(false),
            Self::Undecided => None,
        }
    }

    pub fn is_true(self) -> bool {
        self == Self::True
    }

    pub fn not(self) -> Self {
        match self {
            Self::True => Self::False,
            Self::False => Self::True,
            Self::Undecided => Self::Undecided,
        }
    }

    /// Three-valued conjunction.
    pub fn and(self, o: Self) -> Self {
        match (self, o) {
            (Self::False, _) | (_, Self::False) => Self::False,
            (Self::True, Self::True) => Self::True,
            _ => Self::Undecided,
        }
    }
}

fn rad_up(d: Dyadic) -> Dyadic {
    d.round(RAD_BITS, Round::Ceil)
}

/// A real ball `[mid − rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct RealBall {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(rad.signum() >= 0, "negative ball radius");
        let (m, err) = round_mid(&mid, prec);
        Self { mid: m, rad: rad_up(rad.add(&err)), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self { mid: Dyadic::zero(), rad: Dyadic::zero(), prec }
    }

    pub fn from_int(n: &Int, prec: u32) -> Self {
        Self::new(Dyadic::from_int(n.clone()), Dyadic::zero(), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(&Int::from(n), prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        if r.denom().is_one() {
            return Self::from_int(r.numer(), prec);
        }
        let lo = Dyadic::from_rat(r, prec + 2, Round::Floor);
        let hi = Dyadic::from_rat(r, prec + 2, Round::Ceil);
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// Smallest representable ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted ball endpoints");
        let mid = lo.add(hi).shl(-1);
        let rad = hi.sub(lo).shl(-1);
        Self::new(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn lo(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn hi(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo().signum() <= 0 && self.hi().signum() >= 0
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        &self.lo().to_rat() <= r && r <= &self.hi().to_rat()
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.lo() <= o.lo() && o.hi() <= self.hi()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo() <= o.hi() && o.lo() <= self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.lo().signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi().signum() < 0
    }

    /// Widens the radius by a non-negative error term.
    pub fn add_error(&self, err: &Dyadic) -> Self {
        Self { mid: self.mid.clone(), rad: rad_up(self.rad.add(&err.abs())), prec: self.prec }
    }

    fn out_prec(&self, o: &Self) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn neg(&self) -> Self {
        Self { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.mid.add(&o.mid), self.rad.add(&o.rad), self.out_prec(o))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let rad = self
            .mid
            .abs()
            .mul(&o.rad)
            .add(&o.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        Self::new(self.mid.mul(&o.mid), rad, self.out_prec(o))
    }

    pub fn mul_int(&self, n: &Int) -> Self {
        let k = Dyadic::from_int(n.clone());
        Self::new(self.mid.mul(&k), self.rad.mul(&k.abs()), self.prec)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r, self.prec))
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Self { mid: self.mid.shl(k), rad: self.rad.shl(k), prec: self.prec }
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: &Int) -> Self {
        assert!(!n.is_zero(), "ball division by zero integer");
        let d = Dyadic::from_int(n.clone());
        let mid = Dyadic::div_round(&self.mid, &d, self.prec + 4, Round::Floor);
        let err = ulp_of_quotient(&self.mid, &d, self.prec + 4);
        let rad = Dyadic::div_round(&self.rad, &d.abs(), RAD_BITS, Round::Ceil).add(&err);
        Self::new(mid, rad, self.prec)
    }

    /// Reciprocal, or `None` when the ball contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::from_i64(1);
        let mid = Dyadic::div_round(&one, &self.mid, self.prec + 4, Round::Floor);
        let err = ulp_of_quotient(&one, &self.mid, self.prec + 4);
        // |1/x − 1/m| ≤ r / (|m| (|m| − r)) on the ball.
        let m = self.mid.abs();
        let denom = m.mul(&m.sub(&self.rad));
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic::div_round(&self.rad, &denom, RAD_BITS, Round::Ceil)
        };
        Some(Self::new(mid, rad.add(&err), self.prec))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self.mul(&r))
    }

    /// Square root, or `None` when the ball reaches below zero.
    pub fn sqrt(&self) -> Option<Self> {
        let lo = self.lo();
        if lo.signum() < 0 {
            return None;
        }
        if self.mid.is_zero() {
            return Some(Self::zero(self.prec));
        }
        let (s, err) = sqrt_floor(&self.mid, self.prec + 4);
        let sqrt_lo = sqrt_floor(&lo, RAD_BITS + 4).0;
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else if sqrt_lo.is_zero() {
            // Ball touches zero: √x ∈ [0, √hi].
            let (h, herr) = sqrt_floor(&self.hi(), self.prec + 4);
            let top = h.add(&herr);
            return Some(Self::from_endpoints(&Dyadic::zero(), &top, self.prec));
        } else {
            // |√x − √m| = |x − m| / (√x + √m) ≤ r / √lo.
            Dyadic::div_round(&self.rad, &sqrt_lo, RAD_BITS, Round::Ceil)
        };
        Some(Self::new(s, rad.add(&err), self.prec))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_i64(1, self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    /// Ball containing `|x|` for every `x` in `self`.
    pub fn abs(&self) -> Self {
        if self.lo().signum() >= 0 {
            self.clone()
        } else if self.hi().signum() <= 0 {
            self.neg()
        } else {
            let top = self.lo().abs().max(self.hi());
            Self::from_endpoints(&Dyadic::zero(), &top, self.prec)
        }
    }

    /// Ball containing both inputs.
    pub fn union(&self, o: &Self) -> Self {
        let lo = self.lo().min(o.lo());
        let hi = self.hi().max(o.hi());
        Self::from_endpoints(&lo, &hi, self.out_prec(o))
    }

    /// Certified `self < o`.
    pub fn strict_less(&self, o: &Self) -> Certified {
        if self.hi() < o.lo() {
            Certified::True
        } else if self.lo() >= o.hi() {
            Certified::False
        } else {
            Certified::Undecided
        }
    }

    /// Certified `self <= o`.
    pub fn less_eq(&self, o: &Self) -> Certified {
        if self.hi() <= o.lo() {
            Certified::True
        } else if self.lo() > o.hi() {
            Certified::False
        } else {
            Certified::Undecided
        }
    }

    pub fn strict_greater(&self, o: &Self) -> Certified {
        o.strict_less(self)
    }

    /// The integer part when it is the same across the whole ball.
    pub fn floor(&self) -> Option<Int> {
        let (a, b) = (self.lo().floor(), self.hi().floor());
        (a == b).then_some(a)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Directed-rounded double enclosure `(lo, hi)`.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo().to_f64_down(), self.hi().to_f64_up())
    }

    /// Upper bound of the radius as a double.
    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_up()
    }
}

/// One unit in the last place of the rounded quotient `x / y`.
fn ulp_of_quotient(x: &Dyadic, y: &Dyadic, prec: u32) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    let k = (prec as i64 + y.bits() as i64 - x.bits() as i64 + 2).max(0);
    Dyadic::pow2(x.exponent() - y.exponent() - k)
}

fn round_mid(m: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let r = m.round(prec, Round::Floor);
    let err = m.sub(&r);
    (r, err)
}

/// `(s, e)` with `s ≤ √x < s + e`, `x ≥ 0`, about `prec` bits in `s`.
fn sqrt_floor(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    if x.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let bits = x.bits() as i64;
    let mut shift = (2 * prec as i64 + 2 - bits).max(0);
    if (x.exponent() - shift).rem_euclid(2) != 0 {
        shift += 1;
    }
    let n: BigInt = x.mantissa() << shift as usize;
    let s = n.sqrt();
    let half_exp = (x.exponent() - shift) / 2;
    (Dyadic::new(s, half_exp), Dyadic::pow2(half_exp))
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e} ± {:.3e}]", self.mid.to_f64(), self.rad.to_f64_up())
    }
}

/// Complex ball: a pair of real balls.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        Self { re, im }
    }

    pub fn from_gauss(z: &GaussRat, prec: u32) -> Self {
        Self::new(RealBall::from_rat(&z.re, prec), RealBall::from_rat(&z.im, prec))
    }

    pub fn from_real(re: RealBall) -> Self {
        let prec = re.prec();
        Self::new(re, RealBall::zero(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn mul_real(&self, k: &RealBall) -> Self {
        Self::new(self.re.mul(k), self.im.mul(k))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    /// `|z|²`.
    pub fn norm(&self) -> RealBall {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> RealBall {
        let n = self.norm();
        if n.lo().signum() > 0 {
            return n.sqrt().expect("norm is positive");
        }
        // Modulus somewhere in [0, √hi].
        let top = RealBall::new(n.hi(), Dyadic::zero(), n.prec()).sqrt().expect("hi ≥ 0");
        RealBall::from_endpoints(&Dyadic::zero(), &top.hi(), n.prec())
    }

    pub fn pow(&self, e: u32) -> Self {
        let prec = self.prec();
        let mut acc = Self::from_real(RealBall::from_i64(1, prec));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}
