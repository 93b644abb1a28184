use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Round {
    Floor,
    Ceil,
}

/// Exact binary fraction `man · 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        Self { man, exp }
    }

    pub fn zero() -> Self {
        Self { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Self::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self::new(self.man.abs(), self.exp)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.man, self.exp)
    }

    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `e` with `2^(e-1) <= |x| < 2^e`; `i64::MIN` for zero.
    pub fn mag(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.man.bits() as i64 + self.exp
        }
    }

    pub fn shl(&self, k: i64) -> Self {
        Self::new(self.man.clone(), self.exp + k)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &o.man << (o.exp - e) as usize;
        Self::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.man * &o.man, self.exp + o.exp)
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.man << self.exp as usize)
        } else {
            Rat::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub(crate) fn round(&self, prec: u32, mode: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        let q = shr_round(&self.man, s, mode);
        Self::new(q, self.exp + s as i64)
    }

    /// `x / y` rounded to about `prec` significant bits.
    pub(crate) fn div_round(x: &Self, y: &Self, prec: u32, mode: Round) -> Self {
        assert!(!y.is_zero(), "dyadic division by zero");
        if x.is_zero() {
            return Self::zero();
        }
        let k = (prec as i64 + y.bits() as i64 - x.bits() as i64 + 2).max(0);
        let num = &x.man << k as usize;
        let (q, r) = num.div_mod_floor(&y.man);
        // div_mod_floor rounds toward −∞ for either sign of the divisor.
        let q = match mode {
            Round::Floor => q,
            Round::Ceil if r.is_zero() => q,
            Round::Ceil => q + 1,
        };
        Self::new(q, x.exp - y.exp - k)
    }

    pub(crate) fn from_rat(r: &Rat, prec: u32, mode: Round) -> Self {
        Self::div_round(&Self::from_int(r.numer().clone()), &Self::from_int(r.denom().clone()), prec, mode)
    }

    /// Floor as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            shr_round(&self.man, (-self.exp) as u64, Round::Floor)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            shr_round(&self.man, (-self.exp) as u64, Round::Ceil)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_dir(None)
    }

    /// Largest double not above the value.
    pub fn to_f64_down(&self) -> f64 {
        self.to_f64_dir(Some(Round::Floor))
    }

    /// Smallest double not below the value.
    pub fn to_f64_up(&self) -> f64 {
        self.to_f64_dir(Some(Round::Ceil))
    }

    fn to_f64_dir(&self, mode: Option<Round>) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, mode.unwrap_or(Round::Floor));
        let m = r.man.to_f64().expect("53-bit mantissa fits a double");
        let v = scale_pow2(m, r.exp);
        match mode {
            // Exact unless the exponent left the normal range.
            Some(Round::Floor) if v.is_infinite() && v > 0.0 => f64::MAX,
            Some(Round::Floor) if v == 0.0 && self.signum() < 0 => -f64::MIN_POSITIVE,
            Some(Round::Ceil) if v.is_infinite() && v < 0.0 => f64::MIN,
            Some(Round::Ceil) if v == 0.0 && self.signum() > 0 => f64::MIN_POSITIVE,
            _ => v,
        }
    }
}

fn scale_pow2(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

fn shr_round(man: &BigInt, s: u64, mode: Round) -> BigInt {
    let d = BigInt::one() << s as usize;
    let (q, r) = man.div_mod_floor(&d);
    match mode {
        Round::Floor => q,
        Round::Ceil if r.is_zero() => q,
        Round::Ceil => q + 1,
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), o.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes first, fall back to exact subtraction.
        let (ma, mb) = (self.mag(), o.mag());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        self.sub(o).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn rounding_directions_bracket_the_value() {
        let third = rat(1, 3);
        let lo = Dyadic::from_rat(&third, 64, Round::Floor);
        let hi = Dyadic::from_rat(&third, 64, Round::Ceil);
        assert!(lo.to_rat() < third && third < hi.to_rat());
        assert!(hi.sub(&lo) <= Dyadic::pow2(-64));
    }

    #[test]
    fn floor_and_ceil_of_negative_values() {
        let x = Dyadic::new(BigInt::from(-5), -1); // −2.5
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.ceil(), BigInt::from(-2));
        let y = Dyadic::new(BigInt::from(-4), -1);
        assert_eq!(y.floor(), BigInt::from(-2));
        assert_eq!(y.ceil(), BigInt::from(-2));
    }

    #[test]
    fn directed_double_conversion() {
        let x = Dyadic::from_rat(&rat(1, 10), 200, Round::Floor);
        assert!(x.to_f64_down() <= 0.1 || x.to_rat() >= Rat::new(1.into(), 10.into()));
        assert!(x.to_f64_down() <= x.to_f64_up());
        let exact = Dyadic::from_i64(12345);
        assert_eq!(exact.to_f64_down(), 12345.0);
        assert_eq!(exact.to_f64_up(), 12345.0);
    }

    proptest! {
        #[test]
        fn ordering_agrees_with_rationals(a in -10_000i64..10_000, ea in -40i64..40, b in -10_000i64..10_000, eb in -40i64..40) {
            let x = Dyadic::new(a.into(), ea);
            let y = Dyadic::new(b.into(), eb);
            prop_assert_eq!(x.cmp(&y), x.to_rat().cmp(&y.to_rat()));
            prop_assert_eq!(x.add(&y).to_rat(), x.to_rat() + y.to_rat());
            prop_assert_eq!(x.mul(&y).to_rat(), x.to_rat() * y.to_rat());
        }

        #[test]
        fn division_rounds_in_the_requested_direction(a in -10_000i64..10_000, b in 1i64..10_000, neg in any::<bool>()) {
            let b = if neg { -b } else { b };
            let x = Dyadic::from_i64(a);
            let y = Dyadic::from_i64(b);
            let exact = rat(a, b);
            let lo = Dyadic::div_round(&x, &y, 40, Round::Floor).to_rat();
            let hi = Dyadic::div_round(&x, &y, 40, Round::Ceil).to_rat();
            prop_assert!(lo <= exact && exact <= hi);
        }
    }
}
