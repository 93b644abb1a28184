//! Certified `exp`, `log`, `atan` and the constants `ln 2`, `π`.
//!
//! Each function evaluates a power series at the midpoint in ball arithmetic
//! with guard bits, adds an explicit bound on the truncated tail, then widens
//! by a Lipschitz bound for the input radius.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Dyadic, Int, RealBall};

const GUARD: u32 = 24;

thread_local! {
    static LN2: RefCell<HashMap<u32, RealBall>> = RefCell::new(HashMap::new());
    static PI: RefCell<HashMap<u32, RealBall>> = RefCell::new(HashMap::new());
}

impl RealBall {
    pub fn exp(&self) -> RealBall {
        let prec = self.prec();
        let r = self.rad().clone();
        if r > Dyadic::pow2(-1) {
            // Wide input: exp is monotone, so evaluate both endpoints.
            let lo = RealBall::new(self.lo(), Dyadic::zero(), prec).exp();
            let hi = RealBall::new(self.hi(), Dyadic::zero(), prec).exp();
            return RealBall::from_endpoints(&lo.lo(), &hi.hi(), prec);
        }
        let e = exp_point(self.mid(), prec);
        if r.is_zero() {
            return e;
        }
        // |e^x − e^m| ≤ e^m (e^r − 1) ≤ 2 r e^m for r ≤ 1/2.
        let err = e.hi().mul(&r).shl(1);
        e.add_error(&err)
    }

    /// Natural logarithm, or `None` unless the ball is strictly positive.
    pub fn ln(&self) -> Option<RealBall> {
        if !self.is_positive() {
            return None;
        }
        let prec = self.prec();
        let l = ln_point(self.mid(), prec);
        if self.rad().is_zero() {
            return Some(l);
        }
        // |ln x − ln m| ≤ r / lo.
        let bound = RealBall::new(self.rad().clone(), Dyadic::zero(), 64)
            .div(&RealBall::new(self.lo(), Dyadic::zero(), 64))
            .expect("lower endpoint is positive");
        Some(l.add_error(&bound.hi()))
    }

    pub fn atan(&self) -> RealBall {
        let a = atan_point(self.mid(), self.prec());
        // |atan'| ≤ 1.
        a.add_error(self.rad())
    }

    /// `self^e` for a strictly positive base and real exponent.
    pub fn powf(&self, e: &RealBall) -> Option<RealBall> {
        Some(self.ln()?.mul(e).exp())
    }

    pub fn ln2(prec: u32) -> RealBall {
        cached(&LN2, prec, || {
            let wp = prec + GUARD;
            let third = RealBall::from_i64(1, wp).div_int(&Int::from(3));
            atanh_series(&third).mul_pow2(1).with_prec(prec)
        })
    }

    pub fn pi(prec: u32) -> RealBall {
        cached(&PI, prec, || {
            let wp = prec + GUARD;
            // Machin: π = 16 atan(1/5) − 4 atan(1/239).
            let a = atan_series(&RealBall::from_i64(1, wp).div_int(&Int::from(5)));
            let b = atan_series(&RealBall::from_i64(1, wp).div_int(&Int::from(239)));
            a.mul_pow2(4).sub(&b.mul_pow2(2)).with_prec(prec)
        })
    }
}

fn cached(
    cache: &'static std::thread::LocalKey<RefCell<HashMap<u32, RealBall>>>,
    prec: u32,
    f: impl FnOnce() -> RealBall,
) -> RealBall {
    if let Some(v) = cache.with(|c| c.borrow().get(&prec).cloned()) {
        return v;
    }
    let v = f();
    cache.with(|c| c.borrow_mut().insert(prec, v.clone()));
    v
}

fn exp_point(m: &Dyadic, prec: u32) -> RealBall {
    // Reduce to |s| ≤ 2^-8, then square back k times.
    let k = if m.is_zero() { 0 } else { (m.mag() + 8).max(0) };
    let wp = prec + GUARD + k as u32;
    let s = RealBall::new(m.shl(-k), Dyadic::zero(), wp);
    let mut sum = RealBall::from_i64(1, wp);
    let mut term = RealBall::from_i64(1, wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut n = 1u64;
    loop {
        term = term.mul(&s).div_int(&Int::from(n));
        sum = sum.add(&term);
        if term.abs().hi() < eps || s.mid().is_zero() {
            break;
        }
        n += 1;
    }
    // Tail Σ_{j>n} |s|^j / j! ≤ |term_n|, since |s| ≤ 2^-8.
    let mut e = sum.add_error(&term.abs().hi());
    for _ in 0..k {
        e = e.sqr();
    }
    e.with_prec(prec)
}

/// `Σ z^(2n+1)/(2n+1)` for `|z| ≤ 1/2`, with tail bound.
fn atanh_series(z: &RealBall) -> RealBall {
    odd_series(z, false)
}

/// `Σ (−1)^n z^(2n+1)/(2n+1)` for `|z| ≤ 1/2`, with tail bound.
fn atan_series(z: &RealBall) -> RealBall {
    odd_series(z, true)
}

fn odd_series(z: &RealBall, alternating: bool) -> RealBall {
    let wp = z.prec();
    let z2 = z.sqr();
    let mut power = z.clone();
    let mut sum = RealBall::zero(wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut n = 0u64;
    loop {
        let term = power.div_int(&Int::from(2 * n + 1));
        if alternating && n % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
        power = power.mul(&z2);
        if power.abs().hi() < eps {
            break;
        }
        n += 1;
    }
    // Remaining terms are bounded by |z|^(2n+3) · Σ z^(2k) ≤ (4/3)|z|^(2n+3).
    let tail = power.abs().hi();
    sum.add_error(&tail.add(&tail.shl(-1)))
}

fn ln_point(m: &Dyadic, prec: u32) -> RealBall {
    // m = f · 2^K with f ∈ [2^-1/2, 2^1/2).
    let bits = m.bits() as i64;
    let mut kexp = m.exponent() + bits;
    let mut f = Dyadic::new(m.mantissa().clone(), -bits); // ∈ [1/2, 1)
    // √2/2 ≈ 0.7071: use 181/256 as a cheap threshold; any split in [1/2, 1) is valid.
    if f < Dyadic::new(BigInt::from(181), -8) {
        f = f.shl(1);
        kexp -= 1;
    }
    let wp = prec + GUARD + (64 - (kexp.unsigned_abs() | 1).leading_zeros());
    let fb = RealBall::new(f, Dyadic::zero(), wp);
    let one = RealBall::from_i64(1, wp);
    let z = fb.sub(&one).div(&fb.add(&one)).expect("f + 1 > 0");
    let lf = atanh_series(&z).mul_pow2(1);
    let l2 = RealBall::ln2(wp).mul_int(&Int::from(kexp));
    lf.add(&l2).with_prec(prec)
}

fn atan_point(m: &Dyadic, prec: u32) -> RealBall {
    let mut k = 0i64;
    let wp = prec + GUARD + 8;
    let mut s = RealBall::new(m.clone(), Dyadic::zero(), wp);
    let one = RealBall::from_i64(1, wp);
    let limit = Dyadic::pow2(-3);
    // atan(x) = 2 atan(x / (1 + √(1 + x²))).
    while s.abs().hi() > limit {
        let root = one.add(&s.sqr()).sqrt().expect("1 + x² > 0");
        s = s.div(&one.add(&root)).expect("1 + √(1 + x²) > 0");
        k += 1;
    }
    atan_series(&s).mul_pow2(k).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close(b: &RealBall, v: f64, tol: f64) -> bool {
        (b.to_f64() - v).abs() <= tol * v.abs().max(1.0)
    }

    #[test]
    fn constants_match_known_digits() {
        let pi = RealBall::pi(256);
        assert!(close(&pi, std::f64::consts::PI, 1e-15));
        assert!(pi.rad_f64() < 1e-70);
        let ln2 = RealBall::ln2(256);
        assert!(close(&ln2, std::f64::consts::LN_2, 1e-15));
        // π to 38 decimals.
        let digits: Int = "314159265358979323846264338327950288419".parse().unwrap();
        let scale = rat(10, 1).pow(38);
        let lo = crate::exact::rat_int(digits.clone()) / &scale;
        let hi = crate::exact::rat_int(digits + 1) / &scale;
        let p = RealBall::pi(200);
        assert!(p.lo().to_rat() > lo && p.hi().to_rat() < hi);
    }

    #[test]
    fn exp_log_round_trip() {
        for v in [-30i64, -3, -1, 0, 1, 2, 7, 50, 700] {
            let x = RealBall::from_i64(v, 160);
            let y = x.exp().ln().unwrap();
            assert!(y.contains_rat(&rat(v, 1)), "ln(exp({v})) = {y}");
            assert!(y.rad_f64() < 1e-30);
        }
    }

    #[test]
    fn log_of_powers_of_two() {
        for k in [-70i64, -1, 1, 5, 1000] {
            let x = RealBall::new(Dyadic::pow2(k), Dyadic::zero(), 128);
            let l = x.ln().unwrap();
            let expect = RealBall::ln2(128).mul_int(&Int::from(k));
            assert!(l.overlaps(&expect));
        }
        assert!(RealBall::from_i64(0, 64).ln().is_none());
        assert!(RealBall::from_i64(-2, 64).ln().is_none());
    }

    #[test]
    fn atan_identities() {
        let one = RealBall::from_i64(1, 192);
        let quarter_pi = RealBall::pi(192).mul_pow2(-2);
        assert!(one.atan().overlaps(&quarter_pi));
        assert!(one.atan().rad_f64() < 1e-50);
        // atan(x) + atan(1/x) = π/2 for x > 0.
        for v in [3i64, 128, 100_000] {
            let x = RealBall::from_i64(v, 192);
            let s = x.atan().add(&x.recip().unwrap().atan());
            assert!(s.overlaps(&RealBall::pi(192).mul_pow2(-1)));
        }
        assert!(close(&RealBall::from_i64(-7, 128).atan(), (-7f64).atan(), 1e-15));
    }

    #[test]
    fn wide_balls_are_still_enclosures() {
        let x = RealBall::from_endpoints(&Dyadic::from_i64(1), &Dyadic::from_i64(3), 128);
        let e = x.exp();
        assert!(e.lo().to_f64() <= 1f64.exp() && e.hi().to_f64() >= 3f64.exp());
        let l = x.ln().unwrap();
        assert!(l.lo().to_f64() <= 0.0 && l.hi().to_f64() >= 3f64.ln());
        let a = x.atan();
        assert!(a.lo().to_f64() <= 1f64.atan() && a.hi().to_f64() >= 3f64.atan());
    }

    #[test]
    fn powf_matches_integer_powers() {
        let b = RealBall::from_rat(&rat(7, 3), 128);
        let p = b.powf(&RealBall::from_i64(5, 128)).unwrap();
        assert!(p.contains_rat(&rat(16807, 243)));
    }
}
