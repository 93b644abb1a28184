//! Remainder evaluation and the certified size bounds for the approximants.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::approx::{approximant_sequence, assembly_constants, ApproximantPair, AssemblyConstants};
use super::data::build_thue_data;
use super::hyper::{gamma_ratio, m_factor, xnr_coeffs};
use super::wdata::WData;
use crate::error::{Error, Result};
use crate::exact::{rat, ComplexBall, Dyadic, GaussRat, Int, Precision, Rat, RealBall};
use crate::json;
use crate::thue::root_balls;

/// `k0` for `j = 0` and `j = 1`: 1.0005 and 1.415.
pub fn rounded_k0(j: u8) -> Rat {
    if j == 0 { rat(2001, 2000) } else { rat(283, 200) }
}

fn tight(b: &ComplexBall, bits: i64) -> bool {
    let a = b.abs();
    a.is_positive() && a.rad().shl(bits) <= a.lo()
}

/// `R_r(w) = w^{1/4} · w^r X_r(1/w) − X_r(w)` at a fixed precision.
pub fn remainder_at(wd: &WData, r: usize) -> ComplexBall {
    let p = wd.prec();
    let c = xnr_coeffs(r);
    let g1 = c.xstar(&GaussRat::one(), &wd.w);
    let g2 = c.xstar(&wd.w, &GaussRat::one());
    wd.fourth_root_w.mul(&ComplexBall::from_gauss(&g1, p)).sub(&ComplexBall::from_gauss(&g2, p))
}

/// Ball for `R_r(w)`, refined until its modulus is known to about 20 bits.
pub fn remainder_eval(t: &Int, r: usize, precision: Precision) -> Result<ComplexBall> {
    precision.escalate("evaluating the remainder", |p| {
        let wd = WData::new(t, p)?;
        let rb = remainder_at(&wd, r);
        Ok(tight(&rb, 20).then_some(rb))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub j: Option<u8>,
    pub r: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "json::int")]
    pub t: Int,
    pub r_max: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

#[derive(Clone, Copy)]
enum Cmp {
    Lt,
    Le,
}

struct Level {
    wd: WData,
    beta: [RealBall; 4],
}

struct Ctx {
    t: Int,
    precision: Precision,
    seqs: [Vec<ApproximantPair>; 2],
    consts: [AssemblyConstants; 2],
    levels: RefCell<HashMap<u32, Rc<Level>>>,
}

impl Ctx {
    fn level(&self, p: u32) -> Result<Rc<Level>> {
        if let Some(l) = self.levels.borrow().get(&p) {
            return Ok(l.clone());
        }
        let l = Rc::new(Level { wd: WData::new(&self.t, p)?, beta: root_balls(&self.t, p) });
        self.levels.borrow_mut().insert(p, l.clone());
        Ok(l)
    }

    /// Escalates until `lhs cmp rhs` is decided; a decided `false` is a failed check.
    fn certify(
        &self,
        name: &str,
        j: Option<u8>,
        r: Option<usize>,
        f: impl Fn(&Level, u32) -> (RealBall, RealBall, Cmp),
    ) -> Result<BoundCheck> {
        for p in self.precision.ladder() {
            let lv = self.level(p)?;
            let (lhs, rhs, cmp) = f(&lv, p);
            let verdict = match cmp {
                Cmp::Lt => lhs.strict_less(&rhs),
                Cmp::Le => lhs.less_eq(&rhs),
            };
            if let Some(holds) = verdict.decided() {
                return Ok(BoundCheck { name: name.into(), j, r, lhs: lhs.to_f64(), rhs: rhs.to_f64(), holds, precision: p });
            }
        }
        Err(Error::PrecisionExhausted {
            cap: self.precision.cap,
            context: format!("deciding {name} (t = {}, j = {j:?}, r = {r:?})", self.t),
        })
    }
}

/// Tolerance for the modulus identities: `2^{−p/2}`.
fn tol(p: u32) -> RealBall {
    RealBall::new(Dyadic::pow2(-(p as i64) / 2), Dyadic::zero(), p)
}

fn ball_int(n: &Int, p: u32) -> RealBall {
    RealBall::from_int(n, p)
}

fn abs_gauss(z: &GaussRat, p: u32) -> RealBall {
    RealBall::from_rat(&z.norm(), p).sqrt().expect("norm is non-negative")
}

/// `β^(j) a(j) − c(j)` as a complex ball.
fn beta_a_minus_c(k: &AssemblyConstants, beta: &RealBall) -> ComplexBall {
    let p = beta.prec();
    ComplexBall::from_gauss(&k.a, p).mul_real(beta).sub(&ComplexBall::from_gauss(&k.c, p))
}

/// Defect `S_r = Q_r β − P_r` from the integers.
fn defect(a: &ApproximantPair, beta: &RealBall) -> RealBall {
    let p = beta.prec();
    ball_int(&a.q, p).mul(beta).sub(&ball_int(&a.p, p))
}

/// The same defect through the remainder: `−(M/10) i^{−r} (βa − c) u'^r R_r(w)`.
fn defect_via_remainder(lv: &Level, k: &AssemblyConstants, j: u8, r: usize) -> ComplexBall {
    let p = lv.wd.prec();
    let rr = remainder_at(&lv.wd, r);
    let upr = ComplexBall::from_gauss(&(&GaussRat::i_pow(-(r as i64)) * &lv.wd.up.pow(r as u32)), p);
    let scale = RealBall::from_rat(&(-m_factor(r) / rat(10, 1)), p);
    beta_a_minus_c(k, &lv.beta[j as usize]).mul(&upr).mul(&rr).mul_real(&scale)
}

/// Certified `|S_r|` enclosure and the bound `πt/(16+t²)·(8/ε)^r` at the given precision.
pub fn defect_and_bound(t: &Int, r: usize, j: u8, prec: u32) -> Result<(RealBall, RealBall)> {
    let seq = approximant_sequence(t, r, j)?;
    let beta = root_balls(t, prec)[j as usize].clone();
    let wd = WData::new(t, prec)?;
    Ok((defect(&seq[r], &beta).abs(), defect_bound(&wd, t, r)))
}

fn defect_bound(wd: &WData, t: &Int, r: usize) -> RealBall {
    let p = wd.prec();
    let tb = ball_int(t, p);
    let l0 = RealBall::pi(p).mul(&tb).div(&tb.sqr().add(&RealBall::from_i64(16, p))).expect("positive");
    let e = RealBall::from_i64(8, p).div(&wd.epsilon).expect("ε > 0");
    l0.mul(&e.pow(r as u32))
}

fn growth(wd: &WData, r: usize) -> RealBall {
    wd.epsilon.mul_int(&Int::from(8)).pow(r as u32)
}

/// Certified checks of the approximant size bounds, the defect bound, the defect
/// relation through the remainder, and the two unit-circle bounds for `r ≤ min(r_max, 20)`.
pub fn bound_suite(t: &Int, r_max: usize, precision: Precision) -> Result<BoundReport> {
    if *t < Int::from(128) {
        return Err(Error::OutOfMethodRange(format!("bound suite needs t ≥ 128, got {t}")));
    }
    let td = build_thue_data(t)?;
    let ctx = Ctx {
        t: t.clone(),
        precision,
        seqs: [approximant_sequence(t, r_max, 0)?, approximant_sequence(t, r_max, 1)?],
        consts: [assembly_constants(&td, 0)?, assembly_constants(&td, 1)?],
        levels: RefCell::new(HashMap::new()),
    };
    let mut checks = Vec::new();

    checks.push(ctx.certify("|1+sqrt(w)|^2 > 3.999", None, None, |lv, p| {
        (RealBall::from_rat(&rat(3999, 1000), p), lv.wd.one_plus_sqrt_w_sq(), Cmp::Lt)
    })?);
    checks.push(ctx.certify("4/|1+sqrt(w)|^2 < 1.0005", None, None, |lv, p| {
        let s = RealBall::from_i64(4, p).div(&lv.wd.one_plus_sqrt_w_sq()).expect("positive");
        (s, RealBall::from_rat(&rounded_k0(0), p), Cmp::Lt)
    })?);
    checks.push(ctx.certify("1.0005*sqrt(2) < 1.415", None, None, |_, p| {
        let s = RealBall::from_i64(2, p).sqrt().expect("positive").mul_rat(&rounded_k0(0));
        (s, RealBall::from_rat(&rounded_k0(1), p), Cmp::Lt)
    })?);
    checks.push(ctx.certify("|u'(1+sqrt(w))^2| = 8 eps", None, None, |lv, p| {
        let one = ComplexBall::from_real(RealBall::from_i64(1, p));
        let v = one.add(&lv.wd.sqrt_w);
        let lhs = ComplexBall::from_gauss(&lv.wd.up, p).mul(&v.mul(&v)).abs();
        (lhs.sub(&lv.wd.epsilon.mul_int(&Int::from(8))).abs(), tol(p), Cmp::Lt)
    })?);
    checks.push(ctx.certify("|u'(1-sqrt(w))^2| = 8/eps", None, None, |lv, p| {
        let one = ComplexBall::from_real(RealBall::from_i64(1, p));
        let v = one.sub(&lv.wd.sqrt_w);
        let lhs = ComplexBall::from_gauss(&lv.wd.up, p).mul(&v.mul(&v)).abs();
        let want = RealBall::from_i64(8, p).div(&lv.wd.epsilon).expect("positive");
        (lhs.sub(&want).abs(), tol(p), Cmp::Lt)
    })?);

    for j in 0..2u8 {
        let k = &ctx.consts[j as usize];
        checks.push(ctx.certify("|beta a(j) - c(j)| <= 10", Some(j), None, |lv, p| {
            (beta_a_minus_c(k, &lv.beta[j as usize]).abs(), RealBall::from_i64(10, p), Cmp::Le)
        })?);
    }

    for r in 0..=r_max {
        // Γ-ratio product, exact.
        let g = m_factor(r) / rat(2, 1) * gamma_ratio(&rat(1, 4), r) / rat(4, 1);
        checks.push(BoundCheck {
            name: "gamma product <= 1/8".into(),
            j: None,
            r: Some(r),
            lhs: rat_to_f64(&g),
            rhs: 0.125,
            holds: g <= rat(1, 8),
            precision: 0,
        });
    }

    for j in 0..2u8 {
        let ji = j as usize;
        let k0 = rounded_k0(j);
        for a in &ctx.seqs[ji] {
            let r = a.r;
            for (label, n) in [("P", &a.p), ("Q", &a.q)] {
                checks.push(ctx.certify(&format!("|{label}_r| < k0 (8 eps)^r"), Some(j), Some(r), |lv, p| {
                    (ball_int(n, p).abs(), growth(&lv.wd, r).mul_rat(&k0), Cmp::Lt)
                })?);
                checks.push(ctx.certify(&format!("|{label}_r| <= c 4/|1+sqrt(w)|^2 (8 eps)^r"), Some(j), Some(r), |lv, p| {
                    let mut c = RealBall::from_i64(4, p).div(&lv.wd.one_plus_sqrt_w_sq()).expect("positive");
                    if j == 1 {
                        c = c.mul(&RealBall::from_i64(2, p).sqrt().expect("positive"));
                    }
                    (ball_int(n, p).abs(), growth(&lv.wd, r).mul(&c), Cmp::Le)
                })?);
            }
            checks.push(ctx.certify("|S_r| <= pi t/(16+t^2) (8/eps)^r", Some(j), Some(r), |lv, _| {
                (defect(a, &lv.beta[ji]).abs(), defect_bound(&lv.wd, t, r), Cmp::Le)
            })?);
            let k = &ctx.consts[ji];
            checks.push(ctx.certify("S_r agrees with remainder relation", Some(j), Some(r), |lv, p| {
                let s = defect(a, &lv.beta[ji]);
                let d = defect_via_remainder(lv, k, j, r);
                let diff = d.sub(&ComplexBall::from_real(s.clone())).abs();
                (diff, s.abs().mul_pow2(-20).with_prec(p), Cmp::Lt)
            })?);
        }
    }

    for r in 0..=r_max.min(20) {
        let lem21 = gamma_ratio(&rat(1, 4), r) / rat(4, 1);
        checks.push(ctx.certify("|R_r(w)| <= G phi |1-sqrt(w)|^(2r)", None, Some(r), |lv, p| {
            let rr = remainder_at(&lv.wd, r).abs();
            let rhs = RealBall::from_rat(&lem21, p).mul(&lv.wd.phi).mul(&lv.wd.one_minus_sqrt_w_sq().pow(r as u32));
            (rr, rhs, Cmp::Le)
        })?);
        let inv_m = Rat::from_integer(4.into()) / m_factor(r);
        let coeffs = xnr_coeffs(r);
        for (label, swap) in [("X*(z',u')", false), ("X*(u',z')", true)] {
            checks.push(ctx.certify(&format!("|{label}| <= 4|u'|^r/M |1+sqrt(w)|^(2r-2)"), None, Some(r), |lv, p| {
                let (x, y) = if swap { (&lv.wd.up, &lv.wd.zp) } else { (&lv.wd.zp, &lv.wd.up) };
                let lhs = abs_gauss(&coeffs.xstar(x, y), p);
                let s = lv.wd.one_plus_sqrt_w_sq();
                let rhs = RealBall::from_rat(&inv_m, p)
                    .mul(&abs_gauss(y, p).pow(r as u32))
                    .mul(&s.pow(r as u32))
                    .div(&s)
                    .expect("positive");
                (lhs, rhs, Cmp::Le)
            })?);
        }
    }

    Ok(BoundReport { t: t.clone(), r_max, checks })
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Certified;

    #[test]
    fn remainder_at_r0_is_fourth_root_minus_one() {
        let t = Int::from(128);
        let r0 = remainder_eval(&t, 0, Precision::default()).unwrap();
        let wd = WData::new(&t, r0.prec()).unwrap();
        let one = ComplexBall::from_real(RealBall::from_i64(1, r0.prec()));
        let want = wd.fourth_root_w.sub(&one);
        assert!(r0.re.overlaps(&want.re) && r0.im.overlaps(&want.im));
    }

    #[test]
    fn remainder_respects_bound() {
        let t = Int::from(128);
        for r in [1usize, 5] {
            let rb = remainder_eval(&t, r, Precision::default()).unwrap();
            let p = rb.prec();
            let wd = WData::new(&t, p).unwrap();
            let bound = RealBall::from_rat(&(gamma_ratio(&rat(1, 4), r) / rat(4, 1)), p)
                .mul(&wd.phi)
                .mul(&wd.one_minus_sqrt_w_sq().pow(r as u32));
            assert_eq!(rb.abs().less_eq(&bound), Certified::True);
        }
    }

    #[test]
    fn defect_examples() {
        let t = Int::from(128);
        let (s0, b0) = defect_and_bound(&t, 0, 0, 128).unwrap();
        assert!((s0.to_f64() - 0.00781).abs() < 1e-5);
        assert!((b0.to_f64() - 0.02452).abs() < 1e-5);
        // Float oracle: S_1 = 256 β + 2 with β = −1/(ε + ρ).
        let eps = (128.0 + 16400f64.sqrt()) / 4.0;
        let beta = -1.0 / (eps + (1.0 + eps * eps).sqrt());
        let (s1, b1) = defect_and_bound(&t, 1, 0, 128).unwrap();
        assert!((s1.to_f64() - (256.0 * beta + 2.0).abs()).abs() < 1e-12, "{}", s1.to_f64());
        assert!((b1.to_f64() - 0.00306).abs() < 1e-5, "{}", b1.to_f64());
    }

    #[test]
    fn small_suite_passes() {
        let rep = bound_suite(&Int::from(128), 6, Precision::new(128, 4096)).unwrap();
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(bound_suite(&Int::from(127), 2, Precision::default()).is_err());
    }
}
