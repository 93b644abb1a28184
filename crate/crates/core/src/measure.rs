//! Effective irrationality measures for the roots `β^(j)` and the large-solution exclusion.
//!
//! All inequalities use the form `|p − βq| > 1/(c |q|^κ)`, which is the same
//! statement as `|β − p/q| > 1/(c |q|^{κ+1})`.

use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{rat, Certified, Int, Precision, Rat, RealBall};
use crate::json;
use crate::pade::{epsilon_rho, rounded_k0};
use crate::thue::root_balls;

/// Parameters of an approximation sequence: `|q_r| < k0 Q^r`, `|q_r θ − p_r| ≤ l0 E^{−r}`.
#[derive(Clone, Debug)]
pub struct ApproxScheme {
    pub k0: RealBall,
    pub l0: RealBall,
    pub e: RealBall,
    pub q: RealBall,
}

impl ApproxScheme {
    pub fn from_rats(k0: &Rat, l0: &Rat, e: &Rat, q: &Rat, prec: u32) -> Self {
        Self {
            k0: RealBall::from_rat(k0, prec),
            l0: RealBall::from_rat(l0, prec),
            e: RealBall::from_rat(e, prec),
            q: RealBall::from_rat(q, prec),
        }
    }

    /// The sequence behind the measure for `β^(j)`.
    ///
    /// For `j = 2, 3` the pairs for `j = 0, 1` are reused with `p` and `q` switched,
    /// which scales `l0` by `|β^(j)|`.
    pub fn thue(t: &Int, j: u8, prec: u32) -> Result<Self> {
        check_j(j)?;
        let (eps, rho) = epsilon_rho(t, prec);
        let tb = RealBall::from_int(t, prec);
        let mut l0 = RealBall::pi(prec).mul(&tb).div(&tb.sqr().add(&RealBall::from_i64(16, prec))).expect("positive");
        match j {
            2 => l0 = l0.mul(&rho.add(&eps)),
            3 => l0 = l0.mul(&rho.add(&RealBall::from_i64(1, prec)).div(&eps).expect("ε > 0")),
            _ => {}
        }
        Ok(Self {
            k0: RealBall::from_rat(&rounded_k0(j % 2), prec),
            l0,
            e: eps.mul_pow2(-3),
            q: eps.mul_pow2(3),
        })
    }
}

/// `|p − θq| > 1/(c |q|^κ)` for all integers `p` and `|q| ≥ q_min`.
#[derive(Clone, Debug)]
pub struct MeasureCertificate {
    pub t: Option<Int>,
    pub j: Option<u8>,
    pub kappa: RealBall,
    pub c: RealBall,
    pub q_min: Int,
    /// `p` and `q` of the underlying sequence are swapped.
    pub switched: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSummary {
    #[serde(with = "json::int::option")]
    pub t: Option<Int>,
    pub j: Option<u8>,
    pub kappa: [f64; 2],
    pub c: [f64; 2],
    #[serde(with = "json::int")]
    pub q_min: Int,
    pub switched: bool,
}

impl MeasureCertificate {
    pub fn summary(&self) -> MeasureSummary {
        let (klo, khi) = self.kappa.to_f64_bounds();
        let (clo, chi) = self.c.to_f64_bounds();
        MeasureSummary {
            t: self.t.clone(),
            j: self.j,
            kappa: [klo, khi],
            c: [clo, chi],
            q_min: self.q_min.clone(),
            switched: self.switched,
        }
    }

    /// Exponent in the `|θ − p/q| > 1/(c |q|^{κ+1})` form.
    pub fn quotient_exponent(&self) -> RealBall {
        self.kappa.add(&RealBall::from_i64(1, self.kappa.prec()))
    }
}

fn check_j(j: u8) -> Result<()> {
    if j > 3 {
        return Err(domain(format!("root index {j} out of range")));
    }
    Ok(())
}

fn check_t(t: &Int) -> Result<()> {
    if *t < Int::from(128) {
        return Err(Error::OutOfMethodRange(format!("the measure needs t ≥ 128, got {t}")));
    }
    Ok(())
}

fn ceil_upper(b: &RealBall) -> Int {
    b.hi().ceil()
}

/// `κ = log Q / log E`, `c = 2 k0 Q (2 l0 E)^κ`, `q_min = ⌈1/(2 l0)⌉`.
pub fn scheme_certificate(s: &ApproxScheme) -> Result<MeasureCertificate> {
    let p = s.e.prec();
    let one = RealBall::from_i64(1, p);
    if !s.e.strict_greater(&one).is_true() {
        return Err(domain("E must be certified > 1"));
    }
    if !s.q.strict_greater(&one).is_true() {
        return Err(domain("Q must be certified > 1"));
    }
    if !s.k0.is_positive() || !s.l0.is_positive() {
        return Err(domain("k0 and l0 must be certified positive"));
    }
    let kappa = s.q.ln().expect("Q > 1").div(&s.e.ln().expect("E > 1")).expect("log E > 0");
    let base = s.l0.mul(&s.e).mul_pow2(1);
    let c = s.k0.mul(&s.q).mul_pow2(1).mul(&base.powf(&kappa).expect("2 l0 E > 0"));
    let q_min = ceil_upper(&s.l0.mul_pow2(1).recip().expect("l0 > 0")).max(Int::one());
    Ok(MeasureCertificate { t: None, j: None, kappa, c, q_min, switched: false })
}

/// `κ(t) = log 8ε / log(ε/8)`.
pub fn kappa(t: &Int, prec: u32) -> RealBall {
    let (eps, _) = epsilon_rho(t, prec);
    let q = eps.mul_pow2(3).ln().expect("8ε > 1");
    let e = eps.mul_pow2(-3).ln().expect("ε/8 > 0");
    q.div(&e).expect("ε/8 ≠ 1 for t ≥ 128")
}

/// Stated constants `c0 = c1 = c3 = 11.33t·0.4^κ` and `c2 = 8.01t(0.4t)^κ`.
pub fn stated_c(t: &Int, j: u8, kappa: &RealBall) -> RealBall {
    let p = kappa.prec();
    let tb = RealBall::from_int(t, p);
    let four = RealBall::from_rat(&rat(2, 5), p);
    if j == 2 {
        tb.mul_rat(&rat(801, 100)).mul(&four.mul(&tb).powf(kappa).expect("positive"))
    } else {
        tb.mul_rat(&rat(1133, 100)).mul(&four.powf(kappa).expect("positive"))
    }
}

/// `⌊0.16t⌋ + 1`, the smallest `|q|` with `|q| > 0.16t`.
pub fn stated_q_min(t: &Int) -> Int {
    (t * Int::from(16)).div_floor(&Int::from(100)) + 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
}

/// Stated measure for `β^(j)` with the constants re-derived from the approximants.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub t: Int,
    pub j: u8,
    pub stated: MeasureCertificate,
    pub derived: MeasureCertificate,
    pub checks: Vec<NamedCheck>,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReportSummary {
    #[serde(with = "json::int")]
    pub t: Int,
    pub j: u8,
    pub stated: MeasureSummary,
    pub derived: MeasureSummary,
    pub checks: Vec<NamedCheck>,
    pub precision: u32,
}

impl MeasureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn summary(&self) -> MeasureReportSummary {
        MeasureReportSummary {
            t: self.t.clone(),
            j: self.j,
            stated: self.stated.summary(),
            derived: self.derived.summary(),
            checks: self.checks.clone(),
            precision: self.precision,
        }
    }
}

fn stated_at(t: &Int, j: u8, p: u32) -> MeasureCertificate {
    let k = kappa(t, p);
    let c = stated_c(t, j, &k);
    MeasureCertificate { t: Some(t.clone()), j: Some(j), kappa: k, c, q_min: stated_q_min(t), switched: j >= 2 }
}

pub fn measure_certificate(t: &Int, j: u8, precision: Precision) -> Result<MeasureReport> {
    check_t(t)?;
    check_j(j)?;
    precision.escalate("certifying the measure constants", |p| {
        let scheme = ApproxScheme::thue(t, j, p)?;
        let mut derived = scheme_certificate(&scheme)?;
        derived.t = Some(t.clone());
        derived.j = Some(j);
        derived.switched = j >= 2;
        let stated = stated_at(t, j, p);
        let tb = RealBall::from_int(t, p);
        let three = RealBall::from_i64(3, p);
        let one = RealBall::from_i64(1, p);
        let two_l0_e = scheme.l0.mul(&scheme.e).mul_pow2(1);
        let lim = if j == 2 { tb.mul_rat(&rat(2, 5)) } else { RealBall::from_rat(&rat(2, 5), p) };
        let two_k0_q = scheme.k0.mul(&scheme.q).mul_pow2(1);
        let k0_lim = if j % 2 == 0 { tb.mul_rat(&rat(801, 100)) } else { tb.mul_rat(&rat(1133, 100)) };
        let raw = [
            ("kappa < 3", stated.kappa.strict_less(&three)),
            ("kappa > 1", stated.kappa.strict_greater(&one)),
            (if j == 2 { "2 l0 E < 0.4t" } else { "2 l0 E < 0.4" }, two_l0_e.strict_less(&lim)),
            (if j % 2 == 0 { "2 k0 Q < 8.01t" } else { "2 k0 Q < 11.33t" }, two_k0_q.strict_less(&k0_lim)),
            ("derived c <= stated c", derived.c.less_eq(&stated.c)),
            ("derived q_min <= stated q_min", Certified::from_bool(derived.q_min <= stated.q_min)),
        ];
        if raw.iter().any(|(_, c)| c.decided().is_none()) {
            return Ok(None);
        }
        let checks = raw
            .into_iter()
            .map(|(n, c)| NamedCheck { name: n.into(), holds: c.is_true() })
            .collect();
        Ok(Some(MeasureReport { t: t.clone(), j, stated, derived, checks, precision: p }))
    })
}

/// `|p − βq| · c · |q|^κ > 1` at the ball precision.
pub fn check_point_with(cert: &MeasureCertificate, beta: &RealBall, p: &Int, q: &Int) -> Result<Certified> {
    if q.abs() < cert.q_min {
        return Err(domain(format!("|q| = {} is below q_min = {}", q.abs(), cert.q_min)));
    }
    let prec = beta.prec();
    let d = RealBall::from_int(p, prec).sub(&beta.mul_int(q)).abs();
    let qk = RealBall::from_int(&q.abs(), prec).powf(&cert.kappa).expect("|q| ≥ 1");
    Ok(d.mul(&cert.c).mul(&qk).strict_greater(&RealBall::from_i64(1, prec)))
}

/// Certified `|p − β^(j) q| > 1/(c_j |q|^κ)` with the stated constants.
pub fn check_point(t: &Int, j: u8, p: &Int, q: &Int, precision: Precision) -> Result<bool> {
    check_t(t)?;
    check_j(j)?;
    if q.abs() < stated_q_min(t) {
        return Err(domain(format!("|q| = {} is not above 0.16t", q.abs())));
    }
    precision.escalate("checking the measure at a point", |prec| {
        let cert = stated_at(t, j, prec);
        let beta = root_balls(t, prec)[j as usize].clone();
        Ok(check_point_with(&cert, &beta, p, q)?.decided())
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(with = "json::int")]
    pub t: Int,
    pub j: u8,
    pub q_lo: u64,
    pub q_hi: u64,
    /// Number of `(p, q)` pairs certified.
    pub checked: u64,
    #[serde(with = "json::int::pairs")]
    pub failures: Vec<(Int, Int)>,
    /// Smallest `|p − βq| c |q|^κ` seen (must exceed 1).
    pub min_margin: f64,
}

impl ScanReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty() && self.min_margin > 1.0
    }
}

/// Checks the stated measure for every `q` in `[q_lo, q_hi]` and every `p` near `qβ`.
pub fn scan_small_q(t: &Int, j: u8, q_lo: u64, q_hi: u64, precision: Precision) -> Result<ScanReport> {
    check_t(t)?;
    check_j(j)?;
    let q_min = stated_q_min(t);
    if Int::from(q_lo) < q_min {
        return Err(domain(format!("scan starts at {q_lo}, below q_min = {q_min}")));
    }
    let p0 = precision.start;
    let cert = stated_at(t, j, p0);
    let beta = root_balls(t, p0)[j as usize].clone();
    let one = RealBall::from_i64(1, p0);

    let per_q = |q: u64| -> Result<(u64, Vec<(Int, Int)>, f64)> {
        let qi = Int::from(q);
        let qb = beta.mul_int(&qi);
        let qk = RealBall::from_int(&qi, p0).powf(&cert.kappa).expect("q ≥ 1");
        let scale = cert.c.mul(&qk);
        let mut lo = qb.lo().floor();
        let hi = qb.hi().ceil();
        let (mut n, mut bad, mut margin) = (0u64, Vec::new(), f64::INFINITY);
        while lo <= hi {
            let m = RealBall::from_int(&lo, p0).sub(&qb).abs().mul(&scale);
            let ok = match m.strict_greater(&one) {
                Certified::True => true,
                Certified::False => false,
                Certified::Undecided => check_point(t, j, &lo, &qi, precision)?,
            };
            if !ok {
                bad.push((lo.clone(), qi.clone()));
            }
            margin = margin.min(m.to_f64_bounds().0);
            n += 1;
            lo += 1;
        }
        Ok((n, bad, margin))
    };

    let parts: Vec<_> = (q_lo..=q_hi).into_par_iter().map(per_q).collect::<Result<_>>()?;
    let mut rep = ScanReport { t: t.clone(), j, q_lo, q_hi, checked: 0, failures: Vec::new(), min_margin: f64::INFINITY };
    for (n, bad, m) in parts {
        rep.checked += n;
        rep.failures.extend(bad);
        rep.min_margin = rep.min_margin.min(m);
    }
    Ok(rep)
}

/// Outcome of the large-solution exclusion when `δ^(j)` is the smallest of the four.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExclusionReport {
    #[serde(with = "json::int")]
    pub t: Int,
    pub j: u8,
    #[serde(with = "json::int")]
    pub y_floor: Int,
    pub route: String,
    /// No solution with `|y| ≥ y_floor` has `δ^(j)` smallest.
    pub contradiction: bool,
    /// The displayed upper bound `δ^(j) < 1/(const·|y|³)` holds from `y_floor` on.
    pub displayed_bound_holds: Option<bool>,
    /// The displayed `|y|^{3−κ} < …` inequality fails at `y_floor`.
    pub displayed_contradiction: Option<bool>,
    pub precision: u32,
}

/// Default `y_floor = max(⌊t/5⌋, 25)`.
pub fn default_y_floor(t: &Int) -> Int {
    t.div_floor(&Int::from(5)).max(Int::from(25))
}

/// Displayed constants: `δ^(j) < 1/(k_j |y|³)` with `k_j = 0.911t, 1.84t, 0.999t³, 1.89t`.
fn displayed_k(t: &RealBall, j: u8) -> RealBall {
    match j {
        0 => t.mul_rat(&rat(911, 1000)),
        1 => t.mul_rat(&rat(184, 100)),
        2 => t.pow(3).mul_rat(&rat(999, 1000)),
        _ => t.mul_rat(&rat(189, 100)),
    }
}

/// Rules out solutions with `|y| ≥ y_floor` whose smallest `δ` is `δ^(j)`.
///
/// With `δ^(j) < 1/Π_{k≠j}(|β^(j) − β^(k)||y| − 1)` from the product relation, the
/// measure gives a contradiction once `Π(|Δ_k| |y| − 1) ≥ c_j |y|^κ`. The ratio
/// `|y|^{3−κ} Π(|Δ_k| − 1/|y|)` grows with `|y|` when `κ < 3`, so one evaluation at
/// `y_floor` covers every larger `|y|`. For `j = 2` the measure for `β^(0)` is used on
/// `(y, −x)` through `β^(0) β^(2) = −1`.
pub fn exclusion_check(t: &Int, j: u8, y_floor: &Int, precision: Precision) -> Result<ExclusionReport> {
    check_t(t)?;
    check_j(j)?;
    if *y_floor < default_y_floor(t) {
        return Err(domain(format!("y_floor must be at least max(⌊t/5⌋, 25) = {}", default_y_floor(t))));
    }
    let mut last = None;
    for p in precision.ladder() {
        let beta = root_balls(t, p);
        let k = kappa(t, p);
        let tb = RealBall::from_int(t, p);
        let y = RealBall::from_int(y_floor, p);
        let one = RealBall::from_i64(1, p);
        let three = RealBall::from_i64(3, p);
        let ji = j as usize;
        let mut g = one.clone();
        let mut pos = Certified::True;
        for kk in (0..4).filter(|&kk| kk != ji) {
            let f = beta[ji].sub(&beta[kk]).abs().mul(&y).sub(&one);
            pos = pos.and(f.strict_greater(&RealBall::zero(p)));
            g = g.mul(&f);
        }
        let mono = k.strict_less(&three).and(pos);
        let q_min = stated_q_min(t);
        let (route, main) = if j == 2 {
            let c0 = stated_c(t, 0, &k);
            let x_lo = beta[2].mul(&y).sub(&one);
            let x_ok = x_lo.strict_greater(&RealBall::from_int(&q_min, p));
            let rhs = beta[0].abs().mul(&c0).mul(&beta[2].mul(&y).add(&one).powf(&k).expect("positive"));
            ("reciprocal via beta0", rhs.strict_less(&g).and(x_ok))
        } else {
            let cj = stated_c(t, j, &k);
            let rhs = cj.mul(&y.powf(&k).expect("y > 0"));
            ("direct", rhs.strict_less(&g).and(Certified::from_bool(*y_floor >= q_min)))
        };
        let main = main.and(mono);
        let bound = displayed_k(&tb, j).mul(&y.pow(3)).less_eq(&g);
        let y3k = y.powf(&three.sub(&k)).expect("y > 0");
        let four = RealBall::from_rat(&rat(2, 5), p);
        let disp_rhs = match j {
            0 => four.powf(&k).expect("positive").mul_rat(&rat(25, 2)),
            2 => four.mul(&tb).powf(&k).expect("positive").mul_rat(&rat(802, 100)).div(&tb.sqr()).expect("t > 0"),
            _ => stated_c(t, j, &k).div(&displayed_k(&tb, j)).expect("positive"),
        };
        let disp = disp_rhs.less_eq(&y3k);
        let rep = ExclusionReport {
            t: t.clone(),
            j,
            y_floor: y_floor.clone(),
            route: route.into(),
            contradiction: main.is_true(),
            displayed_bound_holds: bound.decided(),
            displayed_contradiction: disp.decided(),
            precision: p,
        };
        let done = main.decided().is_some();
        if done && rep.displayed_bound_holds.is_some() && rep.displayed_contradiction.is_some() {
            return Ok(rep);
        }
        if done {
            last = Some(rep);
        }
    }
    last.ok_or_else(|| Error::PrecisionExhausted {
        cap: precision.cap,
        context: format!("exclusion inequality for t = {t}, j = {j}"),
    })
}

/// Exclusion for all four cases at the default `y_floor`.
pub fn exclusion_all(t: &Int, precision: Precision) -> Result<Vec<ExclusionReport>> {
    let y = default_y_floor(t);
    (0..4u8).map(|j| exclusion_check(t, j, &y, precision)).collect()
}

/// Approximate `κ(t)` as a float, for display.
pub fn kappa_f64(t: &Int) -> f64 {
    kappa(t, 128).to_f64()
}
