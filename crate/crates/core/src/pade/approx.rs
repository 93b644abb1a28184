use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::data::{ab_values, build_thue_data, ThueData};
use super::hyper::{m_factor, xnr_coeffs};
use crate::error::{domain, inconsistent, Result};
use crate::exact::{rat, rat_int, GaussRat, Int, Rat};
use crate::json;

/// Integer approximation `(P_r, Q_r)` with `Q_r β^(j) − P_r` small.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximantPair {
    #[serde(with = "json::int")]
    pub t: Int,
    pub r: usize,
    pub j: u8,
    #[serde(with = "json::int")]
    pub p: Int,
    #[serde(with = "json::int")]
    pub q: Int,
    #[serde(with = "json::rat")]
    pub dr: Rat,
    #[serde(with = "json::rat")]
    pub m: Rat,
}

/// Constants of the hypergeometric assembly at `x = j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyConstants {
    pub a: GaussRat,
    pub b: GaussRat,
    pub c: GaussRat,
    pub d: GaussRat,
    /// `κ` with `κ·z(j) = z'` and `κ·u(j) = u'`; `D_r = κ^r / 5`.
    pub kappa: Rat,
}

/// `a(x), b(x), c(x), d(x)` from `A_0, A_1, B_0, B_1` with `√λ = i`.
pub fn assembly_constants(td: &ThueData, j: u8) -> Result<AssemblyConstants> {
    let x = rat(j as i64, 1);
    let px = td.p.eval(&x);
    let y1 = td.y1.eval(&x);
    if px.is_zero() {
        return Err(domain("P vanishes at the evaluation point"));
    }
    if td.lambda != Int::from(-1) {
        return Err(inconsistent("assembly assumes λ = −1"));
    }
    let i = GaussRat::i();
    let half = GaussRat::real(rat(1, 2));
    // (n−1)√λ / (2P) and Y1 / (4√λ P) with n = 4.
    let k1 = i.scale(&(rat(3, 2) / &px));
    let k2 = i.scale(&(-&y1 / (rat(4, 1) * &px)));
    let g = |f1: &Rat, f0: &Rat, sign: i64| {
        let lead = k1.scale(f1);
        let tail = if sign < 0 { &k2 - &half } else { &k2 + &half };
        &lead - &tail.scale(f0)
    };
    let (a0, a1) = (td.a0.eval(&x), td.a1.eval(&x));
    let (b0, b1) = (td.b0.eval(&x), td.b1.eval(&x));

    // z(x) = (−iY1 + 8P)/16, u(x) = (−iY1 − 8P)/16.
    let z = GaussRat::new(&px / rat(2, 1), -&y1 / rat(16, 1));
    let u = GaussRat::new(-&px / rat(2, 1), -&y1 / rat(16, 1));
    let tr = rat_int(td.t.clone());
    let zp = GaussRat::new(rat(4, 1), -tr.clone());
    let up = GaussRat::new(rat(-4, 1), -tr);
    let kz = zp.checked_div(&z).ok_or_else(|| inconsistent("z(j) = 0"))?;
    let ku = up.checked_div(&u).ok_or_else(|| inconsistent("u(j) = 0"))?;
    if kz != ku || !kz.is_real() {
        return Err(inconsistent(format!("z', u' are not a common real multiple of z({j}), u({j})")));
    }
    Ok(AssemblyConstants { a: g(&a1, &a0, -1), b: g(&a1, &a0, 1), c: g(&b1, &b0, -1), d: g(&b1, &b0, 1), kappa: kz.re })
}

/// Closed forms `a(X) = 5iX − 5`, `b = 5iX + 5`, `c = −5X − 5i`, `d = 5X − 5i` at `X = j`.
pub fn closed_form_constants(j: u8) -> [GaussRat; 4] {
    let x = j as i64;
    [
        GaussRat::from_ints(-5, 5 * x),
        GaussRat::from_ints(5, 5 * x),
        GaussRat::from_ints(-5 * x, -5),
        GaussRat::from_ints(5 * x, -5),
    ]
}

/// Exact assembly `i^{−r}(α X*(z',u') − β X*(u',z'))/5`, required to be real.
fn hyper_value(alpha: &GaussRat, beta: &GaussRat, xs_zu: &GaussRat, xs_uz: &GaussRat, r: usize) -> Result<Rat> {
    let v = (&(alpha * xs_zu) - &(beta * xs_uz)).scale(&rat(1, 5));
    let v = &v * &GaussRat::i_pow(-(r as i64));
    if !v.is_real() {
        return Err(inconsistent(format!("assembled value at r = {r} has imaginary part {}", v.im)));
    }
    Ok(v.re)
}

fn check_j(j: u8) -> Result<()> {
    if j > 1 {
        return Err(domain(format!("approximants are built for j ∈ {{0, 1}}, got {j}")));
    }
    Ok(())
}

fn check_t(t: &Int) -> Result<()> {
    if *t < Int::from(5) {
        return Err(domain(format!("approximants need t ≥ 5, got {t}")));
    }
    Ok(())
}

/// `(P_r, Q_r)` for `r = 0..=r_max`, each checked by both routes.
pub fn approximant_sequence(t: &Int, r_max: usize, j: u8) -> Result<Vec<ApproximantPair>> {
    check_t(t)?;
    check_j(j)?;
    let td = build_thue_data(t)?;
    let k = assembly_constants(&td, j)?;
    let closed = closed_form_constants(j);
    if [&k.a, &k.b, &k.c, &k.d].into_iter().zip(closed.iter()).any(|(x, y)| x != y) {
        return Err(inconsistent(format!("a..d at x = {j} differ from the closed forms")));
    }
    let (av, bv) = ab_values(&td, &rat(j as i64, 1), r_max.max(1));
    let tr = rat_int(t.clone());
    let zp = GaussRat::new(rat(4, 1), -tr.clone());
    let up = GaussRat::new(rat(-4, 1), -tr);

    let mut out = Vec::with_capacity(r_max + 1);
    let mut dr = rat(1, 5);
    for r in 0..=r_max {
        let coeffs = xnr_coeffs(r);
        let xs_zu = coeffs.xstar(&zp, &up);
        let xs_uz = coeffs.xstar(&up, &zp);
        let q_hyp = hyper_value(&k.a, &k.b, &xs_zu, &xs_uz, r)?;
        let p_hyp = hyper_value(&k.c, &k.d, &xs_zu, &xs_uz, r)?;
        let q_rec = &dr * &av[r];
        let p_rec = &dr * &bv[r];
        if q_hyp != q_rec || p_hyp != p_rec {
            return Err(inconsistent(format!("routes disagree at t = {t}, r = {r}, j = {j}")));
        }
        let m = m_factor(r);
        let half_m = &m / rat(2, 1);
        let pr = &half_m * &p_rec;
        let qr = &half_m * &q_rec;
        if !pr.is_integer() || !qr.is_integer() {
            return Err(inconsistent(format!("non-integral approximant at t = {t}, r = {r}, j = {j}: P = {pr}, Q = {qr}")));
        }
        out.push(ApproximantPair { t: t.clone(), r, j, p: pr.to_integer(), q: qr.to_integer(), dr: dr.clone(), m });
        dr = &dr * &k.kappa;
    }
    Ok(out)
}

pub fn approximants(t: &Int, r: usize, j: u8) -> Result<ApproximantPair> {
    Ok(approximant_sequence(t, r, j)?.pop().expect("sequence is nonempty"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetReport {
    #[serde(with = "json::int")]
    pub t: Int,
    pub j: u8,
    pub r_max: usize,
    /// `P_r Q_{r+1} − P_{r+1} Q_r` for `r < r_max`.
    #[serde(with = "json::int::vec")]
    pub dets: Vec<Int>,
    pub all_nonzero: bool,
}

pub fn det_nonvanish(t: &Int, r_max: usize, j: u8) -> Result<DetReport> {
    let seq = approximant_sequence(t, r_max, j)?;
    Ok(det_report(t, j, &seq))
}

pub(crate) fn det_report(t: &Int, j: u8, seq: &[ApproximantPair]) -> DetReport {
    let dets: Vec<Int> = seq.windows(2).map(|w| &w[0].p * &w[1].q - &w[1].p * &w[0].q).collect();
    let all_nonzero = dets.iter().all(|d| !d.is_zero());
    DetReport { t: t.clone(), j, r_max: seq.len().saturating_sub(1), dets, all_nonzero }
}
