use serde::{Deserialize, Serialize};

use super::data::build_thue_data;
use crate::error::{domain, Error, Result};
use crate::exact::{Dyadic, Int, Precision};
use crate::json;
use crate::thue::roots;

/// Ball data for one derivative `C_r^(k)(β)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeValue {
    pub k: usize,
    pub mid: f64,
    pub radius: f64,
    pub contains_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingReport {
    #[serde(with = "json::int")]
    pub t: Int,
    pub r: usize,
    pub j: u8,
    pub precision: u32,
    /// Derivatives `0..=2r+1`.
    pub derivatives: Vec<DerivativeValue>,
    /// Derivatives `0..=2r` contain zero with radius below `2^{−p/2}`.
    pub vanishes: bool,
    /// Derivative `2r+1` excludes zero.
    pub next_nonzero: bool,
}

impl VanishingReport {
    pub fn holds(&self) -> bool {
        self.vanishes && self.next_nonzero
    }
}

/// Certifies that `C_r = β A_r − B_r` has a zero of order exactly `2r + 1` at `β^(j)`.
pub fn vanishing_order(t: &Int, r: usize, j: u8, precision: Precision) -> Result<VanishingReport> {
    if r > 4 {
        return Err(domain(format!("vanishing order is checked for r ≤ 4, got {r}")));
    }
    if j > 3 {
        return Err(domain(format!("root index {j} out of range")));
    }
    let td = build_thue_data(t)?;
    let (a, b) = td.ab_polys(r);
    let (a, b) = (&a[r], &b[r]);
    let rs = roots(t, precision)?;
    let mut last = None;
    for p in precision.ladder().into_iter().filter(|&p| p >= rs.prec) {
        let beta = crate::thue::root_balls(t, p)[j as usize].clone();
        let tol = Dyadic::pow2(-(p as i64) / 2);
        let mut ders = Vec::with_capacity(2 * r + 2);
        let mut small = true;
        for k in 0..=2 * r + 1 {
            let c = beta.mul(&a.nth_derivative(k).eval_ball(&beta)).sub(&b.nth_derivative(k).eval_ball(&beta));
            if k <= 2 * r {
                small &= c.contains_zero() && *c.rad() < tol;
            }
            ders.push((c.contains_zero(), c));
        }
        let next_nonzero = !ders[2 * r + 1].0;
        let derivatives = ders
            .iter()
            .enumerate()
            .map(|(k, (z, c))| DerivativeValue { k, mid: c.to_f64(), radius: c.rad_f64(), contains_zero: *z })
            .collect();
        let rep = VanishingReport { t: t.clone(), r, j, precision: p, derivatives, vanishes: small, next_nonzero };
        if rep.holds() {
            return Ok(rep);
        }
        last = Some(rep);
    }
    match last {
        Some(rep) if rep.vanishes || !rep.derivatives.iter().take(2 * r + 1).all(|d| d.contains_zero) => Ok(rep),
        _ => Err(Error::PrecisionExhausted { cap: precision.cap, context: format!("vanishing order at t = {t}, r = {r}, j = {j}") }),
    }
}
