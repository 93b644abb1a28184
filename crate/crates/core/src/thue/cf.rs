use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::form::unit_value;
use super::roots::root_balls;
use crate::error::{domain, Result};
use crate::exact::{Int, Precision, Rat, RealBall};
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub index: usize,
    #[serde(with = "json::int")]
    pub p: Int,
    #[serde(with = "json::int")]
    pub q: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentScan {
    #[serde(with = "json::int")]
    pub t: Int,
    pub j: u8,
    #[serde(with = "json::int")]
    pub q_max: Int,
    /// Certified partial quotients used.
    #[serde(with = "json::int::vec")]
    pub digits: Vec<Int>,
    pub convergents: Vec<Convergent>,
    /// `(x, y)` with `P_t(x, y) = ±1` among `±(p, q)`.
    #[serde(with = "json::int::pairs")]
    pub hits: Vec<(Int, Int)>,
    pub precision: u32,
}

/// Continued fraction of a rational, `a_0 = ⌊r⌋`.
pub fn cf_of_rat(r: &Rat) -> Vec<Int> {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut out = Vec::new();
    while !d.is_zero() {
        let (a, m) = n.div_mod_floor(&d);
        out.push(a);
        n = std::mem::replace(&mut d, m);
    }
    out
}

/// Partial quotients shared by every real in the ball.
///
/// Both endpoint expansions must agree and continue past the shared prefix, so a
/// terminating endpoint never contributes its ambiguous last term.
pub fn certified_digits(b: &RealBall) -> Vec<Int> {
    let lo = cf_of_rat(&b.lo().to_rat());
    let hi = cf_of_rat(&b.hi().to_rat());
    let n = lo.len().min(hi.len()).saturating_sub(1);
    lo.iter().zip(&hi).take(n).take_while(|(a, b)| a == b).map(|(a, _)| a.clone()).collect()
}

/// Convergents `p_k/q_k` of a digit sequence.
pub fn convergents(digits: &[Int]) -> Vec<Convergent> {
    let (mut p0, mut q0) = (Int::one(), Int::zero());
    let (mut p1, mut q1) = (Int::zero(), Int::one());
    digits
        .iter()
        .enumerate()
        .map(|(index, a)| {
            let p = a * &p0 + &p1;
            let q = a * &q0 + &q1;
            p1 = std::mem::replace(&mut p0, p.clone());
            q1 = std::mem::replace(&mut q0, q.clone());
            Convergent { index, p, q }
        })
        .collect()
}

/// All convergents of `β^(j)` with `q ≤ q_max`, each tested against `P_t = ±1`.
pub fn convergent_scan(t: &Int, j: u8, q_max: &Int, precision: Precision) -> Result<ConvergentScan> {
    if *t < Int::from(5) {
        return Err(domain(format!("convergent scan needs t ≥ 5, got {t}")));
    }
    if j > 3 {
        return Err(domain(format!("root index {j} out of range")));
    }
    precision.escalate("certifying continued-fraction digits", |p| {
        let beta = root_balls(t, p)[j as usize].clone();
        let digits = certified_digits(&beta);
        let all = convergents(&digits);
        // Enough digits once some convergent passes q_max.
        let Some(cut) = all.iter().position(|c| c.q > *q_max) else {
            return Ok(None);
        };
        let convs: Vec<Convergent> = all[..cut].to_vec();
        let mut hits = Vec::new();
        for c in &convs {
            if unit_value(t, &c.p, &c.q).is_some() {
                hits.push((c.p.clone(), c.q.clone()));
                hits.push((-c.p.clone(), -c.q.clone()));
            }
        }
        Ok(Some(ConvergentScan {
            t: t.clone(),
            j,
            q_max: q_max.clone(),
            digits: digits[..=cut].to_vec(),
            convergents: convs,
            hits,
            precision: p,
        }))
    })
}
