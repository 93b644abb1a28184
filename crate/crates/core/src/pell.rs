//! Continued fractions of `√d` and the negative Pell equation `X² + 1 = dY²`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{is_perfect_square, isqrt, Int};
use crate::json::int;

/// `√d = [a0; period, period, …]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFExpansion {
    #[serde(with = "int")]
    pub a0: Int,
    #[serde(with = "int::vec")]
    pub period: Vec<Int>,
}

/// Least positive solution of `u² + 1 = d v²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PellFundamental {
    #[serde(with = "int")]
    pub d: Int,
    #[serde(with = "int")]
    pub u: Int,
    #[serde(with = "int")]
    pub v: Int,
}

fn check_d(d: &Int) -> Result<()> {
    if *d < Int::from(2) {
        return Err(domain(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

pub fn sqrt_cf(d: &Int) -> Result<CFExpansion> {
    check_d(d)?;
    if is_perfect_square(d).is_some() {
        return Err(domain(format!("{d} is a perfect square")));
    }
    let a0 = isqrt(d);
    let two_a0 = &a0 * 2;
    let (mut m, mut den, mut a) = (Int::zero(), Int::one(), a0.clone());
    let mut period = Vec::new();
    // Standard (m, den, a) iteration; the period ends at the first a = 2·a0.
    while a != two_a0 {
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m).div_floor(&den);
        period.push(a.clone());
    }
    Ok(CFExpansion { a0, period })
}

/// Fundamental solution of `X² + 1 = dY²`, or `None` when the period is even.
///
/// Square `d` is a domain error, since the expansion is undefined there.
pub fn neg_pell_fundamental(d: &Int) -> Result<Option<PellFundamental>> {
    let cf = sqrt_cf(d)?;
    let len = cf.period.len();
    if len % 2 == 0 {
        return Ok(None);
    }
    // Convergent p_{len-1}/q_{len-1} of [a0; period[..len-1]].
    let (mut p0, mut p1) = (Int::one(), cf.a0.clone());
    let (mut q0, mut q1) = (Int::zero(), Int::one());
    for a in &cf.period[..len - 1] {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        (p0, p1, q0, q1) = (p1, p2, q1, q2);
    }
    debug_assert_eq!(&p1 * &p1 + 1u32, d * &q1 * &q1);
    Ok(Some(PellFundamental { d: d.clone(), u: p1, v: q1 }))
}
