use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{rat, rat_int, Certified, Int, Precision, Rat, RealBall};
use crate::pade::epsilon_rho;

/// Certified enclosures of the four roots of `P_t(X, 1)`.
#[derive(Clone, Debug)]
pub struct QuarticRoots {
    pub t: Int,
    pub beta: [RealBall; 4],
    pub prec: u32,
}

/// Root balls at a fixed precision, no interval certification.
///
/// `β0 = ε − ρ` is formed as `−1/(ε + ρ)` to avoid cancellation.
pub fn root_balls(t: &Int, prec: u32) -> [RealBall; 4] {
    let (eps, rho) = epsilon_rho(t, prec);
    let one = RealBall::from_i64(1, prec);
    [
        eps.add(&rho).recip().expect("ε + ρ > 0").neg(),
        rho.sub(&one).div(&eps).expect("ε > 0"),
        rho.add(&eps),
        rho.add(&one).div(&eps).expect("ε > 0").neg(),
    ]
}

/// Open interval `(lo, hi)` known to contain `β^(j)` for `t ≥ 5`.
pub fn root_interval(t: &Int, j: usize) -> (Rat, Rat) {
    let tr = rat_int(t.clone());
    let one = rat(1, 1);
    let inv = |d: Rat| &one / d;
    match j {
        0 => (-inv(tr.clone()), -inv(&tr + &one)),
        1 => (&one - rat(2, 1) * inv(&tr + &one), &one - rat(2, 1) * inv(&tr + rat(2, 1))),
        2 => (&tr + rat(5, 1) * inv(&tr + &one), &tr + rat(5, 1) * inv(tr.clone())),
        3 => (-&one - rat(2, 1) * inv(&tr - &one), -&one - rat(2, 1) * inv(tr.clone())),
        _ => panic!("root index {j} out of range"),
    }
}

fn inside(b: &RealBall, lo: &Rat, hi: &Rat) -> Certified {
    let p = b.prec();
    RealBall::from_rat(lo, p)
        .strict_less(b)
        .and(b.strict_less(&RealBall::from_rat(hi, p)))
}

pub fn roots(t: &Int, precision: Precision) -> Result<QuarticRoots> {
    if *t < Int::from(5) {
        return Err(domain(format!("root intervals need t ≥ 5, got {t}")));
    }
    precision.escalate("isolating the quartic roots", |p| {
        let beta = root_balls(t, p);
        let mut ok = true;
        for (j, b) in beta.iter().enumerate() {
            let (lo, hi) = root_interval(t, j);
            match inside(b, &lo, &hi) {
                Certified::True => {}
                Certified::False => {
                    return Err(crate::error::inconsistent(format!("β^({j}) outside its interval for t = {t}")))
                }
                Certified::Undecided => ok = false,
            }
        }
        Ok(ok.then(|| QuarticRoots { t: t.clone(), beta, prec: p }))
    })
}

/// Serializable summary of a root enclosure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSummary {
    pub j: usize,
    pub approx: f64,
    pub radius: f64,
}

impl QuarticRoots {
    pub fn summary(&self) -> Vec<RootSummary> {
        self.beta
            .iter()
            .enumerate()
            .map(|(j, b)| RootSummary { j, approx: b.to_f64(), radius: b.rad_f64() })
            .collect()
    }
}
