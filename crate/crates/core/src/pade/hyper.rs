use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exact::{rat, GaussRat, Rat};

/// Coefficients of `X_r(X) = ₂F₁(−r, −r − 1/4; 3/4; X)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCoeffs {
    pub r: usize,
    #[serde(with = "crate::json::rat_vec")]
    pub coeffs: Vec<Rat>,
}

pub fn xnr_coeffs(r: usize) -> HyperCoeffs {
    let ri = r as i64;
    let mut coeffs = vec![Rat::one()];
    for k in 0..ri {
        // Term ratio (k − r)(k − r − 1/4) / ((k + 3/4)(k + 1)).
        let num = rat(k - ri, 1) * rat(4 * (k - ri) - 1, 4);
        let den = rat(4 * k + 3, 4) * rat(k + 1, 1);
        let next = &coeffs[k as usize] * num / den;
        coeffs.push(next);
    }
    HyperCoeffs { r, coeffs }
}

impl HyperCoeffs {
    /// `X*_r(x, y) = y^r X_r(x/y) = Σ c_k x^k y^(r−k)`.
    pub fn xstar(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let mut xp = vec![GaussRat::one()];
        let mut yp = vec![GaussRat::one()];
        for k in 0..self.r {
            xp.push(&xp[k] * x);
            yp.push(&yp[k] * y);
        }
        self.coeffs
            .iter()
            .enumerate()
            .fold(GaussRat::zero(), |acc, (k, c)| &acc + &(&xp[k] * &yp[self.r - k]).scale(c))
    }
}

/// `Π_{k=1..r} (k + s)/k`, that is `Γ(r + 1 + s) / (Γ(1 + s) r!)`.
pub fn gamma_ratio(s: &Rat, r: usize) -> Rat {
    (1..=r as i64).fold(Rat::one(), |acc, k| acc * (rat(k, 1) + s) / rat(k, 1))
}

/// `M = 3·7···(4r−1) / (4^r r!)`.
pub fn m_factor(r: usize) -> Rat {
    gamma_ratio(&rat(-1, 4), r)
}
