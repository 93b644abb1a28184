use num_traits::One;

use crate::error::{domain, Result};
use crate::exact::{rat, rat_int, ComplexBall, GaussRat, Int, RealBall};

/// The point `w = z'/u'` on the unit circle and the quantities derived from it.
#[derive(Clone, Debug)]
pub struct WData {
    pub t: Int,
    /// `((t² − 16) + 8ti) / (t² + 16)`.
    pub w: GaussRat,
    /// `z' = −it + 4`.
    pub zp: GaussRat,
    /// `u' = −it − 4`.
    pub up: GaussRat,
    /// `arg w = 2·atan(4/t)`.
    pub phi: RealBall,
    /// `(t + 4i)/√(t² + 16)`.
    pub sqrt_w: ComplexBall,
    /// `ε/ρ + i/ρ`, the principal fourth root.
    pub fourth_root_w: ComplexBall,
    pub epsilon: RealBall,
    pub rho: RealBall,
}

/// `ε = (t + √(t² + 16))/4` and `ρ = √(1 + ε²)`.
pub fn epsilon_rho(t: &Int, prec: u32) -> (RealBall, RealBall) {
    let tb = RealBall::from_int(t, prec);
    let s = tb.sqr().add(&RealBall::from_i64(16, prec)).sqrt().expect("t² + 16 > 0");
    let eps = tb.add(&s).mul_pow2(-2);
    let rho = eps.sqr().add(&RealBall::from_i64(1, prec)).sqrt().expect("1 + ε² > 0");
    (eps, rho)
}

impl WData {
    pub fn new(t: &Int, prec: u32) -> Result<Self> {
        if *t <= Int::from(4) {
            return Err(domain(format!("w data needs t > 4, got {t}")));
        }
        let tr = rat_int(t.clone());
        let t2 = &tr * &tr;
        let w = GaussRat::new((&t2 - rat(16, 1)) / (&t2 + rat(16, 1)), &tr * rat(8, 1) / (&t2 + rat(16, 1)));
        let zp = GaussRat::new(rat(4, 1), -tr.clone());
        let up = GaussRat::new(rat(-4, 1), -tr.clone());

        let tb = RealBall::from_int(t, prec);
        let s = tb.sqr().add(&RealBall::from_i64(16, prec)).sqrt().expect("t² + 16 > 0");
        let sqrt_w = ComplexBall::new(
            tb.div(&s).expect("s > 0"),
            RealBall::from_i64(4, prec).div(&s).expect("s > 0"),
        );
        let (epsilon, rho) = epsilon_rho(t, prec);
        let fourth_root_w = ComplexBall::new(
            epsilon.div(&rho).expect("ρ > 0"),
            rho.recip().expect("ρ > 0"),
        );
        let phi = RealBall::from_i64(4, prec).div(&tb).expect("t > 0").atan().mul_pow2(1);
        Ok(Self { t: t.clone(), w, zp, up, phi, sqrt_w, fourth_root_w, epsilon, rho })
    }

    pub fn prec(&self) -> u32 {
        self.epsilon.prec()
    }

    /// `|1 + √w|² = 2 + 2t/√(t²+16)`.
    pub fn one_plus_sqrt_w_sq(&self) -> RealBall {
        let one = ComplexBall::from_real(RealBall::from_i64(1, self.prec()));
        one.add(&self.sqrt_w).norm()
    }

    /// `|1 − √w|² = 2 − 2t/√(t²+16)`, computed as `32/((t²+16) + t√(t²+16))` to avoid cancellation.
    pub fn one_minus_sqrt_w_sq(&self) -> RealBall {
        let p = self.prec();
        let tb = RealBall::from_int(&self.t, p);
        let t2 = tb.sqr().add(&RealBall::from_i64(16, p));
        let s = t2.sqrt().expect("positive");
        RealBall::from_i64(32, p).div(&t2.add(&tb.mul(&s))).expect("positive")
    }

    /// `|u'| = |z'| = √(t² + 16)`.
    pub fn abs_up(&self) -> RealBall {
        RealBall::from_rat(&self.up.norm(), self.prec()).sqrt().expect("positive")
    }

    pub fn w_is_unit(&self) -> bool {
        self.w.norm().is_one()
    }
}
