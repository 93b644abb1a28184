use num_traits::{One, Zero};

use crate::error::{domain, inconsistent, Result};
use crate::exact::{rat, rat_int, Int, Rat, RatPoly};

/// Degree of `P`.
const N: i64 = 4;

/// Polynomial data of the construction for `P = X⁴ − tX³ − 6X² + tX + 1`, `U = X² + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThueData {
    pub t: Int,
    pub p: RatPoly,
    pub u: RatPoly,
    pub h: Int,
    pub lambda: Int,
    pub y1: RatPoly,
    pub a0: RatPoly,
    pub a1: RatPoly,
    pub b0: RatPoly,
    pub b1: RatPoly,
}

pub fn build_thue_data(t: &Int) -> Result<ThueData> {
    if *t < Int::one() {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    let tr = rat_int(t.clone());
    let p = RatPoly::new(vec![rat(1, 1), tr.clone(), rat(-6, 1), -tr.clone(), rat(1, 1)]);
    let u = RatPoly::from_ints(&[1, 0, 1]);
    let (dp, ddp) = (p.derivative(), p.nth_derivative(2));
    let (du, ddu) = (u.derivative(), u.nth_derivative(2));
    let n = rat_int(N);

    let ode = &(&(&u * &ddp) - &(&du * &dp).scale(&(&n - rat(1, 1)))) + &(&ddu * &p).scale(&(&n * (&n - rat(1, 1)) / rat(2, 1)));
    if !ode.is_zero() {
        return Err(inconsistent(format!("differential equation residual {ode} for t = {t}")));
    }
    // U has nonzero discriminant.
    let disc = &u.coeff(1) * &u.coeff(1) - rat(4, 1) * u.coeff(2) * u.coeff(0);
    if disc.is_zero() {
        return Err(inconsistent("U has zero discriminant"));
    }

    let n2m1 = &n * &n - rat(1, 1);
    let hpoly = (&(&du * &du) - &(&u * &ddu).scale(&rat(2, 1))).scale(&(&n2m1 / rat(4, 1)));
    if hpoly.degree().unwrap_or(0) != 0 {
        return Err(inconsistent(format!("h is not constant: {hpoly}")));
    }
    let h = hpoly.coeff(0);
    let lambda = &h / &n2m1;
    let as_int = |r: &Rat, what: &str| {
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(inconsistent(format!("{what} = {r} is not an integer")))
        }
    };

    let y1 = &(&u * &dp).scale(&rat(2, 1)) - &(&du * &p).scale(&n);
    let k = (&n + rat(1, 1)) * rat(2, 3);
    let a0 = RatPoly::constant(&h * rat(2, 3));
    let a1 = (&(&u * &dp) - &(&du * &p).scale(&((&n - rat(1, 1)) / rat(2, 1)))).scale(&k);
    let b0 = &RatPoly::x() * &a0;
    let b1 = &(&RatPoly::x() * &a1) - &(&u * &p).scale(&k);

    Ok(ThueData { t: t.clone(), h: as_int(&h, "h")?, lambda: as_int(&lambda, "lambda")?, p, u, y1, a0, a1, b0, b1 })
}

impl ThueData {
    /// Coefficients `(α_r, β_r, γ_r)` of `α_r·F_{r+1} = β_r·Y1·F_r − γ_r·P²·F_{r−1}`.
    fn recurrence_coeffs(&self, r: usize) -> (Rat, Rat, Rat) {
        let r = r as i64;
        (rat_int(self.lambda.clone()) * rat_int(N * (r + 1) - 1), rat(2 * r + 1, 2), rat_int(N * r + 1))
    }

    /// `A_0..A_{r_max}` and `B_0..B_{r_max}` as polynomials.
    pub fn ab_polys(&self, r_max: usize) -> (Vec<RatPoly>, Vec<RatPoly>) {
        let p2 = &self.p * &self.p;
        let mut a = vec![self.a0.clone(), self.a1.clone()];
        let mut b = vec![self.b0.clone(), self.b1.clone()];
        for r in 1..r_max {
            let (al, be, ga) = self.recurrence_coeffs(r);
            let step = |f: &[RatPoly]| {
                (&(&self.y1 * &f[r]).scale(&be) - &(&p2 * &f[r - 1]).scale(&ga)).scale(&(rat(1, 1) / &al))
            };
            let na = step(&a);
            let nb = step(&b);
            a.push(na);
            b.push(nb);
        }
        a.truncate(r_max + 1);
        b.truncate(r_max + 1);
        (a, b)
    }
}

/// `A_r(x)` and `B_r(x)` for `r = 0..=r_max`, advanced pointwise.
pub fn ab_values(td: &ThueData, x: &Rat, r_max: usize) -> (Vec<Rat>, Vec<Rat>) {
    let y1 = td.y1.eval(x);
    let px = td.p.eval(x);
    let p2 = &px * &px;
    let mut a = vec![td.a0.eval(x), td.a1.eval(x)];
    let mut b = vec![td.b0.eval(x), td.b1.eval(x)];
    for r in 1..r_max {
        let (al, be, ga) = td.recurrence_coeffs(r);
        let na = (&be * &y1 * &a[r] - &ga * &p2 * &a[r - 1]) / &al;
        let nb = (&be * &y1 * &b[r] - &ga * &p2 * &b[r - 1]) / &al;
        a.push(na);
        b.push(nb);
    }
    a.truncate(r_max + 1);
    b.truncate(r_max + 1);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[Rat]) -> RatPoly {
        RatPoly::new(c.to_vec())
    }

    #[test]
    fn constants_and_initial_polynomials() {
        let td = build_thue_data(&Int::from(128)).unwrap();
        assert_eq!(td.h, Int::from(-15));
        assert_eq!(td.lambda, Int::from(-1));
        assert_eq!(td.y1, RatPoly::from_ints(&[256, -32, -1536, 32, 256]));
        assert_eq!(td.a0, RatPoly::from_ints(&[-10]));
        assert_eq!(td.b0, RatPoly::from_ints(&[0, -10]));

        let td1 = build_thue_data(&Int::from(1)).unwrap();
        let a1 = poly(&[rat(10, 3), rat(-50, 1), rat(-50, 3), rat(100, 3), rat(0, 1), rat(10, 3)]);
        assert_eq!(td1.a1, a1);
    }

    #[test]
    fn y1_has_the_closed_form_for_every_t() {
        for t in 1..40i64 {
            let td = build_thue_data(&Int::from(t)).unwrap();
            assert_eq!(td.y1, RatPoly::from_ints(&[2 * t, -32, -12 * t, 32, 2 * t]));
            let a1 = poly(&[rat(10 * t, 3), rat(-50, 1), rat(-50 * t, 3), rat(100, 3), rat(0, 1), rat(10, 3)]);
            assert_eq!(td.a1, a1);
            let b1 = poly(&[rat(-10, 3), rat(0, 1), rat(-100, 3), rat(-50 * t, 3), rat(50, 1), rat(10 * t, 3)]);
            assert_eq!(td.b1, b1);
        }
    }

    #[test]
    fn rejects_nonpositive_t() {
        assert!(build_thue_data(&Int::from(0)).is_err());
    }

    #[test]
    fn pointwise_values_match_polynomial_recurrence() {
        let td = build_thue_data(&Int::from(128)).unwrap();
        let (ap, bp) = td.ab_polys(6);
        for x in [rat(0, 1), rat(1, 1), rat(-3, 7)] {
            let (a, b) = ab_values(&td, &x, 6);
            for r in 0..=6 {
                assert_eq!(a[r], ap[r].eval(&x));
                assert_eq!(b[r], bp[r].eval(&x));
            }
        }
        let (a, b) = ab_values(&td, &rat(0, 1), 1);
        assert_eq!((a[0].clone(), b[0].clone()), (rat(-10, 1), rat(0, 1)));
        assert_eq!((a[1].clone(), b[1].clone()), (rat(1280, 3), rat(-10, 3)));
    }

    #[test]
    fn polynomial_degrees_grow_by_four() {
        let td = build_thue_data(&Int::from(7)).unwrap();
        let (a, b) = td.ab_polys(4);
        for r in 1..=4 {
            assert_eq!(a[r].degree(), Some(4 * r + 1));
            assert_eq!(b[r].degree(), Some(4 * r + 1));
        }
    }
}
