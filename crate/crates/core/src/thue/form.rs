use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::Int;

/// `P_t(x, y)` in `i128`, or `None` on overflow.
pub fn p_t_i128(t: i128, x: i128, y: i128) -> Option<i128> {
    let x2 = x.checked_mul(x)?;
    let y2 = y.checked_mul(y)?;
    let x4 = x2.checked_mul(x2)?;
    let y4 = y2.checked_mul(y2)?;
    let mid = x2.checked_mul(y2)?.checked_mul(6)?;
    // t x y (y² − x²)
    let cross = t.checked_mul(x)?.checked_mul(y)?.checked_mul(y2.checked_sub(x2)?)?;
    x4.checked_add(y4)?.checked_sub(mid)?.checked_add(cross)
}

/// `P_t(x, y) = x⁴ − t x³ y − 6 x² y² + t x y³ + y⁴`.
pub fn p_t(t: &Int, x: &Int, y: &Int) -> Int {
    if let (Ok(tt), Ok(xx), Ok(yy)) = (i128::try_from(t), i128::try_from(x), i128::try_from(y)) {
        if let Some(v) = p_t_i128(tt, xx, yy) {
            return Int::from(v);
        }
    }
    let x2 = x * x;
    let y2 = y * y;
    &x2 * &x2 + &y2 * &y2 - Int::from(6) * &x2 * &y2 + t * x * y * (&y2 - &x2)
}

/// `Some(±1)` when `P_t(x, y) = ±1`.
pub fn unit_value(t: &Int, x: &Int, y: &Int) -> Option<i8> {
    let v = p_t(t, x, y);
    if v == Int::from(1) {
        Some(1)
    } else if v == Int::from(-1) {
        Some(-1)
    } else {
        None
    }
}

/// `∂P_t/∂x (x, 1) = 4x³ − 3t x² − 12x + t`, coefficients lowest first.
pub fn dx_coeffs(t: &Int) -> Vec<Int> {
    vec![t.clone(), Int::from(-12), Int::from(-3) * t, Int::from(4)]
}

/// Coefficients of `P_t(x, y0) − e` in `x`, lowest first.
pub fn x_poly(t: &Int, y0: &Int, e: i64) -> Vec<Int> {
    let y2 = y0 * y0;
    vec![&y2 * &y2 - e, t * y0 * &y2, Int::from(-6) * &y2, -(t * y0), Int::from(1)]
}

fn eval(c: &[Int], x: &Int) -> Int {
    c.iter().rev().fold(Int::zero(), |acc, a| acc * x + a)
}

fn derivative(c: &[Int]) -> Vec<Int> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * Int::from(k as u64)).collect()
}

fn trim(c: &[Int]) -> &[Int] {
    let n = c.iter().rposition(|a| !a.is_zero()).map_or(0, |i| i + 1);
    &c[..n]
}

/// Cauchy bound `1 + max |a_i / a_n|`, rounded up.
fn root_bound(c: &[Int]) -> Int {
    let lead = c.last().expect("nonzero polynomial").abs();
    let m = c[..c.len() - 1].iter().map(|a| a.abs().div_ceil(&lead)).max().unwrap_or_default();
    m + 1
}

/// Integer points splitting `[−B, B]` into pieces on which `c` is monotone.
fn breaks(c: &[Int], b: &Int) -> Vec<Int> {
    let mut out = vec![-b.clone(), b.clone()];
    if c.len() <= 2 {
        return out;
    }
    let d = derivative(c);
    let db = breaks(&d, b);
    for w in db.windows(2) {
        // d is monotone on [w0, w1]; bracket its sign change between adjacent integers.
        let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
        let s_lo = eval(&d, &lo).signum();
        let s_hi = eval(&d, &hi).signum();
        if s_lo == s_hi || s_lo.is_zero() || s_hi.is_zero() {
            continue;
        }
        while &hi - &lo > Int::from(1) {
            let mid: Int = (&lo + &hi).div_floor(&Int::from(2));
            if eval(&d, &mid).signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(lo);
        out.push(hi);
    }
    out.extend(db);
    out.sort();
    out.dedup();
    out
}

/// All integer roots of an integer polynomial (coefficients lowest first), sorted.
///
/// Exact: the range `[−B, B]` is cut into pieces where the polynomial is monotone,
/// using brackets of the derivative's roots, and each piece is bisected.
pub fn integer_roots(c: &[Int]) -> Vec<Int> {
    let c = trim(c);
    if c.is_empty() {
        panic!("integer_roots of the zero polynomial");
    }
    let k = c.iter().position(|a| !a.is_zero()).expect("nonzero");
    let mut roots = if k > 0 { vec![Int::zero()] } else { Vec::new() };
    let c = &c[k..];
    if c.len() == 1 {
        return roots;
    }
    let b = root_bound(c);
    let pts = breaks(c, &b);
    for p in &pts {
        if eval(c, p).is_zero() {
            roots.push(p.clone());
        }
    }
    for w in pts.windows(2) {
        let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
        let s_lo = eval(c, &lo).signum();
        let s_hi = eval(c, &hi).signum();
        if s_lo == s_hi || s_lo.is_zero() || s_hi.is_zero() {
            continue;
        }
        while &hi - &lo > Int::from(1) {
            let mid: Int = (&lo + &hi).div_floor(&Int::from(2));
            let s = eval(c, &mid).signum();
            if s.is_zero() {
                roots.push(mid.clone());
                break;
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}
