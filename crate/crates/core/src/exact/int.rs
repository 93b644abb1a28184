use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &Int, n: &Int) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(domain(format!("jacobi modulus must be odd and positive, got {n}")));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let three = Int::from(3u8);
    let five = Int::from(5u8);
    let eight = Int::from(8u8);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let r = n.mod_floor(&eight);
            if tz % 2 == 1 && (r == three || r == five) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&Int::from(4u8)) == three && n.mod_floor(&Int::from(4u8)) == three {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Returns the non-negative square root of `n` when `n` is a perfect square.
pub fn is_perfect_square(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// All positive divisors of `n != 0`, in increasing order.
#[cfg(test)]
pub(crate) fn positive_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1u8;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    /// Euler's criterion on each prime factor: the textbook oracle.
    fn jacobi_oracle(a: i64, n: i64) -> i8 {
        let mut result = 1i8;
        let mut m = n;
        let mut p = 3;
        let legendre = |a: i64, p: i64| -> i8 {
            let a = a.rem_euclid(p);
            if a == 0 {
                return 0;
            }
            if (1..p).any(|x| (x * x) % p == a) {
                1
            } else {
                -1
            }
        };
        while m > 1 {
            while m % p == 0 {
                result *= legendre(a, p);
                m /= p;
            }
            p += 2;
        }
        result
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(&int(5), &int(29)).unwrap(), 1);
        assert_eq!(jacobi(&int(1), &int(15)).unwrap(), 1);
        assert_eq!(jacobi(&int(1), &int(1)).unwrap(), 1);
        assert_eq!(jacobi(&int(2), &int(15)).unwrap(), 1);
        assert_eq!(jacobi(&int(3), &int(9)).unwrap(), 0);
        assert_eq!(jacobi(&int(-1), &int(7)).unwrap(), -1);
    }

    #[test]
    fn jacobi_rejects_bad_modulus() {
        assert!(jacobi(&int(3), &int(8)).is_err());
        assert!(jacobi(&int(3), &int(0)).is_err());
        assert!(jacobi(&int(3), &int(-5)).is_err());
    }

    #[test]
    fn jacobi_matches_legendre_products() {
        for n in (1..120).step_by(2) {
            for a in -40..40 {
                assert_eq!(jacobi(&int(a), &int(n)).unwrap(), jacobi_oracle(a, n), "({a}/{n})");
            }
        }
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&int(169)), Some(int(13)));
        assert_eq!(is_perfect_square(&int(5)), None);
        assert_eq!(is_perfect_square(&int(0)), Some(int(0)));
        assert_eq!(is_perfect_square(&int(-4)), None);
    }

    #[test]
    fn perfect_square_agrees_with_floor_sqrt_up_to_a_million() {
        let mut root = 0u64;
        for n in 0u64..=1_000_000 {
            while (root + 1) * (root + 1) <= n {
                root += 1;
            }
            let expected = (root * root == n).then(|| int(root as i64));
            assert_eq!(is_perfect_square(&Int::from(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn divisors_are_complete() {
        assert_eq!(positive_divisors(&int(12)), [1, 2, 3, 4, 6, 12].map(int).to_vec());
        assert_eq!(positive_divisors(&int(-9)), [1, 3, 9].map(int).to_vec());
        assert_eq!(positive_divisors(&int(1)), vec![int(1)]);
    }

    proptest! {
        #[test]
        fn jacobi_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, k in 0i64..5_000) {
            let n = int(2 * k + 1);
            let ab = int(a) * int(b);
            prop_assert_eq!(
                jacobi(&ab, &n).unwrap(),
                jacobi(&int(a), &n).unwrap() * jacobi(&int(b), &n).unwrap()
            );
        }

        #[test]
        fn squares_are_recognised(s in 0u64..u32::MAX as u64) {
            let n = Int::from(s) * Int::from(s);
            prop_assert_eq!(is_perfect_square(&n), Some(Int::from(s)));
            prop_assert_eq!(is_perfect_square(&(n + 1u8)).is_some(), s == 0);
        }
    }
}
