//! Exact integers, rationals, Gaussian rationals, polynomials and certified real balls.

mod ball;
mod dyadic;
mod gauss;
mod int;
mod poly;
mod precision;
mod transcendental;

pub use ball::{Certified, ComplexBall, RealBall};
pub use dyadic::Dyadic;
pub use gauss::{rat, rat_int, GaussRat, Rat};
pub use int::{is_perfect_square, isqrt, jacobi, Int};
#[cfg(test)]
pub(crate) use int::positive_divisors;
pub use poly::RatPoly;
pub use precision::Precision;
