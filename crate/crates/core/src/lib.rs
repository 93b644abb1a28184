//! Exact and certified solving of `X⁴ − tX³Y − 6X²Y² + tXY³ + Y⁴ = ±1` and `X² + 1 = dY⁴`.
//!
//! Integers and rationals are exact; every real comparison goes through ball
//! arithmetic and is either certified or escalated to a higher precision.

pub mod error;
pub mod exact;
pub mod json;
pub mod lucas;
pub mod measure;
pub mod pade;
pub mod pell;
pub mod quartic;
pub mod thue;

pub use error::{Error, Result};
