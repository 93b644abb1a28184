//! Hypergeometric approximants to the roots of the quartic family.

mod approx;
mod bounds;
mod data;
mod hyper;
mod vanishing;
mod wdata;

pub use approx::{
    approximant_sequence, approximants, assembly_constants, closed_form_constants, det_nonvanish, ApproximantPair,
    AssemblyConstants, DetReport,
};
pub use bounds::{
    bound_suite, defect_and_bound, remainder_at, remainder_eval, rounded_k0, BoundCheck, BoundReport,
};
pub use data::{ab_values, build_thue_data, ThueData};
pub use hyper::{gamma_ratio, m_factor, xnr_coeffs, HyperCoeffs};
pub use vanishing::{vanishing_order, DerivativeValue, VanishingReport};
pub use wdata::{epsilon_rho, WData};

/// Degree of the forms handled here.
pub const N: u32 = 4;
