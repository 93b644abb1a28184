//! The family `X⁴ − tX³Y − 6X²Y² + tXY³ + Y⁴ = ±1`.

mod cf;
mod form;
mod roots;
mod solve;

pub use cf::{certified_digits, cf_of_rat, convergent_scan, convergents, Convergent, ConvergentScan};
pub use form::{integer_roots, p_t, unit_value};
pub use roots::{root_balls, root_interval, roots, QuarticRoots, RootSummary};
pub use solve::{
    derivative_bound, solve, solve_bounded, solve_certified, solve_small_y, solve_t3, solution_table,
    trivial_solutions, Evidence, Method, Rhs, ThueSolutionSet, DEFAULT_BOUND,
};
