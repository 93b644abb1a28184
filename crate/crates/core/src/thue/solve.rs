use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cf::{convergent_scan, ConvergentScan};
use super::form::{dx_coeffs, integer_roots, p_t, p_t_i128, unit_value, x_poly};
use super::roots::root_balls;
use crate::error::{domain, inconsistent, Error, Result};
use crate::exact::{Int, Precision, RealBall};
use crate::json;
use crate::measure::{default_y_floor, exclusion_all, ExclusionReport};

/// Default `|y|` bound of the bounded search.
pub const DEFAULT_BOUND: u64 = 10_000;

/// `|x|, |y|` range of the naive cross-check in the bounded search.
const NAIVE_LIMIT: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Certified,
    BoundedSearch,
    Factorization,
}

/// Which right-hand sides were solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rhs {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "both")]
    Both,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Solutions with `|y| ≤ 1` from exact integer-root search.
    #[serde(with = "json::int::pairs")]
    pub small_y: Vec<(Int, Int)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convergent_scans: Vec<ConvergentScan>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclusion: Vec<ExclusionReport>,
    /// `min_j |f'(β^(j))| > 32`, so every solution with `|y| > 1` is a convergent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivative_bound: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naive_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_match: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Decoding re-checks that every value is `P_t` at its point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct ThueSolutionSet {
    #[serde(with = "json::int")]
    pub t: Int,
    pub rhs: Rhs,
    /// Sorted by `(x, y)`.
    #[serde(with = "json::int::pairs")]
    pub solutions: Vec<(Int, Int)>,
    /// `P_t(x, y)` for each solution, `±1`.
    pub values: Vec<i8>,
    pub method: Method,
    pub certified: bool,
    pub evidence: Evidence,
}

#[derive(Deserialize)]
struct RawSet {
    #[serde(with = "json::int")]
    t: Int,
    rhs: Rhs,
    #[serde(with = "json::int::pairs")]
    solutions: Vec<(Int, Int)>,
    values: Vec<i8>,
    method: Method,
    certified: bool,
    evidence: Evidence,
}

impl TryFrom<RawSet> for ThueSolutionSet {
    type Error = String;

    fn try_from(r: RawSet) -> std::result::Result<Self, String> {
        if r.values.len() != r.solutions.len() {
            return Err("one value per solution expected".into());
        }
        for ((x, y), v) in r.solutions.iter().zip(&r.values) {
            if p_t(&r.t, x, y) != Int::from(*v) || v.abs() != 1 {
                return Err(format!("P_{}({x}, {y}) is not {v}", r.t));
            }
        }
        let RawSet { t, rhs, solutions, values, method, certified, evidence } = r;
        Ok(ThueSolutionSet { t, rhs, solutions, values, method, certified, evidence })
    }
}

impl ThueSolutionSet {
    /// Re-verifies every point, removes duplicates and sorts.
    pub fn new(
        t: &Int,
        sols: impl IntoIterator<Item = (Int, Int)>,
        method: Method,
        certified: bool,
        evidence: Evidence,
    ) -> Result<Self> {
        let set: BTreeSet<(Int, Int)> = sols.into_iter().collect();
        let mut values = Vec::with_capacity(set.len());
        for (x, y) in &set {
            let v = unit_value(t, x, y)
                .ok_or_else(|| inconsistent(format!("({x}, {y}) gives P_{t} = {}", p_t(t, x, y))))?;
            values.push(v);
        }
        Ok(Self { t: t.clone(), rhs: Rhs::Both, solutions: set.into_iter().collect(), values, method, certified, evidence })
    }

    pub fn pairs_i64(&self) -> Vec<(i64, i64)> {
        self.solutions
            .iter()
            .map(|(x, y)| (i64::try_from(x).expect("small"), i64::try_from(y).expect("small")))
            .collect()
    }
}

/// Known solution lists; `None` for `t = 3` and `t < 1`.
///
/// For `t = 4` the pair `(−2, −3)` is listed where the usual table lists
/// `(−2, 3)`; the latter gives `P_4 = −239`.
pub fn solution_table(t: &Int) -> Option<Vec<(i64, i64)>> {
    let mut v = vec![(-1, 0), (0, -1), (0, 1), (1, 0)];
    if *t == Int::from(1) {
        v.extend([(-2, 1), (-1, -2), (1, 2), (2, -1)]);
    } else if *t == Int::from(4) {
        v.extend([(-3, 2), (-2, -3), (2, 3), (3, -2)]);
    } else if *t == Int::from(3) || *t < Int::from(1) {
        return None;
    }
    v.sort();
    Some(v)
}

/// The four trivial solutions `(±1, 0)`, `(0, ±1)`.
pub fn trivial_solutions() -> Vec<(i64, i64)> {
    vec![(-1, 0), (0, -1), (0, 1), (1, 0)]
}

/// All solutions with `y ∈ {−1, 0, 1}`, sorted.
pub fn solve_small_y(t: &Int) -> Vec<(Int, Int)> {
    let mut out = BTreeSet::new();
    for y0 in [-1i64, 0, 1] {
        let y = Int::from(y0);
        for e in [1i64, -1] {
            for x in integer_roots(&x_poly(t, &y, e)) {
                out.insert((x, y.clone()));
            }
        }
    }
    out.into_iter().collect()
}

fn search_stripe(t: &Int, ti: Option<i128>, bounds: &[(f64, f64); 4], beta: &[RealBall; 4], y: u64) -> Vec<(Int, Int)> {
    let yi = Int::from(y);
    let mut hits = Vec::new();
    let mut test = |x: Int| {
        let hit = match (ti, i128::try_from(&x)) {
            (Some(tt), Ok(xx)) => match p_t_i128(tt, xx, y as i128) {
                Some(v) => v == 1 || v == -1,
                None => unit_value(t, &x, &yi).is_some(),
            },
            _ => unit_value(t, &x, &yi).is_some(),
        };
        if hit {
            hits.push((-x.clone(), -yi.clone()));
            hits.push((x, yi.clone()));
        }
    };
    const LIMIT: f64 = (1u64 << 50) as f64;
    for j in 0..4 {
        let (lo, hi) = bounds[j];
        let (a, b) = (lo * y as f64, hi * y as f64);
        if a.abs() < LIMIT && b.abs() < LIMIT {
            // Slack of 2 covers |x − βy| < 1 plus f64 rounding.
            for x in (a.floor() as i64 - 2)..=(b.ceil() as i64 + 2) {
                test(Int::from(x));
            }
        } else {
            let by = beta[j].mul_int(&yi);
            let mut x: Int = by.lo().floor() - 2;
            let end: Int = by.hi().ceil() + 2;
            while x <= end {
                test(x.clone());
                x += 1;
            }
        }
    }
    hits
}

/// All solutions with `|y| ≤ bound`.
///
/// A solution has `|x − β^(j) y| ≤ 1` for some `j` because the four distances
/// multiply to `|P_t(x, y)| = 1`, so only a few `x` per `(y, j)` are tested. A naive
/// double loop over `|x|, |y| ≤ min(bound, 200)` cross-checks the pruning.
pub fn solve_bounded(t: &Int, bound: u64) -> Result<ThueSolutionSet> {
    if *t < Int::from(1) {
        return Err(domain(format!("t must be ≥ 1, got {t}")));
    }
    if bound < 1 {
        return Err(domain("search bound must be ≥ 1"));
    }
    let beta = root_balls(t, 128);
    let bounds: [(f64, f64); 4] = std::array::from_fn(|j| beta[j].to_f64_bounds());
    let ti = i128::try_from(t).ok();
    let mut found: BTreeSet<(Int, Int)> = solve_small_y(t).into_iter().collect();
    let stripes: Vec<Vec<(Int, Int)>> =
        (2..=bound).into_par_iter().map(|y| search_stripe(t, ti, &bounds, &beta, y)).collect();
    found.extend(stripes.into_iter().flatten());

    let n = bound.min(NAIVE_LIMIT) as i64;
    let naive: BTreeSet<(Int, Int)> = (-n..=n)
        .into_par_iter()
        .flat_map_iter(|y| {
            let yi = Int::from(y);
            (-n..=n).filter_map(move |x| {
                let xi = Int::from(x);
                unit_value(t, &xi, &yi).map(|_| (xi, yi.clone()))
            })
        })
        .collect();
    let nn = Int::from(n);
    let pruned: BTreeSet<(Int, Int)> =
        found.iter().filter(|(x, y)| x.abs() <= nn && y.abs() <= nn).cloned().collect();
    if naive != pruned {
        return Err(inconsistent(format!("pruned and naive searches disagree for t = {t}")));
    }
    let evidence = Evidence {
        small_y: solve_small_y(t),
        search_bound: Some(bound),
        naive_bound: Some(n as u64),
        ..Evidence::default()
    };
    ThueSolutionSet::new(t, found, Method::BoundedSearch, false, evidence)
}

/// `t = 3`: `P_3 = (x² + xy − y²)(x² − 4xy − y²)`.
///
/// Both factors are `±1`; their difference `5xy` lies in `{−2, 0, 2}`, so `xy = 0`.
pub fn solve_t3() -> Result<ThueSolutionSet> {
    let t = Int::from(3);
    let mut sols = BTreeSet::new();
    for e1 in [-1i64, 1] {
        for e2 in [-1i64, 1] {
            if (e1 - e2) % 5 != 0 {
                continue;
            }
            // xy = 0 and x² − y² = e1 (both factors reduce to x² − y²).
            for (x, y) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                if x * x - y * y == e1 && e1 == e2 {
                    sols.insert((Int::from(x), Int::from(y)));
                }
            }
        }
    }
    let evidence = Evidence {
        small_y: solve_small_y(&t),
        notes: vec!["P_3 = (x^2 + xy - y^2)(x^2 - 4xy - y^2); factors differ by 5xy in {-2, 0, 2}, forcing xy = 0".into()],
        ..Evidence::default()
    };
    ThueSolutionSet::new(&t, sols, Method::Factorization, true, evidence)
}

/// `min_j |f'(β^(j))| > 32` with `f(x) = P_t(x, 1)`.
pub fn derivative_bound(t: &Int, precision: Precision) -> Result<bool> {
    let c = dx_coeffs(t);
    precision.escalate("bounding f' at the roots", |p| {
        let beta = root_balls(t, p);
        let lim = RealBall::from_i64(32, p);
        let mut all = crate::exact::Certified::True;
        for b in &beta {
            let v = c.iter().rev().fold(RealBall::zero(p), |acc, a| acc.mul(b).add(&RealBall::from_int(a, p)));
            all = all.and(v.abs().strict_greater(&lim));
        }
        Ok(all.decided())
    })
}

/// Complete solution for `t ≥ 128`.
///
/// Small `|y|` by exact root search, `2 ≤ |y| ≤ y_floor` through certified convergents,
/// `|y| ≥ y_floor` by the measure-based exclusion; a bounded search up to `|y| = 200`
/// double-checks the result.
pub fn solve_certified(t: &Int, precision: Precision) -> Result<ThueSolutionSet> {
    if *t < Int::from(128) {
        return Err(Error::OutOfMethodRange(format!("certified solving needs t ≥ 128, got {t}")));
    }
    let small = solve_small_y(t);
    let y_floor = default_y_floor(t);
    let scans: Vec<ConvergentScan> =
        (0..4u8).map(|j| convergent_scan(t, j, &y_floor, precision)).collect::<Result<_>>()?;
    let exclusion = exclusion_all(t, precision)?;
    if let Some(bad) = exclusion.iter().find(|r| !r.contradiction) {
        return Err(Error::Uncertified(format!("large solutions with δ^({}) smallest not excluded for t = {t}", bad.j)));
    }
    let deriv = derivative_bound(t, precision)?;
    if !deriv {
        return Err(Error::Uncertified(format!("min |f'(β)| > 32 fails for t = {t}")));
    }
    let mut sols: BTreeSet<(Int, Int)> = small.iter().cloned().collect();
    for s in &scans {
        sols.extend(s.hits.iter().cloned());
    }
    let check = solve_bounded(t, NAIVE_LIMIT)?;
    if check.solutions.iter().cloned().collect::<BTreeSet<_>>() != sols {
        return Err(inconsistent(format!("certified and bounded solution sets differ for t = {t}")));
    }
    let evidence = Evidence {
        small_y: small,
        convergent_scans: scans,
        exclusion,
        derivative_bound: Some(deriv),
        search_bound: Some(NAIVE_LIMIT),
        naive_bound: check.evidence.naive_bound,
        ..Evidence::default()
    };
    ThueSolutionSet::new(t, sols, Method::Certified, true, evidence)
}

/// Dispatch: factorization for `t = 3`, certified for `t ≥ 128`, bounded search otherwise.
pub fn solve(t: &Int, bound: u64, precision: Precision) -> Result<ThueSolutionSet> {
    if *t < Int::from(1) {
        return Err(domain(format!("t must be ≥ 1, got {t}")));
    }
    if *t == Int::from(3) {
        return solve_t3();
    }
    if *t >= Int::from(128) {
        return solve_certified(t, precision);
    }
    let mut set = solve_bounded(t, bound)?;
    let table = solution_table(t).expect("t ≠ 3");
    if set.pairs_i64() != table {
        return Err(inconsistent(format!("bounded search for t = {t} differs from the known table")));
    }
    set.evidence.table_match = Some(true);
    Ok(set)
}
