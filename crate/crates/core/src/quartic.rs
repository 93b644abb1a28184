//! `X² + 1 = dY⁴`: at most one positive solution for `d ≥ 3`, read off the
//! fundamental solution of `X² + 1 = dY²`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{is_perfect_square, Int, Precision};
use crate::json;
use crate::lucas::{lucas_table, LucasParams};
use crate::pell::{neg_pell_fundamental, PellFundamental};
use crate::thue::{self, p_t, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuarticStatus {
    NoPell,
    NoSolution,
    Unique,
    SpecialD1,
    SpecialD2,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticEvidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pell: Option<PellFundamental>,
    /// `Some(s)` when `v = s²`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "json::int::option")]
    pub square_root_of_v: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_is_square: Option<bool>,
    /// Thue parameter `4u` that rules out a second solution.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "json::int::option")]
    pub thue_t: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Decoding re-checks every listed solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawResult")]
pub struct QuarticResult {
    #[serde(with = "json::int")]
    pub d: Int,
    pub status: QuarticStatus,
    /// Positive `(x, y)`, sorted by `y`.
    #[serde(with = "json::int::pairs")]
    pub solutions: Vec<(Int, Int)>,
    #[serde(default)]
    pub evidence: QuarticEvidence,
}

#[derive(Deserialize)]
struct RawResult {
    #[serde(with = "json::int")]
    d: Int,
    status: QuarticStatus,
    #[serde(with = "json::int::pairs")]
    solutions: Vec<(Int, Int)>,
    #[serde(default)]
    evidence: QuarticEvidence,
}

impl TryFrom<RawResult> for QuarticResult {
    type Error = String;

    fn try_from(r: RawResult) -> std::result::Result<Self, String> {
        if let Some((x, y)) = r.solutions.iter().find(|(x, y)| !satisfies(&r.d, x, y)) {
            return Err(format!("({x}, {y}) does not solve x² + 1 = {}·y⁴", r.d));
        }
        Ok(QuarticResult { d: r.d, status: r.status, solutions: r.solutions, evidence: r.evidence })
    }
}

impl QuarticResult {
    fn new(d: Int, status: QuarticStatus, solutions: Vec<(Int, Int)>, evidence: QuarticEvidence) -> Self {
        for (x, y) in &solutions {
            assert!(satisfies(&d, x, y), "({x}, {y}) does not solve x² + 1 = {d}·y⁴");
        }
        QuarticResult { d, status, solutions, evidence }
    }
}

/// `x² + 1 = d y⁴`.
pub fn satisfies(d: &Int, x: &Int, y: &Int) -> bool {
    let y2 = y * y;
    x * x + Int::one() == d * &y2 * &y2
}

pub fn solve_quartic(d: &Int) -> Result<QuarticResult> {
    if *d < Int::one() {
        return Err(domain(format!("d must be ≥ 1, got {d}")));
    }
    let pair = |x: i64, y: i64| (Int::from(x), Int::from(y));
    if d.is_one() {
        let ev = QuarticEvidence { note: Some("x² + 1 = y⁴ forces x = 0".into()), ..Default::default() };
        return Ok(QuarticResult::new(d.clone(), QuarticStatus::SpecialD1, vec![pair(0, 1)], ev));
    }
    if *d == Int::from(2) {
        let ev = QuarticEvidence {
            pell: neg_pell_fundamental(d)?,
            note: Some("two solutions, settled separately, the general argument needs d ≥ 3".into()),
            ..Default::default()
        };
        return Ok(QuarticResult::new(d.clone(), QuarticStatus::SpecialD2, vec![pair(1, 1), pair(239, 13)], ev));
    }
    if is_perfect_square(d).is_some() {
        let ev = QuarticEvidence { note: Some("square d: x² + 1 is never a square for x ≠ 0".into()), ..Default::default() };
        return Ok(QuarticResult::new(d.clone(), QuarticStatus::NoPell, vec![], ev));
    }
    let Some(f) = neg_pell_fundamental(d)? else {
        let ev = QuarticEvidence { note: Some("X² + 1 = dY² has no solution".into()), ..Default::default() };
        return Ok(QuarticResult::new(d.clone(), QuarticStatus::NoPell, vec![], ev));
    };
    let s = is_perfect_square(&f.v);
    let mut ev = QuarticEvidence { v_is_square: Some(s.is_some()), square_root_of_v: s.clone(), ..Default::default() };
    let res = match s {
        Some(s) => {
            ev.thue_t = Some(Int::from(4) * &f.u);
            let sol = vec![(f.u.clone(), s)];
            ev.pell = Some(f);
            QuarticResult::new(d.clone(), QuarticStatus::Unique, sol, ev)
        }
        None => {
            ev.pell = Some(f);
            QuarticResult::new(d.clone(), QuarticStatus::NoSolution, vec![], ev)
        }
    };
    Ok(res)
}

/// Solves every `d` in `lo..=hi` in parallel; output is in `d` order.
pub fn solve_range(lo: &Int, hi: &Int) -> Result<Vec<QuarticResult>> {
    if lo > hi {
        return Err(domain(format!("empty range {lo}..{hi}")));
    }
    let lo64 = u64::try_from(lo).map_err(|_| domain("range start must fit in u64"))?;
    let hi64 = u64::try_from(hi).map_err(|_| domain("range end must fit in u64"))?;
    if hi64 - lo64 > 1_000_000 {
        return Err(domain("range spans more than 10⁶ values"));
    }
    (lo64..=hi64).into_par_iter().map(|d| solve_quartic(&Int::from(d))).collect()
}

/// Which of `V_m`, `V_{m+1}` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityBranch {
    /// `V_m = 2ab`, `V_{m+1} = a² − b²`, Thue point `(a, b)`.
    VmEven,
    /// `V_m = a² − b²`, `V_{m+1} = 2ab`, Thue point `(−a, b)`.
    VmNextEven,
}

/// One Thue solution of `P_{4x₀} = ±1` traced back to a solution of `X² + 1 = (1 + x₀²)Y⁴`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    #[serde(with = "json::int")]
    pub x0: Int,
    #[serde(with = "json::int")]
    pub t: Int,
    #[serde(with = "json::int")]
    pub a: Int,
    #[serde(with = "json::int")]
    pub b: Int,
    pub branch: ParityBranch,
    /// Lucas index `m` with `y² = V_{2m+1} = V_m² + V_{m+1}²`.
    pub m: usize,
    #[serde(with = "json::int")]
    pub y: Int,
    /// `X` with `X² + 1 = (1 + x₀²) y⁴`.
    #[serde(with = "json::int")]
    pub x: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThueReduction {
    #[serde(with = "json::int")]
    pub x0: Int,
    #[serde(with = "json::int")]
    pub t: Int,
    #[serde(with = "json::int")]
    pub d: Int,
    pub thue_method: Method,
    pub thue_certified: bool,
    #[serde(with = "json::int::pairs")]
    pub thue_solutions: Vec<(Int, Int)>,
    pub witnesses: Vec<ReductionWitness>,
    /// Distinct `y = a² + b² > 0` over all Thue solutions.
    #[serde(with = "json::int::vec")]
    pub y_values: Vec<Int>,
    /// Thue solutions that match no Lucas index. Empty when the reduction is consistent.
    #[serde(with = "json::int::pairs")]
    pub unmatched: Vec<(Int, Int)>,
}

impl ThueReduction {
    pub fn consistent(&self) -> bool {
        self.unmatched.is_empty()
    }
}

fn params(x0: &Int) -> LucasParams {
    LucasParams::new(Int::from(2) * x0, 1)
}

/// `V_0..=V_n` until `V_n` passes `limit` (at least `min_len` terms).
fn v_until(x0: &Int, limit: &Int, min_len: usize) -> (Vec<Int>, Vec<Int>) {
    let p = params(x0);
    let mut n = min_len.max(4);
    loop {
        let (u, v) = lucas_table(&p, n);
        if v.last().expect("n ≥ 1") > limit {
            return (u, v);
        }
        n *= 2;
    }
}

fn witness_for(x0: &Int, t: &Int, pt: &(Int, Int), v: &[Int], u: &[Int]) -> Option<ReductionWitness> {
    let (px, py) = pt;
    let y = px * px + py * py;
    let y2 = &y * &y;
    let m = (0..v.len().saturating_sub(1) / 2).find(|&m| v[2 * m + 1] == y2)?;
    let (vm, vm1) = (&v[m], &v[m + 1]);
    // The form is invariant under (a, b) → (−b, a), so some rotation fits the sign pattern.
    let rots = [(px.clone(), py.clone()), (-py.clone(), px.clone()), (-px.clone(), -py.clone()), (py.clone(), -px.clone())];
    for (rx, ry) in rots {
        let two = Int::from(2);
        if *vm == &two * &rx * &ry && *vm1 == &rx * &rx - &ry * &ry {
            return Some(mk(x0, t, rx, ry, ParityBranch::VmEven, m, y, u));
        }
        let (a, b) = (-rx, ry);
        if *vm == &a * &a - &b * &b && *vm1 == &two * &a * &b {
            return Some(mk(x0, t, a, b, ParityBranch::VmNextEven, m, y, u));
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn mk(x0: &Int, t: &Int, a: Int, b: Int, branch: ParityBranch, m: usize, y: Int, u: &[Int]) -> ReductionWitness {
    // ε^{2m+1} = U + V√(1+x₀²) with U = (Lucas U)/2.
    let x = &u[2 * m + 1] / Int::from(2);
    ReductionWitness { x0: x0.clone(), t: t.clone(), a, b, branch, m, y, x }
}

/// Solves `P_{4x₀}(a, b) = ±1` and maps each solution to a Lucas index `m`
/// with `(a² + b²)² = V_{2m+1}`.
pub fn reduce_to_thue(x0: &Int, bound: u64, precision: Precision) -> Result<ThueReduction> {
    if *x0 < Int::one() {
        return Err(domain(format!("x0 must be ≥ 1, got {x0}")));
    }
    let t = Int::from(4) * x0;
    let set = thue::solve(&t, bound, precision)?;
    let ymax = set.solutions.iter().map(|(a, b)| a * a + b * b).max().unwrap_or_else(Int::one);
    let (u, v) = v_until(x0, &(&ymax * &ymax), 8);
    let mut witnesses = Vec::new();
    let mut unmatched = Vec::new();
    for pt in &set.solutions {
        match witness_for(x0, &t, pt, &v, &u) {
            Some(w) => {
                let a = if w.branch == ParityBranch::VmEven { w.a.clone() } else { -w.a.clone() };
                debug_assert!(p_t(&t, &a, &w.b).abs().is_one());
                witnesses.push(w)
            }
            None => unmatched.push(pt.clone()),
        }
    }
    let mut y_values: Vec<Int> = set.solutions.iter().map(|(a, b)| a * a + b * b).collect();
    y_values.sort();
    y_values.dedup();
    Ok(ThueReduction {
        x0: x0.clone(),
        d: x0 * x0 + Int::one(),
        t,
        thue_method: set.method,
        thue_certified: set.certified,
        thue_solutions: set.solutions,
        witnesses,
        y_values,
        unmatched,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    #[serde(with = "json::int")]
    pub x0: Int,
    pub t_idx: usize,
    /// Indices `m` where `V_{m+1} = x₀V_m + U_m` failed.
    pub eq44_failures: Vec<usize>,
    /// Indices `m` where `V_{2m+1} = V_m² + V_{m+1}²` failed.
    pub eq45_failures: Vec<usize>,
    /// `(2k+1, s)` with `V_{2k+1} = s²`.
    pub square_hits: Vec<(usize, u64)>,
    #[serde(with = "json::int::vec")]
    pub v: Vec<Int>,
}

impl ChainReport {
    pub fn identities_hold(&self) -> bool {
        self.eq44_failures.is_empty() && self.eq45_failures.is_empty()
    }

    pub fn hit_indices(&self) -> Vec<usize> {
        self.square_hits.iter().map(|h| h.0).collect()
    }
}

/// Checks both identities for `m ≤ t_idx` and lists the odd indices `≤ 2·t_idx + 1`
/// where `V` is a perfect square.
pub fn identity_chain_check(x0: &Int, t_idx: usize) -> Result<ChainReport> {
    if *x0 < Int::one() || t_idx < 1 {
        return Err(domain(format!("need x0 ≥ 1 and t_idx ≥ 1, got {x0}, {t_idx}")));
    }
    let n = 2 * t_idx + 1;
    let (lu, v) = lucas_table(&params(x0), n);
    let two = Int::from(2);
    let u: Vec<Int> = lu.iter().map(|a| a / &two).collect();
    let eq44_failures = (1..=t_idx).filter(|&m| v[m + 1] != x0 * &v[m] + &u[m]).collect();
    let eq45_failures = (0..=t_idx).filter(|&m| v[2 * m + 1] != &v[m] * &v[m] + &v[m + 1] * &v[m + 1]).collect();
    let square_hits = (0..=t_idx)
        .filter_map(|k| {
            let i = 2 * k + 1;
            let s = is_perfect_square(&v[i])?;
            Some((i, u64::try_from(&s).unwrap_or(u64::MAX)))
        })
        .collect();
    Ok(ChainReport { x0: x0.clone(), t_idx, eq44_failures, eq45_failures, square_hits, v })
}

/// Positive solutions with `y ≤ y_max`, by testing `d y⁴ − 1` for squares.
pub fn brute_force(d: u64, y_max: u64) -> Vec<(Int, Int)> {
    let d = Int::from(d);
    (1..=y_max)
        .filter_map(|y| {
            let y = Int::from(y);
            let n = &d * &y * &y * &y * &y - Int::one();
            if n.is_zero() {
                return Some((n, y));
            }
            is_perfect_square(&n).map(|x| (x, y))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn it(n: i64) -> Int {
        Int::from(n)
    }

    fn sols(d: i64) -> (QuarticStatus, Vec<(i64, i64)>) {
        let r = solve_quartic(&it(d)).unwrap();
        let s = r.solutions.iter().map(|(x, y)| (i64::try_from(x).unwrap(), i64::try_from(y).unwrap())).collect();
        (r.status, s)
    }

    #[test]
    fn examples() {
        assert_eq!(sols(1), (QuarticStatus::SpecialD1, vec![(0, 1)]));
        assert_eq!(sols(2), (QuarticStatus::SpecialD2, vec![(1, 1), (239, 13)]));
        assert_eq!(sols(5), (QuarticStatus::Unique, vec![(2, 1)]));
        assert_eq!(sols(13), (QuarticStatus::NoSolution, vec![]));
        assert_eq!(sols(17), (QuarticStatus::Unique, vec![(4, 1)]));
        assert_eq!(sols(3), (QuarticStatus::NoPell, vec![]));
        assert_eq!(sols(4), (QuarticStatus::NoPell, vec![]));
        assert_eq!(sols(49), (QuarticStatus::NoPell, vec![]));
        assert!(solve_quartic(&it(0)).is_err());
    }

    #[test]
    fn d13_evidence() {
        let r = solve_quartic(&it(13)).unwrap();
        let f = r.evidence.pell.unwrap();
        assert_eq!((f.u, f.v), (it(18), it(5)));
        assert_eq!(r.evidence.v_is_square, Some(false));
        assert!(brute_force(13, 100).is_empty());
    }

    #[test]
    fn oracle_sweep() {
        let bad: Vec<u64> = (1..=5000u64)
            .into_par_iter()
            .filter(|&d| {
                let r = solve_quartic(&Int::from(d)).unwrap();
                let mine: Vec<_> = r.solutions.iter().filter(|(_, y)| *y <= it(200)).cloned().collect();
                let ok = mine == brute_force(d, 200)
                    && (d < 3 || r.solutions.len() <= 1)
                    && r.solutions.iter().all(|(x, y)| satisfies(&Int::from(d), x, y));
                !ok
            })
            .collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn fundamental_form() {
        for d in 3..=2000i64 {
            let r = solve_quartic(&it(d)).unwrap();
            if let Some((x, y)) = r.solutions.first() {
                let f = r.evidence.pell.as_ref().unwrap();
                assert_eq!((&f.u, &f.v), (x, &(y * y)));
            }
        }
    }

    #[test]
    fn chain_x0_1() {
        let r = identity_chain_check(&it(1), 3).unwrap();
        assert!(r.identities_hold());
        assert_eq!(&r.v[..8], &[0, 1, 2, 5, 12, 29, 70, 169].map(it));
        assert_eq!(r.square_hits, vec![(1, 1), (7, 13)]);
    }

    #[test]
    fn chain_x0_2() {
        let r = identity_chain_check(&it(2), 7).unwrap();
        assert!(r.identities_hold());
        assert_eq!(r.hit_indices(), vec![1]);
    }

    #[test]
    fn reduction_consistency() {
        for x0 in 1..=50i64 {
            let r = identity_chain_check(&it(x0), 20).unwrap();
            assert!(r.identities_hold(), "x0 = {x0}");
            let want = if x0 == 1 { vec![1, 7] } else { vec![1] };
            assert_eq!(r.hit_indices(), want, "x0 = {x0}");
        }
    }

    #[test]
    fn reduce_x0_1_recovers_239_13() {
        let r = reduce_to_thue(&it(1), 200, Precision::default()).unwrap();
        assert_eq!(r.t, it(4));
        assert!(r.consistent(), "{r:?}");
        assert_eq!(r.y_values, vec![it(1), it(13)]);
        let w = r.witnesses.iter().find(|w| w.y == it(13)).unwrap();
        assert_eq!((w.m, &w.x), (3, &it(239)));
        assert!(satisfies(&it(2), &w.x, &w.y));
        assert_eq!(w.a.abs() + w.b.abs(), it(5));
    }

    #[test]
    fn reduce_larger_x0_only_trivial() {
        for x0 in [2i64, 3, 10, 32] {
            let r = reduce_to_thue(&it(x0), 300, Precision::default()).unwrap();
            assert!(r.consistent());
            assert_eq!(r.y_values, vec![it(1)], "x0 = {x0}");
            assert!(r.witnesses.iter().all(|w| w.m == 0 && w.x == it(x0)));
        }
    }

    #[test]
    fn json_round_trip() {
        for d in [1i64, 2, 5, 13, 49, 1_000_001] {
            let r = solve_quartic(&it(d)).unwrap();
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<QuarticResult>(&s).unwrap(), r);
        }
        let s = serde_json::to_string(&solve_quartic(&it(2)).unwrap()).unwrap();
        assert!(s.starts_with(r#"{"d":2,"status":"special-d2","solutions":[[1,1],[239,13]]"#), "{s}");
    }

    proptest! {
        #[test]
        fn planted_solutions_are_found(x0 in 1u64..100_000) {
            // d = x₀² + 1 always has (x₀, 1).
            let d = Int::from(x0) * Int::from(x0) + 1;
            let r = solve_quartic(&d).unwrap();
            prop_assert!(r.solutions.contains(&(Int::from(x0), Int::one())));
        }

        #[test]
        fn listed_solutions_satisfy(d in 1u64..1_000_000) {
            let r = solve_quartic(&Int::from(d)).unwrap();
            for (x, y) in &r.solutions {
                prop_assert!(satisfies(&r.d, x, y));
            }
            if d >= 3 {
                prop_assert!(r.solutions.len() <= 1);
            }
        }
    }
}
