//! Command-line front end for the quartic Thue solver.
//!
//! [`run`] is the whole program minus process exit, so tests drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use quartic_thue::exact::{Certified, Int, Precision};
use quartic_thue::json::{self, parse_int};
use quartic_thue::lucas::{identity_suite, jacobi_vv, LucasParams};
use quartic_thue::measure::{stated_q_min, scan_small_q, measure_certificate, MeasureReportSummary};
use quartic_thue::pade::{approximants, defect_and_bound};
use quartic_thue::pell::{neg_pell_fundamental, sqrt_cf, CFExpansion, PellFundamental};
use quartic_thue::quartic::{brute_force, identity_chain_check, solve_quartic, solve_range, QuarticResult};
use quartic_thue::thue::{self, p_t, ThueSolutionSet, DEFAULT_BOUND};
use quartic_thue::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

/// Environment variable overriding the precision cap.
pub const CAP_ENV: &str = "QT_PRECISION_CAP";

#[derive(Debug, Parser)]
#[command(name = "qthue", version, about = "Solver and checks for X⁴ − tX³Y − 6X²Y² + tXY³ + Y⁴ = ±1 and X² + 1 = dY⁴")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON result to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    /// First working precision in bits.
    #[arg(long, global = true, value_name = "BITS")]
    pub precision_start: Option<u32>,
    /// Largest working precision in bits (overrides QT_PRECISION_CAP).
    #[arg(long, global = true, value_name = "BITS")]
    pub precision_cap: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fundamental solution of X² + 1 = dY².
    Pell { d: String },
    /// All solutions of P_t(x, y) = ±1.
    Thue {
        t: String,
        /// |y| bound for the bounded search (t < 128).
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Positive solutions of X² + 1 = dY⁴.
    Quartic {
        #[arg(required_unless_present = "range", conflicts_with = "range")]
        d: Option<String>,
        /// Inclusive range `a..b` of d values.
        #[arg(long, value_name = "A..B")]
        range: Option<String>,
    },
    /// Approximants P_r, Q_r and the certified defect bound.
    Approx {
        t: String,
        r: usize,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        j: u8,
    },
    /// Irrationality measure constants κ, c_j, q_min.
    Measure {
        t: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
        j: Option<u8>,
    },
    /// Run one of the invariant suites.
    Verify {
        suite: Suite,
        /// Thue parameter for pade-bounds and measure-scan.
        #[arg(long, default_value_t = 128)]
        t: u64,
        #[arg(long, default_value_t = 20)]
        r_max: usize,
        #[arg(long, default_value_t = 10_000)]
        q_max: u64,
        #[arg(long, default_value_t = 5000)]
        d_max: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PadeBounds,
    LucasIdentities,
    MeasureScan,
    OracleAgreement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub precision_start: u32,
    pub precision_cap: u32,
    pub search_bound: u64,
    pub output: OutputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { precision_start: 128, precision_cap: 16384, search_bound: DEFAULT_BOUND, output: OutputMode::Text }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision_start < 64 || self.precision_start > self.precision_cap {
            return Err(format!(
                "need 64 ≤ precision start ≤ cap, got start {} and cap {}",
                self.precision_start, self.precision_cap
            ));
        }
        if self.search_bound < 1 {
            return Err("search bound must be at least 1".into());
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.precision_start, self.precision_cap)
    }
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PellOutput {
    #[serde(with = "json::int")]
    pub d: Int,
    pub cf: CFExpansion,
    pub period_length: usize,
    pub fundamental: Option<PellFundamental>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxOutput {
    #[serde(with = "json::int")]
    pub t: Int,
    pub r: usize,
    pub j: u8,
    #[serde(with = "json::int")]
    pub p: Int,
    #[serde(with = "json::int")]
    pub q: Int,
    /// Enclosure of `|Q_r β − P_r|`.
    pub defect: [f64; 2],
    /// Enclosure of `πt/(16+t²)·(8/ε)^r`.
    pub bound: [f64; 2],
    pub bound_holds: bool,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub suite: Suite,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

/// Parses `a..b` or `a..=b`, both ends inclusive.
pub fn parse_range(s: &str) -> Result<(Int, Int), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (parse_int(a.trim())?, parse_int(b.trim())?);
    if a < Int::from(1) {
        return Err(format!("range must start at 1 or above, got {a}"));
    }
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::OutOfMethodRange(_) => EXIT_INVALID,
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        Error::Uncertified(_) => EXIT_UNCERTIFIED,
        Error::InternalConsistency(_) => EXIT_INTERNAL,
    }
}

/// Runs the program with the cap override read from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(CAP_ENV).ok().as_deref())
}

pub fn run_with_env<I, T>(args: I, cap_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    let mut cfg = RunConfig::default();
    if let Some(v) = cap_env {
        match v.trim().parse::<u32>() {
            Ok(c) => cfg.precision_cap = c,
            Err(_) => return Outcome::fail(EXIT_INVALID, format!("{CAP_ENV} must be a bit count, got {v:?}\n")),
        }
    }
    if let Some(c) = cli.global.precision_cap {
        cfg.precision_cap = c;
    }
    match cli.global.precision_start {
        Some(s) => cfg.precision_start = s,
        // A low cap alone pulls the default start down with it.
        None => cfg.precision_start = cfg.precision_start.min(cfg.precision_cap),
    }
    if let Command::Thue { bound, .. } = &cli.command {
        cfg.search_bound = *bound;
    }
    if cli.global.json {
        cfg.output = OutputMode::Json;
    }
    if let Err(e) = cfg.validate() {
        return Outcome::fail(EXIT_INVALID, e + "\n");
    }
    let (code, value, text) = match dispatch(&cli.command, &cfg) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let json_text = value;
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
            return Outcome::fail(EXIT_INVALID, format!("cannot write {}: {e}\n", path.display()));
        }
    }
    let stdout = match cfg.output {
        OutputMode::Json => json_text + "\n",
        OutputMode::Text => text,
    };
    Outcome { code, stdout, stderr: String::new() }
}

type Dispatched = Result<(i32, String, String), Outcome>;

fn arg_int(name: &str, s: &str) -> Result<Int, Outcome> {
    parse_int(s).map_err(|e| Outcome::fail(EXIT_INVALID, format!("invalid {name}: {e}\n")))
}

fn lib<T>(r: quartic_thue::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::fail(error_code(&e), format!("error: {e}\n")))
}

/// Serialized directly, so keys keep struct field order.
fn value<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("results serialize")
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Dispatched {
    let prec = cfg.precision();
    match cmd {
        Command::Pell { d } => {
            let d = arg_int("d", d)?;
            let cf = lib(sqrt_cf(&d))?;
            let fundamental = lib(neg_pell_fundamental(&d))?;
            let out = PellOutput { d, period_length: cf.period.len(), cf, fundamental };
            Ok((EXIT_OK, value(&out), pell_text(&out)))
        }
        Command::Thue { t, bound } => {
            let t = arg_int("t", t)?;
            let set = lib(thue::solve(&t, *bound, prec))?;
            let code = if set.certified { EXIT_OK } else { EXIT_UNCERTIFIED };
            Ok((code, value(&set), thue_text(&set)))
        }
        Command::Quartic { d: Some(d), .. } => {
            let d = arg_int("d", d)?;
            let r = lib(solve_quartic(&d))?;
            Ok((EXIT_OK, value(&r), quartic_text(std::slice::from_ref(&r))))
        }
        Command::Quartic { range: Some(s), .. } => {
            let (a, b) = parse_range(s).map_err(|e| Outcome::fail(EXIT_INVALID, format!("invalid range: {e}\n")))?;
            let rs = lib(solve_range(&a, &b))?;
            Ok((EXIT_OK, value(&rs), quartic_text(&rs)))
        }
        Command::Quartic { .. } => Err(Outcome::fail(EXIT_INVALID, "quartic needs <d> or --range\n")),
        Command::Approx { t, r, j } => {
            let t = arg_int("t", t)?;
            let out = lib(approx(&t, *r, *j, prec))?;
            let code = if out.bound_holds { EXIT_OK } else { EXIT_UNCERTIFIED };
            Ok((code, value(&out), approx_text(&out)))
        }
        Command::Measure { t, j } => {
            let t = arg_int("t", t)?;
            let js: Vec<u8> = j.map_or((0..4).collect(), |j| vec![j]);
            let mut certs = Vec::new();
            let mut ok = true;
            for j in js {
                let c = lib(measure_certificate(&t, j, prec))?;
                ok &= c.all_pass();
                certs.push(c.summary());
            }
            let code = if ok { EXIT_OK } else { EXIT_UNCERTIFIED };
            Ok((code, value(&certs), measure_text(&certs)))
        }
        Command::Verify { suite, t, r_max, q_max, d_max } => {
            let out = lib(verify(*suite, &Int::from(*t), *r_max, *q_max, *d_max, prec))?;
            let code = if out.passed { EXIT_OK } else { EXIT_UNCERTIFIED };
            Ok((code, value(&out), verify_text(&out)))
        }
    }
}

fn approx(t: &Int, r: usize, j: u8, prec: Precision) -> quartic_thue::Result<ApproxOutput> {
    let a = approximants(t, r, j)?;
    prec.escalate("certifying the defect bound", |p| {
        let (s, b) = defect_and_bound(t, r, j, p)?;
        let holds = match s.less_eq(&b) {
            Certified::Undecided => return Ok(None),
            c => c.is_true(),
        };
        let (slo, shi) = s.to_f64_bounds();
        let (blo, bhi) = b.to_f64_bounds();
        Ok(Some(ApproxOutput {
            t: t.clone(),
            r,
            j,
            p: a.p.clone(),
            q: a.q.clone(),
            defect: [slo, shi],
            bound: [blo, bhi],
            bound_holds: holds,
            precision: p,
        }))
    })
}

fn verify(suite: Suite, t: &Int, r_max: usize, q_max: u64, d_max: u64, prec: Precision) -> quartic_thue::Result<VerifyOutput> {
    let mut checks = 0u64;
    let mut failures = Vec::new();
    match suite {
        Suite::PadeBounds => {
            let rep = quartic_thue::pade::bound_suite(t, r_max, prec)?;
            checks = rep.checks.len() as u64;
            failures = rep.failures().map(|c| format!("{} (j = {:?}, r = {:?})", c.name, c.j, c.r)).collect();
        }
        Suite::LucasIdentities => {
            for a in (2..=40i64).step_by(2) {
                let p = LucasParams::new(a, 1);
                for m in 0..=20u64 {
                    for n in 0..=20u64 {
                        for k in 1..=2u64 {
                            checks += 1;
                            if !identity_suite(&p, m, n, k).all_pass() {
                                failures.push(format!("identities a = {a}, m = {m}, n = {n}, k = {k}"));
                            }
                        }
                    }
                }
                for m in (1..=39u64).step_by(2) {
                    for n in (1..=39u64).step_by(2) {
                        if num_integer::gcd(m, n) == 1 {
                            checks += 1;
                            if jacobi_vv(&p, m, n)? != 1 {
                                failures.push(format!("jacobi a = {a}, m = {m}, n = {n}"));
                            }
                        }
                    }
                }
            }
            for x0 in 1..=50i64 {
                checks += 1;
                let rep = identity_chain_check(&Int::from(x0), 20)?;
                let want: &[usize] = if x0 == 1 { &[1, 7] } else { &[1] };
                if !rep.identities_hold() || rep.hit_indices() != want {
                    failures.push(format!("chain x0 = {x0}"));
                }
            }
        }
        Suite::MeasureScan => {
            let q_lo = u64::try_from(&stated_q_min(t)).map_err(|_| Error::Domain("t too large for a scan".into()))?;
            for j in 0..4u8 {
                let rep = scan_small_q(t, j, q_lo, q_max.max(q_lo), prec)?;
                checks += rep.checked;
                failures.extend(rep.failures.iter().map(|(p, q)| format!("j = {j}: p = {p}, q = {q}")));
                if rep.min_margin <= 1.0 {
                    failures.push(format!("j = {j}: margin {}", rep.min_margin));
                }
            }
        }
        Suite::OracleAgreement => {
            for d in 1..=d_max {
                checks += 1;
                let r = solve_quartic(&Int::from(d))?;
                let y_cap = Int::from(200);
                let mine: Vec<_> = r.solutions.iter().filter(|(_, y)| *y <= y_cap).cloned().collect();
                if mine != brute_force(d, 200) || (d >= 3 && r.solutions.len() > 1) {
                    failures.push(format!("quartic d = {d}"));
                }
            }
            for t in 1..=40i64 {
                checks += 1;
                let ti = Int::from(t);
                let set = thue::solve(&ti, 200, prec)?;
                let mut naive = Vec::new();
                for x in -50i64..=50 {
                    for y in -50i64..=50 {
                        let v = p_t(&ti, &Int::from(x), &Int::from(y));
                        if v == Int::from(1) || v == Int::from(-1) {
                            naive.push((x, y));
                        }
                    }
                }
                if set.pairs_i64() != naive {
                    failures.push(format!("thue t = {t}"));
                }
            }
        }
    }
    Ok(VerifyOutput { suite, passed: failures.is_empty(), checks, failures })
}

fn pairs_text(v: &[(Int, Int)]) -> String {
    let items: Vec<String> = v.iter().map(|(x, y)| format!("({x}, {y})")).collect();
    format!("{{{}}}", items.join(", "))
}

fn pell_text(o: &PellOutput) -> String {
    let period: Vec<String> = o.cf.period.iter().map(|a| a.to_string()).collect();
    let mut s = format!("d = {}\nsqrt(d) = [{}; {}], period {}\n", o.d, o.cf.a0, period.join(", "), o.period_length);
    match &o.fundamental {
        Some(f) => writeln!(s, "X^2 + 1 = dY^2: (X, Y) = ({}, {})", f.u, f.v).unwrap(),
        None => writeln!(s, "X^2 + 1 = dY^2: no solution (even period)").unwrap(),
    }
    s
}

fn thue_text(set: &ThueSolutionSet) -> String {
    let method = serde_json::to_value(set.method).expect("enum");
    let mut s = format!("t = {}\nsolutions {}\n", set.t, pairs_text(&set.solutions));
    writeln!(s, "method {}, certified {}", method.as_str().unwrap_or("?"), set.certified).unwrap();
    for n in &set.evidence.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn quartic_text(rs: &[QuarticResult]) -> String {
    let mut s = String::new();
    for r in rs {
        let status = serde_json::to_value(r.status).expect("enum");
        writeln!(s, "d = {}: {} {}", r.d, status.as_str().unwrap_or("?"), pairs_text(&r.solutions)).unwrap();
    }
    s
}

fn approx_text(o: &ApproxOutput) -> String {
    format!(
        "t = {}, r = {}, j = {}\nP = {}\nQ = {}\n|S_r| in [{:e}, {:e}]\nbound {:e}, holds {}\n",
        o.t, o.r, o.j, o.p, o.q, o.defect[0], o.defect[1], o.bound[1], o.bound_holds
    )
}

fn measure_text(cs: &[MeasureReportSummary]) -> String {
    let mut s = String::new();
    for c in cs {
        writeln!(
            s,
            "t = {}, j = {}: kappa = {:.10}, c = {:.6}, q_min = {}",
            c.t, c.j, c.stated.kappa[1], c.stated.c[1], c.stated.q_min
        )
        .unwrap();
        for k in &c.checks {
            writeln!(s, "  {} {}", if k.holds { "ok  " } else { "FAIL" }, k.name).unwrap();
        }
    }
    s
}

fn verify_text(o: &VerifyOutput) -> String {
    let suite = serde_json::to_value(o.suite).expect("enum");
    let mut s = format!("{}: {} ({} checks)\n", suite.as_str().unwrap_or("?"), if o.passed { "pass" } else { "FAIL" }, o.checks);
    for f in &o.failures {
        writeln!(s, "  {f}").unwrap();
    }
    s
}
