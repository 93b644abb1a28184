use std::process::Command;

use proptest::prelude::*;
use qthue::{run_with_env, ApproxOutput, Outcome, PellOutput, VerifyOutput, EXIT_INVALID, EXIT_OK, EXIT_UNCERTIFIED};
use quartic_thue::measure::MeasureReportSummary;
use quartic_thue::quartic::QuarticResult;
use quartic_thue::thue::ThueSolutionSet;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Outcome {
    run_with_env(std::iter::once("qthue").chain(args.iter().copied()), None)
}

fn json(args: &[&str]) -> String {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    assert!(o.code == EXIT_OK || o.code == EXIT_UNCERTIFIED, "{args:?}: {o:?}");
    o.stdout
}

/// Decodes, re-encodes and decodes again; both decodings and both encodings must agree.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(text: &str) -> T {
    let v: T = serde_json::from_str(text).expect("decodes");
    let again = serde_json::to_string(&v).unwrap();
    assert_eq!(again, text.trim_end());
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), v);
    v
}

#[test]
fn documented_outputs() {
    let q = json(&["quartic", "2"]);
    assert!(q.starts_with(r#"{"d":2,"status":"special-d2","solutions":[[1,1],[239,13]]"#), "{q}");

    let t: ThueSolutionSet = round_trip(&json(&["thue", "128"]));
    assert!(t.certified);
    assert_eq!(t.pairs_i64(), vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
    assert!(json(&["thue", "128"]).contains(r#""solutions":[[-1,0],[0,-1],[0,1],[1,0]]"#));

    let a: ApproxOutput = round_trip(&json(&["approx", "128", "1", "--j", "0"]));
    assert_eq!((a.p.to_string(), a.q.to_string()), ("-2".into(), "256".into()));
    assert!(a.bound_holds && a.defect[1] < a.bound[0]);
}

#[test]
fn every_result_type_round_trips() {
    let p: PellOutput = round_trip(&json(&["pell", "13"]));
    let f = p.fundamental.unwrap();
    assert_eq!((f.u.to_string(), f.v.to_string()), ("18".into(), "5".into()));
    let p: PellOutput = round_trip(&json(&["pell", "12"]));
    assert!(p.fundamental.is_none());

    round_trip::<QuarticResult>(&json(&["quartic", "5"]));
    round_trip::<QuarticResult>(&json(&["quartic", "13"]));
    let rs: Vec<QuarticResult> = round_trip(&json(&["quartic", "--range", "1..300"]));
    assert_eq!(rs.len(), 300);

    round_trip::<ThueSolutionSet>(&json(&["thue", "1"]));
    round_trip::<ThueSolutionSet>(&json(&["thue", "3"]));
    round_trip::<ThueSolutionSet>(&json(&["thue", "100000"]));

    let m: Vec<MeasureReportSummary> = round_trip(&json(&["measure", "128"]));
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|c| c.checks.iter().all(|k| k.holds)));
    assert!(m[0].stated.kappa[1] < 3.0);

    let v: VerifyOutput = round_trip(&json(&["verify", "lucas-identities"]));
    assert!(v.passed);
}

#[test]
fn big_values_are_strings() {
    // The t = 10²⁰ scan works with integers above 2⁵³.
    let s = json(&["thue", "100000000000000000000"]);
    assert!(s.contains(r#""t":"100000000000000000000""#), "{s}");
    round_trip::<ThueSolutionSet>(&s);
}

#[test]
fn deterministic_output() {
    for args in [
        &["quartic", "--range", "1..2000", "--json"][..],
        &["thue", "57", "--json"],
        &["thue", "1000", "--json"],
        &["measure", "200"],
        &["verify", "measure-scan", "--q-max", "300", "--json"],
    ] {
        let first = run(args);
        for _ in 0..3 {
            assert_eq!(run(args), first, "{args:?}");
        }
    }
}

#[test]
fn text_mode() {
    let o = run(&["thue", "4"]);
    assert_eq!(o.code, EXIT_UNCERTIFIED);
    assert!(o.stdout.contains("(-3, 2), (-2, -3)"), "{}", o.stdout);
    let o = run(&["quartic", "17"]);
    assert_eq!(o.stdout, "d = 17: unique {(4, 1)}\n");
}

#[test]
fn out_file_gets_json() {
    let dir = std::env::temp_dir().join(format!("qthue-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = run(&["quartic", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    let written = std::fs::read_to_string(&path).unwrap();
    let r: QuarticResult = round_trip(&written);
    assert_eq!(r.solutions.len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qthue");
    let code = |args: &[&str], cap: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args).env_remove("QT_PRECISION_CAP");
        if let Some(v) = cap {
            c.env("QT_PRECISION_CAP", v);
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(code(&["quartic", "2"], None), 0);
    assert_eq!(code(&["thue", "10"], None), 2);
    assert_eq!(code(&["thue", "-1"], None), 3);
    assert_eq!(code(&["bogus"], None), 3);
    assert_eq!(code(&["quartic", "--range", "9..1"], None), 3);
    assert_eq!(code(&["verify", "pade-bounds", "--r-max", "30", "--precision-start", "64"], Some("64")), 4);
    assert_eq!(code(&["approx", "128", "2"], Some("256")), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quartic_json_round_trips(d in 1u64..1_000_000_000) {
        let o = run(&["quartic", &d.to_string(), "--json"]);
        prop_assert_eq!(o.code, EXIT_OK);
        round_trip::<QuarticResult>(&o.stdout);
    }

    #[test]
    fn garbage_is_rejected_cleanly(args in proptest::collection::vec("[a-z0-9.=-]{0,8}", 0..4)) {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&refs);
        prop_assert!([0, 2, 3, 4].contains(&o.code), "{:?}", o);
        if o.code == EXIT_INVALID {
            prop_assert!(o.stdout.is_empty() && !o.stderr.is_empty());
        }
    }
}
