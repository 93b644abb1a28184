//! Replays the checked-in fuzz seeds through the same entry points the fuzz targets use.

use std::path::PathBuf;

use quartic_thue::json::parse_int;
use quartic_thue::quartic::QuarticResult;
use quartic_thue::thue::ThueSolutionSet;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_int_seeds() {
    let ok: Vec<String> = seeds("parse_int")
        .into_iter()
        .filter(|(_, b)| parse_int(std::str::from_utf8(b).unwrap()).is_ok())
        .map(|(n, _)| n)
        .collect();
    assert_eq!(ok, ["big", "negative", "zero"]);
}

#[test]
fn parse_range_seeds() {
    let ok: Vec<String> = seeds("parse_range")
        .into_iter()
        .filter(|(_, b)| qthue::parse_range(std::str::from_utf8(b).unwrap()).is_ok())
        .map(|(n, _)| n)
        .collect();
    assert_eq!(ok, ["basic", "inclusive"]);
}

#[test]
fn cli_arg_seeds() {
    for (name, bytes) in seeds("cli_args") {
        let s = String::from_utf8(bytes).unwrap();
        let out = qthue::run_with_env(std::iter::once("qthue").chain(s.split('\0')), None);
        let want = if name == "unknown" { 3 } else { 0 };
        assert_eq!(out.code, want, "{name}: {out:?}");
    }
}

#[test]
fn json_seeds() {
    for (name, bytes) in seeds("json_result") {
        let q = serde_json::from_slice::<QuarticResult>(&bytes).is_ok();
        let t = serde_json::from_slice::<ThueSolutionSet>(&bytes).is_ok();
        let want = (name.starts_with("quartic"), name.starts_with("thue"));
        assert_eq!((q, t), want, "{name}");
    }
}
