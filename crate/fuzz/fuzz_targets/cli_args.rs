#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated. Only cheap subcommands are let through so each run stays short.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = s.split('\0').collect();
    if args.len() > 6 || args.iter().any(|a| a.len() > 24) {
        return;
    }
    if matches!(args.first(), Some(&"verify") | Some(&"thue")) {
        return;
    }
    let out = qthue::run_with_env(std::iter::once("qthue").chain(args.iter().copied()), None);
    assert!([0, 2, 3, 4].contains(&out.code), "{out:?}");
});
