#![no_main]

use libfuzzer_sys::fuzz_target;
use quartic_thue::json::parse_int;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(n) = parse_int(s) {
        // Accepted input must print back to an equivalent decimal.
        assert_eq!(parse_int(&n.to_string()), Ok(n));
    }
});
