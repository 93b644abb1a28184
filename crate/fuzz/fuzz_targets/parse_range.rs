#![no_main]

use libfuzzer_sys::fuzz_target;
use qthue::parse_range;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((a, b)) = parse_range(s) {
        assert!(a >= 1.into() && a <= b);
    }
});
