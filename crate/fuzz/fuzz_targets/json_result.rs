#![no_main]

use libfuzzer_sys::fuzz_target;
use quartic_thue::quartic::QuarticResult;
use quartic_thue::thue::ThueSolutionSet;

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<QuarticResult>(data) {
        let again = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<QuarticResult>(&again).unwrap(), r);
    }
    if let Ok(r) = serde_json::from_slice::<ThueSolutionSet>(data) {
        let again = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ThueSolutionSet>(&again).unwrap(), r);
    }
});
