#![no_main]

use cfk_core::pretzel::InvariantReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = InvariantReport::from_json(s) {
        assert_eq!(InvariantReport::from_json(&r.to_json()).expect("re-parse"), r);
    }
});
