#![no_main]

use cfk_core::complex::FilteredComplex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = FilteredComplex::from_json(s) {
        // whatever parses must survive a round trip
        let back = FilteredComplex::from_json(&c.to_json()).expect("re-parse");
        assert_eq!(back, c);
        let _ = c.validate();
    }
});
