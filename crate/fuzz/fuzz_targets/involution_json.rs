#![no_main]

use cfk_core::involution::{validate_involution, Involution};
use cfk_core::pretzel::c1_model;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let model = c1_model(2).expect("model builds");
    if let Ok(i) = Involution::from_json(&model.complex, s) {
        let back = Involution::from_json(&model.complex, &i.to_json(&model.complex)).expect("re-parse");
        assert_eq!(back.matrix, i.matrix);
        let _ = validate_involution(&model.complex, &i, false);
    }
});
