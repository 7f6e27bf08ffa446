#![no_main]

use cfk_core::complex::{lspace_staircase, parse_w_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ws) = parse_w_list(s) {
        assert!(ws[0] > 0 && ws.windows(2).all(|w| w[0] < w[1]));
        if ws.len() <= 8 && ws[ws.len() - 1] <= 64 {
            let (c, _) = lspace_staircase(&ws).expect("valid exponents build");
            assert!(c.validate().is_empty());
        }
    }
});
