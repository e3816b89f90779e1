#![no_main]

use libfuzzer_sys::fuzz_target;
use seifert_core::{involution_class, parse_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_matrix(text) {
        Ok(m) => {
            let _ = m.inverse();
            let _ = involution_class(&m);
        }
        Err(e) => assert!(e.position <= text.len()),
    }
});
