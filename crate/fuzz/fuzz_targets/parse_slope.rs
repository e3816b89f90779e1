#![no_main]

use libfuzzer_sys::fuzz_target;
use seifert_core::{extension_condition, parse_slope};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_slope(text) {
        Ok(slope) => {
            if let Ok(condition) = extension_condition(&slope) {
                assert!(condition.iter().all(|a| a.is_involution()));
            }
        }
        Err(e) => assert!(e.position <= text.len()),
    }
});
